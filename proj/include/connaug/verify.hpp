#pragma once

#include <optional>

#include "connaug/flow.hpp"

namespace connaug {

inline int local_conn(const GraphView& g, int u, int v, long long limit = -1) {
    return local_conn_view(g, u, v, limit);
}

struct Witness {
    int u = -1, v = -1;
    int deficiency = 0;
};

// Menger check toward a root: every terminal v needs q internally-disjoint
// v->s paths (and s->v when bothDirections).  Returns the lexicographically
// first failing terminal with its deficiency.
inline std::optional<Witness> check_rooted(const GraphView& g, const std::vector<int>& terminals,
                                           int s, int q, bool bothDirections) {
    if (q <= 0) return std::nullopt;
    for (int v : terminals) {
        if (v == s) continue;
        int c = local_conn(g, v, s, q);
        if (c < q) return Witness{v, s, q - c};
        if (bothDirections) {
            c = local_conn(g, s, v, q);
            if (c < q) return Witness{s, v, q - c};
        }
    }
    return std::nullopt;
}

// Subset Menger check over all ordered terminal pairs; short-circuits on the
// lexicographically first failure.
inline std::optional<Witness> check_subset(const GraphView& g, const std::vector<int>& terminals,
                                           int q) {
    if (q <= 0) return std::nullopt;
    for (int u : terminals)
        for (int v : terminals) {
            if (u == v) continue;
            if (!g.directed && u > v) continue;  // symmetric
            int c = local_conn(g, u, v, q);
            if (c < q) return Witness{u, v, q - c};
        }
    return std::nullopt;
}

// Post-parse, post-normalize contract: T is k-connected in J (both
// orientations for directed graphs).
inline void validate_instance(const Instance& inst) {
    auto w = check_subset(make_view(inst), inst.terminals, inst.k);
    if (w)
        throw InfeasibleError("instance infeasible as stated: terminals " + std::to_string(w->u) +
                                  " and " + std::to_string(w->v) + " only " +
                                  std::to_string(inst.k - w->deficiency) + "-connected in the zero-cost graph",
                              w->u, w->v);
}

struct VerifyReport {
    bool feasible = false;
    std::optional<Witness> witness;
    long long cost = 0;
    int residualCores = 0;
};

}  // namespace connaug
