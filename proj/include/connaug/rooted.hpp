#pragma once

#include "connaug/bisets.hpp"

namespace connaug {

// Rooted augmentation request: raise every target's connectivity with the
// root to q.  q = k+1 in all pipeline uses.
struct RootedRequest {
    const GraphView* g = nullptr;
    const std::vector<CandArc>* cands = nullptr;
    int root = -1;
    std::vector<int> targets;
    int q = 0;
    bool toRoot = true;  // paths target->root; ignored on undirected graphs
};

// Pluggable rooted-augmentation approximation.
struct RootedSolver {
    virtual ~RootedSolver() = default;
    virtual std::string name() const = 0;
    virtual long long rho(int tcount) const = 0;
    virtual std::vector<int> augment(const RootedRequest& req) const = 0;
};

// Per-target min-cost flow union: each target gets an optimal edge set for
// its own pair, so the union costs at most |targets| times the rooted
// optimum.
struct TrivialRootedSolver final : RootedSolver {
    std::string name() const override { return "trivial"; }
    long long rho(int tcount) const override { return tcount; }

    std::vector<int> augment(const RootedRequest& req) const override {
        std::set<int> ids;
        for (int t : req.targets) {
            if (t == req.root) continue;
            int from = req.toRoot ? t : req.root;
            int to = req.toRoot ? req.root : t;
            try {
                auto r = min_cost_q_connect(*req.g, *req.cands, from, to, req.q);
                ids.insert(r.edges.begin(), r.edges.end());
            } catch (const InfeasibleError&) {
                throw InfeasibleError("rooted augmentation infeasible for target " + std::to_string(t),
                                      from, to);
            }
        }
        std::vector<int> out(ids.begin(), ids.end());
#ifndef NDEBUG
        GraphView aug = with_extra(*req.g, *req.cands, out);
        for (int t : req.targets) {
            if (t == req.root) continue;
            int from = req.toRoot ? t : req.root;
            int to = req.toRoot ? req.root : t;
            assert(local_conn(aug, from, to, req.q) >= req.q);
        }
#endif
        return out;
    }

    static GraphView with_extra(const GraphView& g, const std::vector<CandArc>& cands,
                                const std::vector<int>& ids) {
        GraphView out = g;
        std::set<int> want(ids.begin(), ids.end());
        for (auto& c : cands)
            if (want.count(c.id)) out.arcs.push_back({c.u, c.v});
        return out;
    }
};

struct GadgetResult {
    std::vector<int> edges;  // candidate ids bought (already merged into the working graph)
    int rootedCalls = 0;
    int nuForward = 0;   // small-core counts after the gadget
    int nuReverse = 0;
};

// Root-gadget preprocessing: attach a fresh root to the k+1 smallest
// terminals with zero-cost edges, make all of T (k+1)-connected with the
// root via the rooted solver (both directions when directed), then drop the
// root and keep the bought edges.  Afterwards every residual core straddles
// the chosen terminal subset, so both small-core counts are at most k+1;
// both postconditions are checked, not assumed.
inline GadgetResult root_gadget_augment(Working& w, const RootedSolver& solver) {
    const Instance& inst = *w.inst;
    int q = inst.k + 1;
    std::vector<int> tprime(inst.terminals.begin(),
                            inst.terminals.begin() + std::min<size_t>(inst.terminals.size(), q));

    GraphView gad = w.g;
    int s = gad.n++;
    for (int t : tprime) {
        gad.arcs.push_back({s, t});
        if (gad.directed) gad.arcs.push_back({t, s});
    }
    auto cands = w.cand_arcs();

    GadgetResult res;
    std::set<int> ids;
    {
        RootedRequest req{&gad, &cands, s, inst.terminals, q, true};
        auto f = solver.augment(req);
        ids.insert(f.begin(), f.end());
        ++res.rootedCalls;
    }
    if (inst.directed) {
        RootedRequest req{&gad, &cands, s, inst.terminals, q, false};
        auto f = solver.augment(req);
        ids.insert(f.begin(), f.end());
        ++res.rootedCalls;
    }
    res.edges.assign(ids.begin(), ids.end());

    {
        GraphView check = TrivialRootedSolver::with_extra(gad, cands, res.edges);
        auto bad = check_rooted(check, inst.terminals, s, q, inst.directed);
        if (bad)
            throw InfeasibleError("rooted augmentation left a deficient terminal pair", bad->u, bad->v);
    }

    w.buy(res.edges);

    TMask tpmask = 0;
    for (int t : tprime) tpmask |= 1u << inst.tindex(t);
    for (Side side : {Side::forward, Side::reverse}) {
        ResidualContext ctx(w, side);
        auto [smalls, nu] = small_cores(ctx);
        for (auto& c : cores(ctx)) {
            if (!(c.inner & tpmask) || !(c.compl_ & tpmask))
                throw std::logic_error("gadget postcondition violated: a core avoids the root set");
        }
        if (nu > q) throw std::logic_error("gadget postcondition violated: small-core count above k+1");
        (side == Side::forward ? res.nuForward : res.nuReverse) = nu;
    }
    return res;
}

}  // namespace connaug
