#pragma once

#include "connaug/verify.hpp"
#include "connaug/bisets.hpp"

namespace connaug {

struct OracleResult {
    std::vector<int> edges;
    long long cost = 0;
};

namespace oracle_detail {

struct Searcher {
    const Instance& inst;
    int q;
    int root = -1;  // -1: subset feasibility, else rooted
    long long best = -1;
    std::vector<int> bestSet;

    explicit Searcher(const Instance& i, int qq, int r) : inst(i), q(qq), root(r) {}

    std::optional<Witness> witness(const GraphView& g) const {
        if (root >= 0) return check_rooted(g, inst.terminals, root, q, false);
        return check_subset(g, inst.terminals, q);
    }

    long long marginal(const std::set<int>& touched, int id) const {
        if (inst.costModel == CostModel::edge) return inst.cedges[id].cost;
        long long m = 0;
        if (!touched.count(inst.cedges[id].u)) m += inst.node_cost(inst.cedges[id].u);
        if (!touched.count(inst.cedges[id].v)) m += inst.node_cost(inst.cedges[id].v);
        return m;
    }

    // Witness-branching: every feasible completion must cover the minimal
    // tight biset of the first deficient pair, so branch over its allowed
    // covering edges (cheapest first, excluding earlier branches).
    void rec(std::vector<int>& chosen, std::set<int>& banned, long long cost) {
        if (best >= 0 && cost >= best) return;
        GraphView g = with_edges(inst, chosen);
        auto wit = witness(g);
        if (!wit) {
            best = cost;
            bestSet = chosen;
            return;
        }
        FlowNetwork net = build_split_network(g, wit->u, wit->v, {}, {});
        auto mf = max_flow(net, q);
        assert(mf.value < q);
        std::set<int> innerSet(mf.sourceSideNodes.begin(), mf.sourceSideNodes.end());
        std::set<int> outerSet(innerSet);
        for (int c : mf.cutNodes) outerSet.insert(c);

        std::set<int> touched;
        if (inst.costModel == CostModel::node)
            for (int id : chosen) {
                touched.insert(inst.cedges[id].u);
                touched.insert(inst.cedges[id].v);
            }

        std::vector<int> covers;
        for (int id = 0; id < (int)inst.cedges.size(); ++id) {
            if (banned.count(id)) continue;
            if (std::binary_search(chosen.begin(), chosen.end(), id)) continue;
            const auto& e = inst.cedges[id];
            bool c = innerSet.count(e.u) && !outerSet.count(e.v);
            if (!c && !inst.directed) c = innerSet.count(e.v) && !outerSet.count(e.u);
            if (c) covers.push_back(id);
        }
        if (covers.empty()) return;
        std::sort(covers.begin(), covers.end(), [&](int a, int b) {
            return std::make_pair(marginal(touched, a), a) < std::make_pair(marginal(touched, b), b);
        });
        if (best >= 0 && cost + marginal(touched, covers.front()) >= best) return;

        std::vector<int> nowBanned;
        for (int id : covers) {
            chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), id), id);
            long long c2 = cost + marginal(touched, id);
            if (inst.costModel == CostModel::node) c2 = inst.accounting_cost(chosen);
            rec(chosen, banned, c2);
            chosen.erase(std::find(chosen.begin(), chosen.end(), id));
            banned.insert(id);
            nowBanned.push_back(id);
        }
        for (int id : nowBanned) banned.erase(id);
    }
};

}  // namespace oracle_detail

// Ground-truth minimum-cost augmentation by exhaustive witness-driven branch
// and bound.  Guarded: meant for desk-scale ratio checks.
inline OracleResult opt_augment(const Instance& inst, int capEdges = 18) {
    if ((int)inst.cedges.size() > capEdges)
        throw GuardError("oracle guard exceeded: |E|=" + std::to_string(inst.cedges.size()));
    oracle_detail::Searcher s(inst, inst.k + 1, -1);
    std::vector<int> chosen;
    std::set<int> banned;
    s.rec(chosen, banned, 0);
    if (s.best < 0) {
        auto w = s.witness(with_edges(inst, [&] {
            std::vector<int> all(inst.cedges.size());
            for (int i = 0; i < (int)all.size(); ++i) all[i] = i;
            return all;
        }()));
        throw InfeasibleError("no feasible augmentation exists", w ? w->u : -1, w ? w->v : -1);
    }
    return {s.bestSet, s.best};
}

inline OracleResult opt_rooted(const Instance& inst, int root, int q, int capEdges = 18) {
    if ((int)inst.cedges.size() > capEdges)
        throw GuardError("oracle guard exceeded: |E|=" + std::to_string(inst.cedges.size()));
    oracle_detail::Searcher s(inst, q, root);
    std::vector<int> chosen;
    std::set<int> banned;
    s.rec(chosen, banned, 0);
    if (s.best < 0) throw InfeasibleError("no feasible rooted augmentation exists", -1, root);
    return {s.bestSet, s.best};
}

}  // namespace connaug
