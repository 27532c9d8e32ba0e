#pragma once

#include "connaug/cover.hpp"

namespace connaug {

inline Instance prepare_instance(const Instance& raw) {
    Instance inst = normalize(raw);
    validate_instance(inst);
    return inst;
}

// Replace every abstract edge by a minimum-weight candidate set giving k+1
// internally-disjoint paths for its pair.  All edges are realized against
// the same post-gadget graph; coverage of every remaining tight biset
// survives because k+1 disjoint paths cannot all cross a k-node boundary.
inline std::vector<int> realize_edges(const Working& w,
                                      const std::vector<std::pair<int, int>>& arcs) {
    auto cands = w.cand_arcs();
    int q = w.inst->k + 1;
    std::set<int> ids;
    for (auto& [u, v] : arcs) {
        auto r = min_cost_q_connect(w.g, cands, u, v, q);
        ids.insert(r.edges.begin(), r.edges.end());
    }
    return {ids.begin(), ids.end()};
}

inline std::vector<int> realize_stars(const Working& w, const std::vector<Star>& stars,
                                      const RootedSolver& solver, int& rootedCalls) {
    auto cands = w.cand_arcs();
    int q = w.inst->k + 1;
    std::set<int> ids;
    for (auto& st : stars) {
        RootedRequest req;
        req.g = &w.g;
        req.cands = &cands;
        req.root = st.center;
        req.targets = st.leaves;
        req.q = q;
        req.toRoot = st.orientation != StarOrientation::out_of_center;
        auto f = solver.augment(req);
        ids.insert(f.begin(), f.end());
        ++rootedCalls;
    }
    return {ids.begin(), ids.end()};
}

struct SolveDetail {
    bool preFeasible = false;
    GadgetResult gadget;
    EdgeCoverResult cover;      // variant i
    StarCoverResult starCover;  // variant ii
    Phase2Result completion;    // variant ii transversal completion
    int completionStars = 0;
};

inline Rat variant_i_bound(const Instance& inst, long long rho) {
    long long b = inst.directed ? 2 : 1;
    Rat r(3LL * inst.tcount(), inst.tcount() - inst.k);
    return Rat(b) * Rat(rho + inst.k) + r * r * harmonic(r);
}

namespace detail {

inline const RootedSolver& default_solver() {
    static TrivialRootedSolver s;
    return s;
}

// Final Menger verification with a bounded repair loop.  The repair path is
// a robustness net, never the expected route; the certificate records
// whether it ran.
inline void verify_and_repair(const Instance& inst, std::vector<int>& ids, Certificate& cert) {
    int q = inst.k + 1;
    for (int rounds = 0;; ++rounds) {
        GraphView g = with_edges(inst, ids);
        auto wit = check_subset(g, inst.terminals, q);
        if (!wit) break;
        if (rounds > (int)inst.cedges.size() + inst.tcount() * inst.tcount())
            throw std::logic_error("repair loop failed to converge");
        cert.repair_used = true;
        std::set<int> have(ids.begin(), ids.end());
        std::vector<CandArc> cands;
        for (int i = 0; i < (int)inst.cedges.size(); ++i) {
            if (have.count(i)) continue;
            const auto& e = inst.cedges[i];
            long long wgt = inst.costModel == CostModel::edge
                                ? e.cost
                                : inst.node_cost(e.u) + inst.node_cost(e.v);
            cands.push_back({e.u, e.v, wgt, i});
        }
        auto r = min_cost_q_connect(g, cands, wit->u, wit->v, q);
        ids.insert(ids.end(), r.edges.begin(), r.edges.end());
        std::sort(ids.begin(), ids.end());
    }
}

inline bool already_feasible(const Instance& inst) {
    return !check_subset(make_view(inst), inst.terminals, inst.k + 1).has_value();
}

inline Certificate base_cert(const Instance& inst, const RootedSolver& solver) {
    Certificate c;
    c.rooted_solver = solver.name();
    c.rho = solver.rho(inst.tcount());
    return c;
}

}  // namespace detail

// Variant (i): root gadget, two-phase abstract edge cover, min-cost flow
// realization of every abstract edge.
inline Solution solve_variant_i(const Instance& inst, const RootedSolver* solverPtr = nullptr,
                                SolveDetail* detail = nullptr) {
    const RootedSolver& solver = solverPtr ? *solverPtr : detail::default_solver();
    Certificate cert = detail::base_cert(inst, solver);
    Rat bound = variant_i_bound(inst, cert.rho);
    cert.bound_num = bound.num_ll();
    cert.bound_den = bound.den_ll();

    if (detail::already_feasible(inst)) {
        if (detail) detail->preFeasible = true;
        return make_solution(inst, {}, cert);
    }

    Working w(inst);
    GadgetResult gadget = root_gadget_augment(w, solver);
    cert.rooted_calls = gadget.rootedCalls;
    cert.gadget_cost = inst.accounting_cost(gadget.edges);

    EdgeCoverResult cover = edge_cover(w);
    cert.phase1_edges = (int)cover.p1.edges.size();
    cert.phase2_edges = (int)cover.p2.edges.size();

    std::vector<int> ids = realize_edges(w, cover.arcs);
    ids.insert(ids.end(), gadget.edges.begin(), gadget.edges.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    detail::verify_and_repair(inst, ids, cert);
    if (detail) {
        detail->gadget = gadget;
        detail->cover = cover;
    }
    return make_solution(inst, ids, cert);
}

// Variant (ii): root gadget, star cover (greedy or leaf-thrifty), transversal
// completion, one rooted call per star.
inline Solution solve_variant_ii(const Instance& inst, bool outcover = false,
                                 const RootedSolver* solverPtr = nullptr,
                                 SolveDetail* detail = nullptr) {
    const RootedSolver& solver = solverPtr ? *solverPtr : detail::default_solver();
    Certificate cert = detail::base_cert(inst, solver);

    if (detail::already_feasible(inst)) {
        if (detail) detail->preFeasible = true;
        Rat bound = Rat(cert.rho) * Rat(inst.directed ? 2 : 1);
        cert.bound_num = bound.num_ll();
        cert.bound_den = bound.den_ll();
        return make_solution(inst, {}, cert);
    }

    Working w(inst);
    GadgetResult gadget = root_gadget_augment(w, solver);
    cert.rooted_calls = gadget.rootedCalls;
    cert.gadget_cost = inst.accounting_cost(gadget.edges);

    StarCoverResult sc = outcover ? outcover_star_cover(w) : greedy_star_cover(w);
    auto [compStars, p2] = complete_with_stars(w, sc.arcs);
    std::vector<Star> allStars = sc.stars;
    allStars.insert(allStars.end(), compStars.begin(), compStars.end());
    cert.stars = (int)allStars.size();
    cert.phase2_edges = (int)p2.edges.size();

    int starCalls = 0;
    std::vector<int> ids = realize_stars(w, allStars, solver, starCalls);
    cert.rooted_calls += starCalls;
    ids.insert(ids.end(), gadget.edges.begin(), gadget.edges.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    // rooted-call budget: b gadget calls, then per side the iteration budget
    // plus the surviving small-core count, plus the completion stars
    long long callsBound = inst.directed ? 2 : 1;
    for (auto& tr : sc.sides) callsBound += tr.j + tr.nuAfterJ;
    callsBound += (long long)compStars.size();
    Rat bound = Rat(cert.rho) * Rat(callsBound);
    cert.bound_num = bound.num_ll();
    cert.bound_den = bound.den_ll();

    detail::verify_and_repair(inst, ids, cert);
    if (detail) {
        detail->gadget = gadget;
        detail->starCover = sc;
        detail->completion = p2;
        detail->completionStars = (int)compStars.size();
    }
    return make_solution(inst, ids, cert);
}

// Menger feasibility report for an arbitrary candidate subset.
inline VerifyReport verify_solution(const Instance& inst, const std::vector<int>& edgeIds) {
    VerifyReport rep;
    GraphView g = with_edges(inst, edgeIds);
    rep.witness = check_subset(g, inst.terminals, inst.k + 1);
    rep.feasible = !rep.witness.has_value();
    rep.cost = inst.accounting_cost(edgeIds);
    Working w(inst);
    w.buy(edgeIds);
    ResidualContext ctx(w, Side::forward);
    rep.residualCores = (int)cores(ctx).size();
    return rep;
}

}  // namespace connaug
