#pragma once

#include <climits>

#include "connaug/rational.hpp"
#include "connaug/rooted.hpp"

namespace connaug {

struct AbstractEdge {
    int tail = -1, head = -1;
};

enum class StarOrientation { into_center, out_of_center, undirected_star };

// Abstract cover element realized later by one rooted-augmentation call.
// An into-center star covers a biset when some leaf lies in the inner part
// and the center in the complementary set.
struct Star {
    int center = -1;
    std::vector<int> leaves;
    StarOrientation orientation = StarOrientation::undirected_star;

    std::vector<std::pair<int, int>> arcs() const {
        std::vector<std::pair<int, int>> out;
        for (int l : leaves)
            out.push_back(orientation == StarOrientation::out_of_center
                              ? std::make_pair(center, l)
                              : std::make_pair(l, center));
        return out;
    }
};

namespace detail {

inline std::pair<int, int> canon_pair(bool directed, int a, int b) {
    if (!directed && a > b) std::swap(a, b);
    return {a, b};
}

// Terminal arcs that could kill a small core on either side.  An edge can
// only lower a small-core count if it covers one of the current small cores,
// so the lexicographic scan over all terminal pairs may skip the rest.
inline std::vector<std::pair<int, int>> reducing_candidates(const Working& w,
                                                            const std::vector<TProjection>& smallF,
                                                            const std::vector<TProjection>& smallR) {
    const Instance& inst = *w.inst;
    std::set<std::pair<int, int>> cand;
    auto emit = [&](TMask tails, TMask heads) {
        for (TMask tm = tails; tm;) {
            int ti = lowest_bit(tm);
            tm &= tm - 1;
            for (TMask hm = heads; hm;) {
                int hi = lowest_bit(hm);
                hm &= hm - 1;
                cand.insert(canon_pair(inst.directed, inst.terminals[ti], inst.terminals[hi]));
            }
        }
    };
    for (auto& c : smallF) emit(c.inner, c.compl_);
    for (auto& c : smallR) emit(c.compl_, c.inner);  // reverse side stores swapped parts
    return {cand.begin(), cand.end()};
}

}  // namespace detail

struct Phase1Result {
    std::vector<AbstractEdge> edges;
    int entryNuF = 0, entryNuR = 0;
    int exitNuF = 0, exitNuR = 0;
};

// Phase 1: while a single terminal edge lowers one of the two small-core
// counts, add the lexicographically first such edge.
inline Phase1Result phase1(const Working& w, const std::vector<std::pair<int, int>>& startI = {}) {
    const Instance& inst = *w.inst;
    bool twoSided = inst.directed;
    ResidualContext ctxF(w, Side::forward, startI);
    ResidualContext ctxR(w, Side::reverse, startI);

    Phase1Result res;
    int nuF = nu_small(ctxF);
    int nuR = twoSided ? nu_small(ctxR) : nuF;
    res.entryNuF = nuF;
    res.entryNuR = nuR;

    for (;;) {
        auto [smallF, nf] = small_cores(ctxF);
        std::vector<TProjection> smallR;
        if (twoSided) smallR = small_cores(ctxR).first;
        auto cand = detail::reducing_candidates(w, smallF, smallR);
        bool added = false;
        for (auto& e : cand) {
            std::vector<std::pair<int, int>> one{e};
            int nf2 = nu_small_extended(ctxF, one);
            int nr2 = nuR;
            if (nf2 >= nuF && twoSided) nr2 = nu_small_extended(ctxR, one);
            if (nf2 < nuF || (twoSided && nr2 < nuR)) {
                res.edges.push_back({e.first, e.second});
                ctxF = extended(ctxF, one);
                if (twoSided) ctxR = extended(ctxR, one);
                nuF = nu_small(ctxF);
                nuR = twoSided ? nu_small(ctxR) : nuF;
                added = true;
                break;
            }
        }
        if (!added) break;
    }
    res.exitNuF = nuF;
    res.exitNuR = nuR;
    return res;
}

struct Phase2Result {
    std::vector<AbstractEdge> edges;  // I'
    std::vector<int> transversal;     // T', in greedy pick order
    int delta = 0;                    // measured max terminal degree over the residual cores
    int nuSmallF = 0;                 // small-core count of the residual at entry
    int nuRevExact = 0;               // exact packing number of the reverse residual
    int maxPerCenter = 0;
    bool covered = false;             // residual empty after I + I'
};

// Phase 2: greedy transversal of the residual cores, then for every
// transversal terminal one edge into each inclusion-minimal complementary
// terminal set among the members whose inner part it hits.
inline Phase2Result phase2(const Working& w, const std::vector<std::pair<int, int>>& I) {
    const Instance& inst = *w.inst;
    ResidualContext ctxF(w, Side::forward, I);
    ResidualContext ctxR(w, Side::reverse, I);

    Phase2Result res;
    const auto& cs = cores(ctxF);
    auto [smalls, nuS] = small_cores(ctxF);
    res.nuSmallF = nuS;
    res.delta = max_inner_degree(cs, inst.tcount());
    res.nuRevExact = nu_exact(cores(ctxR), inst.tcount());
    res.transversal = greedy_transversal(w, cs, smalls);

    std::set<std::pair<int, int>> seen;
    for (int s : res.transversal) {
        // inclusion-minimal complements over sink-minimal cuts per partner
        std::vector<TMask> compls;
        for (int v : inst.terminals) {
            if (v == s) continue;
            auto b = minimal_tight_biset(ctxR, v, s);  // minimal complement containing v, s inside
            if (!b) continue;
            TMask m = project(w, *b).inner;  // stored reverse inner = complement of the member
            if (std::find(compls.begin(), compls.end(), m) == compls.end()) compls.push_back(m);
        }
        int cnt = 0;
        for (TMask m : compls) {
            bool minimal = true;
            for (TMask o : compls)
                if (o != m && (o & ~m) == 0) {
                    minimal = false;
                    break;
                }
            if (!minimal) continue;
            int head = inst.terminals[lowest_bit(m)];
            ++cnt;
            if (seen.insert(detail::canon_pair(inst.directed, s, head)).second)
                res.edges.push_back({s, head});
        }
        res.maxPerCenter = std::max(res.maxPerCenter, cnt);
    }

    auto all = I;
    for (auto& e : res.edges) all.push_back({e.tail, e.head});
    ResidualContext check(w, Side::forward, all);
    res.covered = cores(check).empty();
    return res;
}

struct EdgeCoverResult {
    Phase1Result p1;
    Phase2Result p2;
    std::vector<std::pair<int, int>> arcs;  // I + I'
};

inline EdgeCoverResult edge_cover(const Working& w) {
    EdgeCoverResult res;
    res.p1 = phase1(w);
    for (auto& e : res.p1.edges) res.arcs.push_back({e.tail, e.head});
    res.p2 = phase2(w, res.arcs);
    for (auto& e : res.p2.edges) res.arcs.push_back({e.tail, e.head});
    return res;
}

// Minimum integer j with alpha^j (nu - beta/(1-alpha)) <= 2/(1-alpha), for
// alpha = (|T|+k)/2|T|, beta = 1/2.  Everything stays rational.
inline long long star_iteration_budget(int nu, int tcount, int k) {
    Rat alpha(tcount + k, 2LL * tcount);
    Rat B(tcount, tcount - k);        // beta/(1-alpha)
    Rat tau(4LL * tcount, tcount - k);  // 2/(1-alpha)
    Rat x = Rat(nu) - B;
    long long j = 0;
    while (x > tau) {
        x = x * alpha;
        ++j;
    }
    return j;
}

// integer-safe form of the per-iteration contraction bound
inline bool star_recurrence_holds(int nuNext, int nu, int tcount, int k) {
    return 2LL * tcount * nuNext <= (long long)(tcount + k) * nu + tcount;
}

struct StarSideTrace {
    Side side = Side::forward;
    int entryNu = 0;
    long long j = 0;
    std::vector<int> nuSeq;  // nu before/after each star
    int stars = 0;
    int nuAfterJ = 0;
    bool recurrenceOk = true;
    bool dropOk = true;            // out-cover per-iteration core-count drop
    long long leavesFirstJ = 0;    // out-cover leaf budget over the first j iterations
};

struct StarCoverResult {
    std::vector<Star> stars;
    std::vector<std::pair<int, int>> arcs;
    std::vector<StarSideTrace> sides;
    bool outcoverFellBack = false;
    bool outcoverExistenceOk = true;  // greedy center met the guaranteed out-cover count
};

namespace detail {

inline StarOrientation loop_orientation(const Instance& inst, Side side) {
    if (!inst.directed) return StarOrientation::undirected_star;
    return side == Side::forward ? StarOrientation::into_center : StarOrientation::out_of_center;
}

inline std::vector<std::pair<int, int>> full_star_arcs(const Instance& inst, int s, Side side) {
    std::vector<std::pair<int, int>> arcs;
    for (int v : inst.terminals) {
        if (v == s) continue;
        bool into = !inst.directed || side == Side::forward;
        arcs.push_back(into ? std::make_pair(v, s) : std::make_pair(s, v));
    }
    return arcs;
}

}  // namespace detail

// Greedy star cover: while small cores remain, commit the full star whose
// addition minimizes the small-core count (ties to the smallest center id);
// the forward family uses into-center stars, the reverse family (directed
// case) out-of-center ones.
inline StarCoverResult greedy_star_cover(const Working& w) {
    const Instance& inst = *w.inst;
    StarCoverResult res;
    std::vector<Side> sides{Side::forward};
    if (inst.directed) sides.push_back(Side::reverse);

    for (Side side : sides) {
        ResidualContext ctx(w, side, res.arcs);
        StarSideTrace tr;
        tr.side = side;
        int nu = nu_small(ctx);
        tr.entryNu = nu;
        tr.j = star_iteration_budget(nu, inst.tcount(), inst.k);
        tr.nuSeq.push_back(nu);
        int guard = 2 * nu + 2 * inst.tcount() + 4;
        while (nu >= 1) {
            if (--guard < 0) throw std::logic_error("greedy star cover failed to make progress");
            int bestNu = INT_MAX, bestCenter = -1;
            for (int s : inst.terminals) {
                int c = nu_small_extended(ctx, detail::full_star_arcs(inst, s, side));
                if (c < bestNu) {
                    bestNu = c;
                    bestCenter = s;
                }
            }
            Star st;
            st.center = bestCenter;
            for (int v : inst.terminals)
                if (v != bestCenter) st.leaves.push_back(v);
            st.orientation = detail::loop_orientation(inst, side);
            auto arcs = st.arcs();
            if (!star_recurrence_holds(bestNu, nu, inst.tcount(), inst.k)) tr.recurrenceOk = false;
            res.stars.push_back(st);
            for (auto& a : arcs) res.arcs.push_back(a);
            ctx = extended(ctx, arcs);
            nu = nu_small(ctx);
            assert(nu == bestNu);
            tr.nuSeq.push_back(nu);
            ++tr.stars;
        }
        tr.nuAfterJ = tr.nuSeq[std::min<size_t>(tr.j, tr.nuSeq.size() - 1)];
        res.sides.push_back(tr);
    }
    return res;
}

// Leaf-thrifty variant: for the first j iterations pick the terminal
// out-covering the most small cores (outside the most halos) and add one
// edge per out-covered core, capped at the guaranteed count; the remaining
// cores are left to the transversal completion.  Requires the enumeration
// backend; otherwise falls back to the greedy cover.
inline StarCoverResult outcover_star_cover(const Working& w) {
    const Instance& inst = *w.inst;
    if (w.g.n > kEnumMaxNodes || inst.tcount() > kEnumMaxTerminals) {
        StarCoverResult res = greedy_star_cover(w);
        res.outcoverFellBack = true;
        return res;
    }
    StarCoverResult res;
    std::vector<Side> sides{Side::forward};
    if (inst.directed) sides.push_back(Side::reverse);
    int tc = inst.tcount(), k = inst.k;

    for (Side side : sides) {
        ResidualContext ctx(w, side, res.arcs);
        StarSideTrace tr;
        tr.side = side;
        int nu = nu_small(ctx);
        tr.entryNu = nu;
        tr.j = star_iteration_budget(nu, tc, k);
        tr.nuSeq.push_back(nu);
        for (long long it = 0; it < tr.j && nu >= 1; ++it) {
            auto [smalls, cnt] = small_cores(ctx);
            std::vector<TMask> haloOuterT(smalls.size(), 0);
            for (size_t i = 0; i < smalls.size(); ++i) {
                Biset h = halo(ctx, smalls[i]);
                haloOuterT[i] = project(w, h).outer();
            }
            int bestS = -1, bestCount = -1;
            for (int ti = 0; ti < tc; ++ti) {
                int c = 0;
                for (auto m : haloOuterT)
                    if (!(m >> ti & 1)) ++c;
                if (c > bestCount) {
                    bestCount = c;
                    bestS = ti;
                }
            }
            // guaranteed: ceil(nu (|T|-k)/|T|) - 1
            long long guaranteed = ((long long)nu * (tc - k) + tc - 1) / tc - 1;
            if (bestCount < guaranteed) res.outcoverExistenceOk = false;
            long long m = std::min<long long>(bestCount, std::max<long long>(guaranteed, 0));
            if (m <= 0) break;
            Star st;
            st.center = inst.terminals[bestS];
            st.orientation = detail::loop_orientation(inst, side);
            long long taken = 0;
            for (size_t i = 0; i < smalls.size() && taken < m; ++i) {
                if (haloOuterT[i] >> bestS & 1) continue;
                st.leaves.push_back(inst.terminals[lowest_bit(smalls[i].inner)]);
                ++taken;
            }
            auto arcs = st.arcs();
            int nuNext = nu_small_extended(ctx, arcs);
            if (nu - nuNext < (taken + 1) / 2) tr.dropOk = false;
            if (!star_recurrence_holds(nuNext, nu, tc, k)) tr.recurrenceOk = false;
            tr.leavesFirstJ += taken;
            res.stars.push_back(st);
            for (auto& a : arcs) res.arcs.push_back(a);
            ctx = extended(ctx, arcs);
            nu = nuNext;
            tr.nuSeq.push_back(nu);
            ++tr.stars;
        }
        tr.nuAfterJ = tr.nuSeq.back();
        res.sides.push_back(tr);
    }
    return res;
}

// Transversal completion shared by both star modes: phase-2 edges grouped
// into per-center stars (out of the center, which sits in the inner parts).
inline std::pair<std::vector<Star>, Phase2Result> complete_with_stars(
    const Working& w, const std::vector<std::pair<int, int>>& I) {
    Phase2Result p2 = phase2(w, I);
    std::map<int, std::vector<int>> byCenter;
    std::vector<int> order;
    for (auto& e : p2.edges) {
        if (!byCenter.count(e.tail)) order.push_back(e.tail);
        byCenter[e.tail].push_back(e.head);
    }
    std::vector<Star> stars;
    for (int s : order) {
        Star st;
        st.center = s;
        st.leaves = byCenter[s];
        st.orientation = w.inst->directed ? StarOrientation::out_of_center
                                          : StarOrientation::undirected_star;
        stars.push_back(st);
    }
    return {stars, p2};
}

}  // namespace connaug
