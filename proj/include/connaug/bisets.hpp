#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "connaug/verify.hpp"

namespace connaug {

using TMask = uint32_t;

inline int popcount(uint32_t m) { return std::popcount(m); }
inline int lowest_bit(uint32_t m) { return std::countr_zero(m); }

// Projection of a tight biset onto the terminal set, stored side-locally:
// the reverse family keeps the reversed biset, so cores, smallness and halos
// read uniformly on both sides.
struct TProjection {
    TMask inner = 0;
    TMask boundary = 0;
    TMask compl_ = 0;

    TMask outer() const { return inner | boundary; }
    bool operator==(const TProjection& o) const {
        return inner == o.inner && boundary == o.boundary;
    }
};

// containment: inner strictly grows, or equal inner and outer grows
inline bool proj_le(const TProjection& a, const TProjection& b) {
    if ((a.inner & ~b.inner) != 0) return false;
    if (a.inner != b.inner) return true;
    return (a.outer() & ~b.outer()) == 0;
}

enum class Side { forward, reverse };

// Node-level biset, side-local (reverse side holds the reversed biset whose
// inner part is the complementary set of the underlying tight biset).
struct Biset {
    std::vector<int> inner;     // sorted
    std::vector<int> boundary;  // sorted
};

// Node-level tight biset as bit masks, for the enumeration backend.
struct MaskBiset {
    uint32_t inner = 0;
    uint32_t outer = 0;
    bool operator==(const MaskBiset& o) const { return inner == o.inner && outer == o.outer; }
    bool operator<(const MaskBiset& o) const {
        return inner != o.inner ? inner < o.inner : outer < o.outer;
    }
};

struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration guard for the explicit tight-family backend.
constexpr int kEnumMaxNodes = 24;
constexpr int kEnumMaxTerminals = 10;

// The zero-cost graph the residual machinery runs on: normalized J plus all
// bought candidate edges.  Every bought edge is subdivided through a fresh
// node so the terminal set stays independent and Menger equivalence between
// covering and feasibility is preserved.
struct Working {
    const Instance* inst = nullptr;
    GraphView g;
    std::vector<char> bought;
    mutable std::shared_ptr<const std::vector<MaskBiset>> tightFam;

    Working() = default;
    explicit Working(const Instance& i) : inst(&i), g(make_view(i)), bought(i.cedges.size(), 0) {}

    void buy(const std::vector<int>& ids) {
        for (int id : ids) {
            if (bought[id]) continue;
            bought[id] = 1;
            int w = g.n++;
            g.arcs.push_back({inst->cedges[id].u, w});
            g.arcs.push_back({w, inst->cedges[id].v});
        }
        tightFam.reset();
    }

    std::vector<int> bought_ids() const {
        std::vector<int> out;
        for (int i = 0; i < (int)bought.size(); ++i)
            if (bought[i]) out.push_back(i);
        return out;
    }

    // remaining candidates with model-specific weights
    std::vector<CandArc> cand_arcs() const {
        std::vector<CandArc> out;
        for (int i = 0; i < (int)inst->cedges.size(); ++i) {
            if (bought[i]) continue;
            const auto& e = inst->cedges[i];
            long long w = inst->costModel == CostModel::edge
                              ? e.cost
                              : inst->node_cost(e.u) + inst->node_cost(e.v);
            out.push_back({e.u, e.v, w, i});
        }
        return out;
    }

    TMask all_tmask() const { return (inst->tcount() >= 32) ? ~0u : ((1u << inst->tcount()) - 1); }
};

// Residual family handle: the tight bisets of the working graph left
// uncovered by the abstract edge set I, viewed from one side.  Immutable;
// the per-pair minimal-biset cache fills lazily and is reused when a context
// is extended by candidate edges.
struct ResidualContext {
    const Working* w = nullptr;
    Side side = Side::forward;
    std::vector<std::pair<int, int>> I;

    mutable std::map<std::pair<int, int>, std::optional<Biset>> mtbCache;
    mutable std::optional<std::vector<TProjection>> coresCache;

    ResidualContext() = default;
    ResidualContext(const Working& work, Side s, std::vector<std::pair<int, int>> arcs = {})
        : w(&work), side(s), I(std::move(arcs)) {}
};

namespace detail {

inline bool in_sorted(const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace detail

// Does the real arc (x,y) cover the underlying forward tight biset of a
// side-local node-level biset?  (Covering goes from the inner part to the
// complementary set; undirected instances cover in either orientation.)
inline bool arc_covers_biset(const Working& w, int x, int y, const Biset& b, Side side) {
    auto test = [&](int a, int bb) {
        bool aInner = detail::in_sorted(b.inner, a);
        bool aBd = detail::in_sorted(b.boundary, a);
        bool bInner = detail::in_sorted(b.inner, bb);
        bool bBd = detail::in_sorted(b.boundary, bb);
        if (side == Side::forward) return aInner && !bInner && !bBd;
        // reverse side stores the reversed biset: underlying inner part is
        // everything outside the stored outer part
        return !aInner && !aBd && bInner;
    };
    if (test(x, y)) return true;
    if (!w.g.directed && test(y, x)) return true;
    return false;
}

// Same test on a side-local projection for terminal arcs.
inline bool arc_covers_proj(const Working& w, int x, int y, const TProjection& p, Side side) {
    int xi = w.inst->tindex(x), yi = w.inst->tindex(y);
    if (xi < 0 || yi < 0) return false;
    auto test = [&](int a, int b) {
        if (side == Side::forward) return (p.inner >> a & 1) && (p.compl_ >> b & 1);
        return (p.compl_ >> a & 1) && (p.inner >> b & 1);
    };
    if (test(xi, yi)) return true;
    if (!w.g.directed && test(yi, xi)) return true;
    return false;
}

inline TProjection project(const Working& w, const Biset& b) {
    TProjection p;
    for (int i = 0; i < w.inst->tcount(); ++i) {
        int t = w.inst->terminals[i];
        if (detail::in_sorted(b.inner, t)) p.inner |= 1u << i;
        else if (detail::in_sorted(b.boundary, t)) p.boundary |= 1u << i;
        else p.compl_ |= 1u << i;
    }
    return p;
}

// Inclusion-minimal uncovered tight biset separating the ordered pair, from
// the context's side: the forward side takes the source-minimal min cut
// (smallest inner part containing u), the reverse side the sink-minimal one
// (smallest complementary part containing u, returned reversed).  none when
// the pair's connectivity already exceeds k.
inline std::optional<Biset> minimal_tight_biset(const ResidualContext& ctx, int u, int v) {
    auto key = std::make_pair(u, v);
    auto it = ctx.mtbCache.find(key);
    if (it != ctx.mtbCache.end()) return it->second;

    const Working& w = *ctx.w;
    int k = w.inst->k;
    std::optional<Biset> result;
    if (ctx.side == Side::forward) {
        FlowNetwork net = build_split_network(w.g, u, v, {}, ctx.I);
        auto mf = max_flow(net, k + 1);
        if (mf.value <= k) {
            assert(mf.value == k && "terminal pair below k in validated instance");
            assert(mf.edgeCut == 0 && "tight cuts are pure node cuts");
            Biset b;
            b.inner = mf.sourceSideNodes;
            b.boundary = mf.cutNodes;
            result = std::move(b);
        }
    } else {
        FlowNetwork net = build_split_network(w.g, v, u, {}, ctx.I);
        auto mf = max_flow(net, k + 1);
        if (mf.value <= k) {
            assert(mf.value == k && "terminal pair below k in validated instance");
            assert(mf.edgeCut == 0 && "tight cuts are pure node cuts");
            Biset b;
            b.inner = mf.sinkSideNodes;
            b.boundary = mf.sinkCutNodes;
            result = std::move(b);
        }
    }
    ctx.mtbCache[key] = result;
    return result;
}

// Cores: the inclusion-minimal members of the projected residual family on
// the context's side, assembled from the per-pair minimal bisets.  Sorted by
// smallest inner terminal, then masks.
inline const std::vector<TProjection>& cores(const ResidualContext& ctx) {
    if (ctx.coresCache) return *ctx.coresCache;
    const Working& w = *ctx.w;
    std::vector<TProjection> all;
    for (int u : w.inst->terminals)
        for (int v : w.inst->terminals) {
            if (u == v) continue;
            auto b = minimal_tight_biset(ctx, u, v);
            if (!b) continue;
            TProjection p = project(w, *b);
            bool dup = false;
            for (auto& q : all)
                if (q == p) {
                    dup = true;
                    break;
                }
            if (!dup) all.push_back(p);
        }
    std::vector<TProjection> mins;
    for (size_t i = 0; i < all.size(); ++i) {
        bool minimal = true;
        for (size_t j = 0; j < all.size(); ++j) {
            if (i == j) continue;
            if (proj_le(all[j], all[i]) && !(all[j] == all[i])) {
                minimal = false;
                break;
            }
        }
        if (minimal) mins.push_back(all[i]);
    }
    std::sort(mins.begin(), mins.end(), [](const TProjection& a, const TProjection& b) {
        int la = a.inner ? lowest_bit(a.inner) : 99, lb = b.inner ? lowest_bit(b.inner) : 99;
        if (la != lb) return la < lb;
        if (a.inner != b.inner) return a.inner < b.inner;
        return a.boundary < b.boundary;
    });
    ctx.coresCache = std::move(mins);
    return *ctx.coresCache;
}

inline bool is_small(const TProjection& p, int tcount, int k) {
    return 2 * popcount(p.inner) <= tcount - k;  // exact rational comparison vs (|T|-k)/2
}

// Cores with small inner part.  Their count equals the maximum number of
// pairwise inner-disjoint small members, because the small subfamily is
// intersecting-closed and its cores are pairwise inner-disjoint.
inline std::pair<std::vector<TProjection>, int> small_cores(const ResidualContext& ctx) {
    const auto& cs = cores(ctx);
    std::vector<TProjection> out;
    int tc = ctx.w->inst->tcount(), k = ctx.w->inst->k;
    TMask seen = 0;
    for (auto& c : cs)
        if (is_small(c, tc, k)) {
            assert((seen & c.inner) == 0 && "small cores must be pairwise inner-disjoint");
            seen |= c.inner;
            out.push_back(c);
        }
    int nu = (int)out.size();
    return {std::move(out), nu};
}

inline int nu_small(const ResidualContext& ctx) { return small_cores(ctx).second; }

// Exact max number of pairwise inner-disjoint members: subset DP over the
// terminal mask when |T| allows it, branch and bound otherwise.
inline int nu_exact(const std::vector<TProjection>& cs, int tcount) {
    std::vector<TMask> masks;
    for (auto& c : cs) masks.push_back(c.inner);
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    if (masks.empty()) return 0;
    if (tcount <= 16) {
        std::vector<int> f(1u << tcount, 0);
        for (TMask M = 1; M < (1u << tcount); ++M) {
            int best = f[M & (M - 1)];  // drop one terminal
            for (TMask m : masks)
                if (m && (m & ~M) == 0) best = std::max(best, 1 + f[M & ~m]);
            f[M] = best;
        }
        return f[(1u << tcount) - 1];
    }
    int best = 0;
    std::function<void(size_t, TMask, int)> rec = [&](size_t i, TMask used, int cnt) {
        best = std::max(best, cnt);
        if (i >= masks.size() || cnt + (int)(masks.size() - i) <= best) return;
        if ((masks[i] & used) == 0) rec(i + 1, used | masks[i], cnt + 1);
        rec(i + 1, used, cnt);
    };
    rec(0, 0, 0);
    return best;
}

inline int max_inner_degree(const std::vector<TProjection>& cs, int tcount) {
    int best = 0;
    for (int t = 0; t < tcount; ++t) {
        int d = 0;
        for (auto& c : cs)
            if (c.inner >> t & 1) ++d;
        best = std::max(best, d);
    }
    return best;
}

// All node-level tight bisets of the working graph, by direct inner-set
// enumeration with the definitional check; cached per working graph.
inline const std::vector<MaskBiset>& enumerate_tight_family(const Working& w) {
    if (w.tightFam) return *w.tightFam;
    int n = w.g.n;
    if (n > kEnumMaxNodes || w.inst->tcount() > kEnumMaxTerminals)
        throw GuardError("tight-family enumeration guard exceeded (n=" + std::to_string(n) + ")");
    std::vector<uint32_t> adj(n, 0);
    for (auto& [a, b] : w.g.arcs) {
        adj[a] |= 1u << b;
        if (!w.g.directed) adj[b] |= 1u << a;
    }
    uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1);
    uint32_t tnodes = 0;
    for (int t : w.inst->terminals) tnodes |= 1u << t;
    int k = w.inst->k;
    auto fam = std::make_shared<std::vector<MaskBiset>>();
    for (uint32_t mask = 1; mask <= full; ++mask) {
        if (!(mask & tnodes)) continue;
        uint32_t nb = 0;
        for (uint32_t m = mask; m;) {
            int v = lowest_bit(m);
            m &= m - 1;
            nb |= adj[v];
        }
        nb &= ~mask;
        if (popcount(nb) != k) continue;
        uint32_t outer = mask | nb;
        if (((full & ~outer) & tnodes) == 0) continue;
        fam->push_back({mask, outer});
        if (mask == full) break;
    }
    std::sort(fam->begin(), fam->end());
    w.tightFam = fam;
    return *w.tightFam;
}

inline MaskBiset reverse_mask_biset(const MaskBiset& b, uint32_t full) {
    return {full & ~b.outer, full & ~b.inner};
}

inline bool arc_covers_mask(const Working& w, int x, int y, const MaskBiset& b) {
    uint32_t full = (w.g.n >= 32) ? ~0u : ((1u << w.g.n) - 1);
    auto test = [&](int a, int bb) {
        return (b.inner >> a & 1) && ((full & ~b.outer) >> bb & 1);
    };
    if (test(x, y)) return true;
    if (!w.g.directed && test(y, x)) return true;
    return false;
}

inline TProjection project_mask(const Working& w, const MaskBiset& b) {
    TProjection p;
    for (int i = 0; i < w.inst->tcount(); ++i) {
        int t = w.inst->terminals[i];
        if (b.inner >> t & 1) p.inner |= 1u << i;
        else if (b.outer >> t & 1) p.boundary |= 1u << i;
        else p.compl_ |= 1u << i;
    }
    return p;
}

// Side-local node-level residual family from the enumeration backend:
// members uncovered by I, reversed for the reverse side.
inline std::vector<MaskBiset> residual_family(const ResidualContext& ctx) {
    const Working& w = *ctx.w;
    const auto& fam = enumerate_tight_family(w);
    uint32_t full = (w.g.n >= 32) ? ~0u : ((1u << w.g.n) - 1);
    std::vector<MaskBiset> out;
    for (auto& b : fam) {
        bool covered = false;
        for (auto& [x, y] : ctx.I)
            if (arc_covers_mask(w, x, y, b)) {
                covered = true;
                break;
            }
        if (covered) continue;
        out.push_back(ctx.side == Side::forward ? b : reverse_mask_biset(b, full));
    }
    if (ctx.side == Side::reverse) std::sort(out.begin(), out.end());
    return out;
}

inline Biset mask_to_biset(const MaskBiset& b) {
    Biset out;
    for (int v = 0; v < 32; ++v) {
        if (b.inner >> v & 1) out.inner.push_back(v);
        else if (b.outer >> v & 1) out.boundary.push_back(v);
    }
    return out;
}

// Halo of a small core: the union of the small residual members that
// contain the core and no other small core.  Enumeration backend; halos of
// distinct small cores have pairwise disjoint inner parts.
inline Biset halo(const ResidualContext& ctx, const TProjection& core) {
    const Working& w = *ctx.w;
    auto fam = residual_family(ctx);
    auto [smalls, nu] = small_cores(ctx);
    (void)nu;
    int tc = w.inst->tcount(), k = w.inst->k;
    MaskBiset uni{0, 0};
    for (auto& b : fam) {
        TProjection p = project_mask(w, b);
        if (!is_small(p, tc, k)) continue;
        if (!proj_le(core, p)) continue;
        bool other = false;
        for (auto& c : smalls) {
            if (c == core) continue;
            if (proj_le(c, p)) {
                other = true;
                break;
            }
        }
        if (other) continue;
        uni.inner |= b.inner;
        uni.outer |= b.outer;
    }
    assert(uni.inner != 0 && "a small core is itself a member, so its halo is nonempty");
    return mask_to_biset(uni);
}

// Greedy max-coverage transversal of the core inner parts; ties go to the
// smallest terminal id.
inline std::vector<int> greedy_transversal(const Working& w, const std::vector<TProjection>& cs,
                                           const std::vector<TProjection>& smallCores) {
#ifndef NDEBUG
    for (auto& s : smallCores) {
        bool found = false;
        for (auto& c : cs)
            if (c == s) found = true;
        assert(found && "small cores are cores");
    }
#else
    (void)smallCores;
#endif
    int tc = w.inst->tcount();
    std::vector<char> hit(cs.size(), 0);
    size_t remaining = cs.size();
    std::vector<int> out;
    while (remaining > 0) {
        int bestT = -1, bestDeg = 0;
        for (int t = 0; t < tc; ++t) {
            int d = 0;
            for (size_t i = 0; i < cs.size(); ++i)
                if (!hit[i] && (cs[i].inner >> t & 1)) ++d;
            if (d > bestDeg) {
                bestDeg = d;
                bestT = t;
            }
        }
        assert(bestT >= 0 && "every core has a nonempty inner part");
        out.push_back(w.inst->terminals[bestT]);
        for (size_t i = 0; i < cs.size(); ++i)
            if (!hit[i] && (cs[i].inner >> bestT & 1)) {
                hit[i] = 1;
                --remaining;
            }
    }
    return out;
}

// Context extension: copies cached pair results that the new arcs cannot
// invalidate (an uncovered minimal biset stays minimal when the family
// shrinks; an absent deficiency never reappears).
inline ResidualContext extended(const ResidualContext& ctx,
                                const std::vector<std::pair<int, int>>& arcs) {
    ResidualContext r(*ctx.w, ctx.side, ctx.I);
    for (auto& a : arcs) r.I.push_back(a);
    for (auto& [key, ob] : ctx.mtbCache) {
        if (!ob) {
            r.mtbCache[key] = ob;
            continue;
        }
        bool covered = false;
        for (auto& [x, y] : arcs)
            if (arc_covers_biset(*ctx.w, x, y, *ob, ctx.side)) {
                covered = true;
                break;
            }
        if (!covered) r.mtbCache[key] = ob;
    }
    return r;
}

inline int nu_small_extended(const ResidualContext& ctx,
                             const std::vector<std::pair<int, int>>& arcs) {
    ResidualContext r = extended(ctx, arcs);
    return nu_small(r);
}

}  // namespace connaug
