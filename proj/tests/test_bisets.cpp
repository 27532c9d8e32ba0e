#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace connaug;

namespace {

Instance norm5() { return normalize(testutil::cycle5()); }

std::set<std::pair<TMask, TMask>> proj_set(const std::vector<TProjection>& ps) {
    std::set<std::pair<TMask, TMask>> out;
    for (auto& p : ps) out.insert({p.inner, p.boundary});
    return out;
}

// enumeration-based cores: project the residual family and keep the minima
std::vector<TProjection> enum_cores(const ResidualContext& ctx) {
    std::vector<TProjection> all;
    for (auto& b : residual_family(ctx)) {
        TProjection p = project_mask(*ctx.w, b);
        bool dup = false;
        for (auto& q : all)
            if (q == p) dup = true;
        if (!dup) all.push_back(p);
    }
    std::vector<TProjection> mins;
    for (size_t i = 0; i < all.size(); ++i) {
        bool minimal = true;
        for (size_t j = 0; j < all.size(); ++j)
            if (i != j && proj_le(all[j], all[i]) && !(all[j] == all[i])) minimal = false;
        if (minimal) mins.push_back(all[i]);
    }
    return mins;
}

}  // namespace

TEST_CASE("minimal tight biset on the normalized cycle") {
    Instance inst = norm5();
    Working w(inst);
    ResidualContext ctx(w, Side::forward);
    SECTION("every ordered pair yields a singleton inner part") {
        for (int u : inst.terminals)
            for (int v : inst.terminals) {
                if (u == v) continue;
                auto b = minimal_tight_biset(ctx, u, v);
                REQUIRE(b);
                CHECK(b->inner == std::vector<int>{u});
                CHECK(b->boundary.size() == 2);
            }
    }
    SECTION("an abstract edge covers its pair (both ways when undirected)") {
        ResidualContext cov(w, Side::forward, {{0, 1}});
        CHECK_FALSE(minimal_tight_biset(cov, 0, 1));
        CHECK_FALSE(minimal_tight_biset(cov, 1, 0));
        auto grown = minimal_tight_biset(cov, 1, 2);
        REQUIRE(grown);  // the singleton core is covered; the next member cuts through terminal 0
        CHECK(project(w, *grown).inner == 0b00010u);
        CHECK((project(w, *grown).boundary & 1u) != 0);
        CHECK(minimal_tight_biset(cov, 2, 4));
    }
}

TEST_CASE("directed abstract arcs cover one orientation only") {
    Instance inst = parse_instance(
        "aug directed edge 1\n"
        "nodes 6\n"
        "terminals 0 2 4\n"
        "jedge 0 1\njedge 1 2\njedge 2 3\njedge 3 4\njedge 4 5\njedge 5 0\n");
    Working w(inst);
    ResidualContext cov(w, Side::forward, {{0, 2}});
    CHECK_FALSE(minimal_tight_biset(cov, 0, 2));
    CHECK(minimal_tight_biset(cov, 2, 0));
}

TEST_CASE("k=0 isolated terminals give a boundaryless biset") {
    Instance inst = parse_instance("aug undirected edge 0\nnodes 2\nterminals 0 1\n");
    Working w(inst);
    ResidualContext ctx(w, Side::forward);
    auto b = minimal_tight_biset(ctx, 0, 1);
    REQUIRE(b);
    CHECK(b->inner == std::vector<int>{0});
    CHECK(b->boundary.empty());
}

TEST_CASE("cores of the normalized cycle") {
    Instance inst = norm5();
    Working w(inst);
    ResidualContext fwd(w, Side::forward);
    const auto& cs = cores(fwd);
    REQUIRE(cs.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(cs[i].inner == (1u << i));

    SECTION("reverse family coincides on undirected instances") {
        ResidualContext rev(w, Side::reverse);
        CHECK(proj_set(cores(rev)) == proj_set(cs));
    }
    SECTION("flow cores equal enumeration cores") {
        CHECK(proj_set(enum_cores(fwd)) == proj_set(cs));
    }
    SECTION("a covering edge set empties the family") {
        std::vector<std::pair<int, int>> I;
        for (int u : inst.terminals)
            for (int v : inst.terminals)
                if (u < v) I.push_back({u, v});
        ResidualContext cov(w, Side::forward, I);
        CHECK(cores(cov).empty());
        CHECK(residual_family(cov).empty());
    }
}

TEST_CASE("small core threshold") {
    SECTION("all cycle cores are small") {
        Instance inst = norm5();
        Working w(inst);
        ResidualContext ctx(w, Side::forward);
        auto [sc, nu] = small_cores(ctx);
        CHECK(nu == 5);  // 2*1 <= 5-2
        CHECK(sc.size() == 5);
    }
    SECTION("|T| = k+1 leaves no small members") {
        // triangle of terminals, k = 2: threshold (3-2)/2 rejects singletons
        Instance inst = normalize(testutil::cycleT(3, 2));
        Working w(inst);
        ResidualContext ctx(w, Side::forward);
        CHECK(nu_small(ctx) == 0);
        CHECK_FALSE(cores(ctx).empty());
    }
}

TEST_CASE("halos on the cycle are tight around their cores") {
    Instance inst = norm5();
    Working w(inst);
    ResidualContext ctx(w, Side::forward);
    auto [sc, nu] = small_cores(ctx);
    REQUIRE(nu == 5);
    TMask seen = 0;
    for (auto& c : sc) {
        Biset h = halo(ctx, c);
        TProjection p = project(w, h);
        CHECK(p.inner == c.inner);  // no superset stays clear of the other cores here
        CHECK((seen & p.inner) == 0);
        seen |= p.inner;
    }
}

TEST_CASE("greedy transversal") {
    Instance inst = norm5();
    Working w(inst);
    SECTION("disjoint singletons force every terminal") {
        std::vector<TProjection> cs;
        for (int i = 0; i < 3; ++i) cs.push_back({1u << i, 0, 0x1fu & ~(1u << i)});
        auto t = greedy_transversal(w, cs, {});
        CHECK(t == std::vector<int>{0, 1, 2});
    }
    SECTION("shared hub terminal wins") {
        std::vector<TProjection> cs;
        cs.push_back({0b00011, 0, 0b11100});
        cs.push_back({0b00110, 0, 0b11001});
        cs.push_back({0b10010, 0, 0b01101});
        auto t = greedy_transversal(w, cs, {});
        CHECK(t == std::vector<int>{1});  // terminal 1 hits all inner parts
    }
    SECTION("cycle transversal stays within the fractional budget") {
        ResidualContext ctx(w, Side::forward);
        auto [sc, nu] = small_cores(ctx);
        auto t = greedy_transversal(w, cores(ctx), sc);
        CHECK(t.size() == 5);
        int delta = max_inner_degree(cores(ctx), inst.tcount());
        CHECK(delta == 1);
        // |T'| <= (nu + 2|T|/(|T|-k)) * H(delta)
        Rat lhs((long long)t.size());
        Rat rhs = (Rat(nu) + Rat(2 * 5, 3)) * harmonic(delta);
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("enumerated family is closed under small intersections and unions") {
    std::vector<Instance> cases{norm5()};
    for (uint64_t seed : {21u, 22u, 23u}) {
        GenParams p;
        p.n = 9;
        p.tcount = 5;
        p.k = seed % 2 ? 1 : 2;
        p.seed = seed;
        p.directed = seed == 22;
        cases.push_back(prepare_instance(gen_random(p)));
    }
    for (auto& inst : cases) {
        Working w(inst);
        const auto& fam = enumerate_tight_family(w);
        std::set<std::pair<uint32_t, uint32_t>> famSet;
        for (auto& b : fam) famSet.insert({b.inner, b.outer});
        uint32_t tnodes = 0;
        for (int t : inst.terminals) tnodes |= 1u << t;
        int tc = inst.tcount(), k = inst.k;
        auto smallOf = [&](const MaskBiset& b) {
            return 2 * popcount(b.inner & tnodes) <= tc - k;
        };
        for (auto& x : fam)
            for (auto& y : fam) {
                if (x == y) continue;
                if (!smallOf(x) || !smallOf(y)) continue;
                if (!(x.inner & y.inner & tnodes)) continue;
                MaskBiset inter{x.inner & y.inner, x.outer & y.outer};
                MaskBiset uni{x.inner | y.inner, x.outer | y.outer};
                CHECK(famSet.count({inter.inner, inter.outer}) == 1);
                CHECK(famSet.count({uni.inner, uni.outer}) == 1);
                CHECK(smallOf(inter));
            }
    }
}

TEST_CASE("cores are pairwise non-crossing and bounded by the reverse packing") {
    for (uint64_t seed : {31u, 32u, 33u, 34u}) {
        GenParams p;
        p.n = 10;
        p.tcount = 5;
        p.k = 2;
        p.seed = seed;
        p.directed = seed % 2;
        Instance inst = prepare_instance(gen_random(p));
        Working w(inst);
        ResidualContext fwd(w, Side::forward), rev(w, Side::reverse);
        const auto& cs = cores(fwd);
        for (auto& a : cs)
            for (auto& b : cs) {
                if (a == b) continue;
                CHECK_FALSE(((a.inner & b.inner) && (a.compl_ & b.compl_)));
            }
        int delta = max_inner_degree(cs, inst.tcount());
        int nuRev = nu_exact(cores(rev), inst.tcount());
        CHECK(delta <= nuRev);
    }
}

TEST_CASE("flow and enumeration backends agree on residual cores") {
    for (uint64_t seed : {41u, 42u, 43u, 44u, 45u}) {
        GenParams p;
        p.n = 9;
        p.tcount = 4;
        p.k = (int)(seed % 3 == 0 ? 2 : 1);
        p.seed = seed;
        p.directed = seed % 2;
        Instance inst = prepare_instance(gen_random(p));
        Working w(inst);
        std::vector<std::vector<std::pair<int, int>>> Is = {
            {}, {{inst.terminals[0], inst.terminals[1]}}};
        for (auto& I : Is)
            for (Side side : {Side::forward, Side::reverse}) {
                ResidualContext ctx(w, side, I);
                CHECK(proj_set(cores(ctx)) == proj_set(enum_cores(ctx)));
            }
    }
}

TEST_CASE("extended contexts reuse what stays valid") {
    Instance inst = norm5();
    Working w(inst);
    ResidualContext ctx(w, Side::forward);
    cores(ctx);  // fill the cache
    ResidualContext ext = extended(ctx, {{0, 2}});
    ResidualContext fresh(w, Side::forward, {{0, 2}});
    CHECK(proj_set(cores(ext)) == proj_set(cores(fresh)));
    CHECK(nu_small(ext) == nu_small(fresh));
}
