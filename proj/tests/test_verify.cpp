#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace connaug;

namespace {
Instance norm5() { return normalize(testutil::cycle5()); }
}  // namespace

TEST_CASE("local connectivity counts internally disjoint paths") {
    SECTION("single middle node") {
        GraphView g{3, false, {{0, 1}, {1, 2}}};
        CHECK(local_conn(g, 0, 2) == 1);
    }
    SECTION("normalized cycle") {
        GraphView g = make_view(norm5());
        CHECK(local_conn(g, 0, 3) == 2);
    }
    SECTION("direct edge plus a two-hop path") {
        GraphView g{3, false, {{0, 2}, {0, 1}, {1, 2}}};
        CHECK(local_conn(g, 0, 2) == 2);
    }
    SECTION("parallel direct edges count one each") {
        GraphView g{2, false, {{0, 1}, {0, 1}, {0, 1}}};
        CHECK(local_conn(g, 0, 1) == 3);
    }
}

TEST_CASE("rooted check") {
    Instance inst = norm5();
    GraphView g = make_view(inst);
    SECTION("q=0 always holds") {
        CHECK_FALSE(check_rooted(g, inst.terminals, 0, 0, false));
    }
    SECTION("cycle is 2-connected to any root") {
        for (int s : inst.terminals) CHECK_FALSE(check_rooted(g, inst.terminals, s, 2, false));
    }
    SECTION("deficiency of one at q=3") {
        auto w = check_rooted(g, inst.terminals, 0, 3, false);
        REQUIRE(w);
        CHECK(w->deficiency == 1);
        CHECK(w->u == 1);  // lexicographically first failing terminal
    }
}

TEST_CASE("subset check short-circuits lexicographically") {
    Instance inst = norm5();
    GraphView g = make_view(inst);
    CHECK_FALSE(check_subset(g, inst.terminals, 2));
    auto w = check_subset(g, inst.terminals, 3);
    REQUIRE(w);
    CHECK(w->u == 0);
    CHECK(w->v == 1);
    CHECK(w->deficiency == 1);
}

TEST_CASE("two terminals joined through a hub at q=1") {
    GraphView g{3, false, {{0, 2}, {2, 1}}};
    CHECK_FALSE(check_subset(g, {0, 1}, 1));
}

TEST_CASE("generated instances satisfy the validation contract") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        GenParams p;
        p.n = 10;
        p.tcount = 5;
        p.k = 2;
        p.seed = seed;
        p.directed = seed % 2;
        Instance inst = prepare_instance(gen_random(p));
        CHECK_FALSE(check_subset(make_view(inst), inst.terminals, inst.k));
    }
}

TEST_CASE("directed validation checks both orientations") {
    // one-way ring: 1-connected in both directions around the cycle
    Instance inst = parse_instance(
        "aug directed edge 1\n"
        "nodes 6\n"
        "terminals 0 2 4\n"
        "jedge 0 1\njedge 1 2\njedge 2 3\njedge 3 4\njedge 4 5\njedge 5 0\n");
    CHECK_NOTHROW(validate_instance(inst));
    // removing the return half breaks one orientation
    Instance broken = inst;
    broken.jedges.resize(3);
    CHECK_THROWS_AS(validate_instance(broken), InfeasibleError);
}
