#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace connaug;
using testutil::brute_min_q_connect;
using testutil::conn_by_separator_enum;

namespace {

GraphView view10cycle() {
    return make_view(normalize(testutil::cycle5()));
}

}  // namespace

TEST_CASE("split network flow values") {
    SECTION("path through one middle node") {
        GraphView g{3, false, {{0, 1}, {1, 2}}};
        FlowNetwork net = build_split_network(g, 0, 2);
        CHECK(max_flow(net, 10).value == 1);
    }
    SECTION("disconnected endpoints") {
        GraphView g{4, false, {{0, 1}, {2, 3}}};
        FlowNetwork net = build_split_network(g, 0, 3);
        CHECK(max_flow(net, 10).value == 0);
    }
    SECTION("normalized cycle carries two disjoint paths") {
        GraphView g = view10cycle();
        for (int v = 1; v <= 4; ++v) {
            FlowNetwork net = build_split_network(g, 0, v);
            auto mf = max_flow(net, 10);
            CHECK(mf.value == 2);
            CHECK(mf.value == conn_by_separator_enum(g, 0, v));
        }
    }
}

TEST_CASE("limited flow stops early and certifies cuts otherwise") {
    GraphView g = view10cycle();
    SECTION("limit clamp") {
        FlowNetwork net = build_split_network(g, 0, 2);
        auto mf = max_flow(net, 1);
        CHECK(mf.value == 1);
        CHECK(mf.cutNodes.empty());
    }
    SECTION("cut of two subdivision nodes") {
        FlowNetwork net = build_split_network(g, 0, 2);
        auto mf = max_flow(net, 3);
        CHECK(mf.value == 2);
        REQUIRE(mf.cutNodes.size() == 2);
        for (int c : mf.cutNodes) CHECK(c >= 5);  // fresh subdivision ids
        CHECK(mf.sourceSideNodes == std::vector<int>{0});
        CHECK(mf.sinkCutNodes.size() == 2);
    }
    SECTION("zero capacity network") {
        GraphView g2{2, false, {}};
        FlowNetwork net = build_split_network(g2, 0, 1);
        auto mf = max_flow(net, 5);
        CHECK(mf.value == 0);
        CHECK(mf.sourceSideNodes == std::vector<int>{0});
        CHECK(mf.cutNodes.empty());
    }
}

TEST_CASE("min cost q connect") {
    SECTION("sufficient zero-cost graph buys nothing") {
        GraphView g{3, false, {{0, 1}, {1, 2}}};
        std::vector<CandArc> cands{{0, 2, 4, 0}};
        auto r = min_cost_q_connect(g, cands, 0, 2, 1);
        CHECK(r.edges.empty());
        CHECK(r.cost == 0);
    }
    SECTION("directed two-path example") {
        auto g = testutil::directed_path_view();
        auto cands = testutil::directed_path_cands();
        auto brute = brute_min_q_connect(g, cands, 0, 2, 2);
        REQUIRE(brute.cost == 5);  // frozen from the exhaustive search
        auto r = min_cost_q_connect(g, cands, 0, 2, 2);
        CHECK(r.cost == 5);
        CHECK(r.edges == std::vector<int>{0, 1});
    }
    SECTION("infeasible when even all candidates fall short") {
        auto g = testutil::directed_path_view();
        auto cands = testutil::directed_path_cands();
        CHECK_THROWS_AS(min_cost_q_connect(g, cands, 0, 2, 4), InfeasibleError);
    }
}

TEST_CASE("flow equals separator enumeration on random instances") {
    for (uint64_t seed : {2u, 3u, 4u, 8u}) {
        GenParams p;
        p.n = 8;
        p.tcount = 4;
        p.k = seed % 2 ? 1 : 2;
        p.seed = seed;
        p.directed = seed % 2;
        Instance inst = normalize(gen_random(p));
        GraphView g = make_view(inst);
        if (g.n > 12) continue;
        for (int u : inst.terminals)
            for (int v : inst.terminals) {
                if (u == v) continue;
                CHECK(local_conn(g, u, v) == conn_by_separator_enum(g, u, v));
            }
    }
}

TEST_CASE("q-connect matches the exhaustive optimum on random instances") {
    for (uint64_t seed : {11u, 12u, 13u, 14u, 15u, 16u}) {
        GenParams p;
        p.n = 7;
        p.tcount = 4;
        p.k = 1;
        p.density = 0.25;
        p.seed = seed;
        p.directed = seed % 2;
        p.costModel = seed % 3 ? CostModel::edge : CostModel::node;
        Instance inst = prepare_instance(gen_random(p));
        if (inst.cedges.size() > 12) continue;
        Working w(inst);
        auto cands = w.cand_arcs();
        int q = inst.k + 1;
        for (int u : inst.terminals)
            for (int v : inst.terminals) {
                if (u == v) continue;
                auto brute = brute_min_q_connect(w.g, cands, u, v, q);
                if (brute.cost < 0) {
                    CHECK_THROWS_AS(min_cost_q_connect(w.g, cands, u, v, q), InfeasibleError);
                } else {
                    auto r = min_cost_q_connect(w.g, cands, u, v, q);
                    CHECK(r.cost == brute.cost);
                }
            }
    }
}
