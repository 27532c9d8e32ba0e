#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace connaug;
using testutil::cycle5;

TEST_CASE("header and fields parse verbatim") {
    Instance inst = parse_instance(
        "# four terminals on a cycle\n"
        "aug undirected edge 2\n"
        "nodes 4\n"
        "terminals 0 1 2 3\n"
        "jedge 0 1\njedge 1 2\njedge 2 3\njedge 3 0\n");
    CHECK(inst.k == 2);
    CHECK(inst.n == 4);
    CHECK_FALSE(inst.directed);
    CHECK(inst.costModel == CostModel::edge);
    CHECK(inst.terminals == std::vector<int>{0, 1, 2, 3});
    CHECK(inst.jedges.size() == 4);
}

TEST_CASE("parse rejects bad input with line numbers") {
    SECTION("too few terminals") {
        try {
            parse_instance("aug undirected edge 2\nnodes 4\nterminals 0 1\n");
            FAIL("expected parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("at least k+1 terminals required") != std::string::npos);
        }
    }
    SECTION("empty terminal list") {
        CHECK_THROWS_AS(parse_instance("aug undirected edge 0\nnodes 2\nterminals\n"), ParseError);
    }
    SECTION("candidate duplicating a zero-cost edge") {
        try {
            parse_instance(
                "aug undirected edge 0\nnodes 3\nterminals 0 1\njedge 0 1\ncedge 1 0 4\n");
            FAIL("expected parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == 5);
            CHECK(std::string(e.what()).find("duplicates") != std::string::npos);
        }
    }
    SECTION("terminal id out of range") {
        CHECK_THROWS_AS(parse_instance("aug undirected edge 0\nnodes 2\nterminals 0 7\n"), ParseError);
    }
    SECTION("self loop") {
        CHECK_THROWS_AS(
            parse_instance("aug undirected edge 0\nnodes 3\nterminals 0 1\njedge 2 2\n"),
            ParseError);
    }
    SECTION("ncost outside the node model") {
        CHECK_THROWS_AS(
            parse_instance("aug undirected edge 0\nnodes 2\nterminals 0 1\nncost 0 3\n"),
            ParseError);
    }
    SECTION("parallel candidates are allowed") {
        Instance inst = parse_instance(
            "aug undirected edge 0\nnodes 2\nterminals 0 1\ncedge 0 1 4\ncedge 0 1 9\n");
        CHECK(inst.cedges.size() == 2);
    }
}

TEST_CASE("normalize subdivides terminal-terminal zero-cost edges") {
    Instance inst = cycle5();
    Instance norm = normalize(inst);
    CHECK(norm.n == 10);
    CHECK(norm.jedges.size() == 10);
    for (auto& [u, v] : norm.jedges) CHECK_FALSE((norm.is_terminal(u) && norm.is_terminal(v)));
    CHECK(norm.terminals == inst.terminals);

    SECTION("idempotent") {
        Instance again = normalize(norm);
        CHECK(again == norm);
    }
    SECTION("validates as 2-connected") { CHECK_NOTHROW(validate_instance(norm)); }
}

TEST_CASE("normalize is a no-op without terminal-terminal edges") {
    Instance inst = parse_instance(
        "aug undirected edge 1\n"
        "nodes 4\n"
        "terminals 0 1 2\n"
        "jedge 0 3\njedge 1 3\njedge 2 3\n");
    Instance norm = normalize(inst);
    CHECK(norm == inst);
    // hub star: every terminal pair has exactly one internally-disjoint path
    for (int u : inst.terminals)
        for (int v : inst.terminals)
            if (u != v) CHECK(local_conn(make_view(norm), u, v) == 1);
    CHECK_NOTHROW(validate_instance(norm));
}

TEST_CASE("normalization preserves the exact optimum") {
    // terminal-terminal J cycle plus unit candidates; the oracle must agree
    // on raw and normalized forms
    Instance raw = parse_instance(
        "aug undirected edge 1\n"
        "nodes 4\n"
        "terminals 0 1 2\n"
        "jedge 0 1\njedge 1 2\njedge 2 0\n"
        "cedge 0 3 2\ncedge 1 3 3\ncedge 2 3 4\n");
    // raising a triangle to 2-connectivity among terminals
    auto rawOpt = opt_augment(raw);
    auto normOpt = opt_augment(normalize(raw));
    CHECK(rawOpt.cost == normOpt.cost);
}

TEST_CASE("solution serialization is canonical") {
    Instance inst = parse_instance(
        "aug undirected edge 0\nnodes 8\nterminals 0 7\ncedge 2 7 5\ncedge 0 3 1\n");
    SECTION("empty solution") {
        Solution s = make_solution(inst, {}, Certificate{});
        std::string out = serialize_solution(s);
        CHECK(out.find("\"cost\":0,\"edges\":[]") != std::string::npos);
        CHECK(out.front() == '{');
        CHECK(serialize_solution(s) == out);
    }
    SECTION("one edge") {
        Solution s = make_solution(inst, {0}, Certificate{});
        std::string out = serialize_solution(s);
        CHECK(out.find("\"cost\":5,\"edges\":[[2,7]]") != std::string::npos);
    }
    SECTION("edges sorted regardless of insertion order") {
        Solution a = make_solution(inst, {0, 1}, Certificate{});
        Solution b = make_solution(inst, {1, 0}, Certificate{});
        CHECK(serialize_solution(a) == serialize_solution(b));
        CHECK(serialize_solution(a).find("[[0,3],[2,7]]") != std::string::npos);
    }
}

TEST_CASE("instance serialization round-trips") {
    std::vector<Instance> cases;
    cases.push_back(cycle5());
    for (uint64_t seed : {1u, 5u, 9u}) {
        GenParams p;
        p.n = 9;
        p.tcount = 4;
        p.k = 1;
        p.seed = seed;
        p.directed = seed % 2;
        p.costModel = seed % 3 ? CostModel::edge : CostModel::node;
        cases.push_back(gen_random(p));
    }
    for (auto& inst : cases) {
        Instance re = parse_instance(serialize_instance(inst));
        CHECK(re == inst);
        CHECK(serialize_instance(re) == serialize_instance(inst));
    }
}

TEST_CASE("node-cost accounting counts incident non-terminals once") {
    Instance inst = parse_instance(
        "aug undirected node 0\n"
        "nodes 5\n"
        "terminals 0 1\n"
        "cedge 0 2 0\ncedge 2 3 0\ncedge 3 1 0\n"
        "ncost 2 5\nncost 3 7\nncost 4 100\n");
    CHECK(inst.accounting_cost({0}) == 5);
    CHECK(inst.accounting_cost({0, 1}) == 12);      // node 2 shared, paid once
    CHECK(inst.accounting_cost({0, 1, 2}) == 12);   // terminals free
}
