#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace connaug {

enum class CostModel { edge, node };

struct CandEdge {
    int u = -1, v = -1;
    long long cost = 0;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int ln, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

// keeps scaled flow costs and rational budgets inside 64 bits
constexpr long long kMaxCost = 1'000'000'000'000LL;

struct InfeasibleError : std::runtime_error {
    int u = -1, v = -1;
    InfeasibleError(const std::string& msg, int uu = -1, int vv = -1)
        : std::runtime_error(msg), u(uu), v(vv) {}
};

// Problem input: a graph whose zero-cost subgraph J already makes the
// terminal set T k-connected, plus priced candidate edges for raising the
// terminal connectivity to k+1.  Immutable after construction.
struct Instance {
    bool directed = false;
    CostModel costModel = CostModel::edge;
    int k = 0;
    int n = 0;
    std::vector<int> terminals;                 // sorted, distinct
    std::vector<std::pair<int, int>> jedges;    // multiset, declaration order
    std::vector<CandEdge> cedges;
    std::vector<long long> nodeCost;            // size n when costModel==node

    int tcount() const { return (int)terminals.size(); }

    bool is_terminal(int v) const {
        return std::binary_search(terminals.begin(), terminals.end(), v);
    }

    // index of v in the sorted terminal list, -1 if not a terminal
    int tindex(int v) const {
        auto it = std::lower_bound(terminals.begin(), terminals.end(), v);
        if (it == terminals.end() || *it != v) return -1;
        return (int)(it - terminals.begin());
    }

    long long node_cost(int v) const {
        if (costModel != CostModel::node) return 0;
        if (is_terminal(v)) return 0;
        return v < (int)nodeCost.size() ? nodeCost[v] : 0;
    }

    // Solution cost for a set of candidate-edge indices.  Edge model: sum of
    // edge costs.  Node model: each non-terminal node incident to at least
    // one selected edge is paid once; terminals are free.
    long long accounting_cost(const std::vector<int>& ids) const {
        if (costModel == CostModel::edge) {
            long long c = 0;
            for (int id : ids) c += cedges[id].cost;
            return c;
        }
        std::set<int> touched;
        for (int id : ids) {
            touched.insert(cedges[id].u);
            touched.insert(cedges[id].v);
        }
        long long c = 0;
        for (int v : touched) c += node_cost(v);
        return c;
    }

    bool operator==(const Instance& o) const {
        return directed == o.directed && costModel == o.costModel && k == o.k && n == o.n &&
               terminals == o.terminals && jedges == o.jedges &&
               nodeCost == o.nodeCost &&
               cedges.size() == o.cedges.size() &&
               std::equal(cedges.begin(), cedges.end(), o.cedges.begin(),
                          [](const CandEdge& a, const CandEdge& b) {
                              return a.u == b.u && a.v == b.v && a.cost == b.cost;
                          });
    }
};

struct Certificate {
    long long gadget_cost = 0;
    int phase1_edges = 0;
    int phase2_edges = 0;
    int stars = 0;
    int rooted_calls = 0;
    long long bound_num = 0;
    long long bound_den = 1;
    bool repair_used = false;
    bool oracle = false;
    std::string rooted_solver;
    long long rho = 0;
};

struct Solution {
    std::vector<std::pair<int, int>> edges;  // sorted lexicographically
    long long cost = 0;
    Certificate cert;
};

namespace detail {

inline std::pair<int, int> canon_edge(bool directed, int u, int v) {
    if (!directed && u > v) std::swap(u, v);
    return {u, v};
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
    Instance inst;
    bool sawHeader = false, sawNodes = false, sawTerminals = false;
    std::set<std::pair<int, int>> jset;  // canonical endpoint pairs of J
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    std::vector<std::pair<int, long long>> ncosts;

    auto checkNode = [&](int v, int lnum) {
        if (!sawNodes) throw ParseError(lnum, "node id before 'nodes' declaration");
        if (v < 0 || v >= inst.n) throw ParseError(lnum, "node id out of range: " + std::to_string(v));
    };

    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "aug") {
            if (sawHeader) throw ParseError(ln, "duplicate header");
            std::string dir, model;
            long long k;
            if (!(ls >> dir >> model >> k)) throw ParseError(ln, "malformed header");
            if (dir == "directed") inst.directed = true;
            else if (dir == "undirected") inst.directed = false;
            else throw ParseError(ln, "expected directed|undirected, got '" + dir + "'");
            if (model == "edge") inst.costModel = CostModel::edge;
            else if (model == "node") inst.costModel = CostModel::node;
            else throw ParseError(ln, "expected edge|node, got '" + model + "'");
            if (k < 0) throw ParseError(ln, "k must be non-negative");
            inst.k = (int)k;
            sawHeader = true;
        } else if (kw == "nodes") {
            if (!sawHeader) throw ParseError(ln, "'nodes' before header");
            if (sawNodes) throw ParseError(ln, "duplicate 'nodes'");
            long long n;
            if (!(ls >> n) || n <= 0) throw ParseError(ln, "malformed node count");
            inst.n = (int)n;
            sawNodes = true;
        } else if (kw == "terminals") {
            if (sawTerminals) throw ParseError(ln, "duplicate 'terminals'");
            int v;
            while (ls >> v) {
                checkNode(v, ln);
                inst.terminals.push_back(v);
            }
            sawTerminals = true;
            std::sort(inst.terminals.begin(), inst.terminals.end());
            if (std::adjacent_find(inst.terminals.begin(), inst.terminals.end()) != inst.terminals.end())
                throw ParseError(ln, "repeated terminal id");
            if ((int)inst.terminals.size() < inst.k + 1)
                throw ParseError(ln, "at least k+1 terminals required");
        } else if (kw == "jedge") {
            int u, v;
            if (!(ls >> u >> v)) throw ParseError(ln, "malformed jedge");
            checkNode(u, ln);
            checkNode(v, ln);
            if (u == v) throw ParseError(ln, "self-loop rejected");
            inst.jedges.push_back({u, v});
            jset.insert(detail::canon_edge(inst.directed, u, v));
        } else if (kw == "cedge") {
            int u, v;
            long long c;
            if (!(ls >> u >> v >> c)) throw ParseError(ln, "malformed cedge");
            checkNode(u, ln);
            checkNode(v, ln);
            if (u == v) throw ParseError(ln, "self-loop rejected");
            if (c < 0) throw ParseError(ln, "negative cost");
            if (c > kMaxCost) throw ParseError(ln, "cost too large");
            if (jset.count(detail::canon_edge(inst.directed, u, v)))
                throw ParseError(ln, "candidate edge duplicates a zero-cost edge");
            inst.cedges.push_back({u, v, c});
        } else if (kw == "ncost") {
            if (!sawHeader) throw ParseError(ln, "'ncost' before header");
            if (inst.costModel != CostModel::node)
                throw ParseError(ln, "'ncost' only valid for the node cost model");
            int v;
            long long c;
            if (!(ls >> v >> c)) throw ParseError(ln, "malformed ncost");
            checkNode(v, ln);
            if (c < 0) throw ParseError(ln, "negative cost");
            if (c > kMaxCost) throw ParseError(ln, "cost too large");
            ncosts.push_back({v, c});
        } else {
            throw ParseError(ln, "unknown keyword '" + kw + "'");
        }
    }
    if (!sawHeader) throw ParseError(ln, "missing header");
    if (!sawNodes) throw ParseError(ln, "missing 'nodes'");
    if (!sawTerminals || (int)inst.terminals.size() < inst.k + 1)
        throw ParseError(ln, "at least k+1 terminals required");
    if (inst.costModel == CostModel::node) {
        inst.nodeCost.assign(inst.n, 0);
        for (auto& [v, c] : ncosts) inst.nodeCost[v] = c;
    }
    return inst;
}

inline std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << "aug " << (inst.directed ? "directed" : "undirected") << ' '
        << (inst.costModel == CostModel::edge ? "edge" : "node") << ' ' << inst.k << '\n';
    out << "nodes " << inst.n << '\n';
    out << "terminals";
    for (int t : inst.terminals) out << ' ' << t;
    out << '\n';
    for (auto& [u, v] : inst.jedges) out << "jedge " << u << ' ' << v << '\n';
    for (auto& e : inst.cedges) out << "cedge " << e.u << ' ' << e.v << ' ' << e.cost << '\n';
    if (inst.costModel == CostModel::node) {
        for (int v = 0; v < inst.n; ++v)
            if (inst.nodeCost[v] != 0) out << "ncost " << v << ' ' << inst.nodeCost[v] << '\n';
    }
    return out.str();
}

// Subdivides every zero-cost edge joining two terminals through a fresh
// non-terminal node, so T becomes an independent set in J.  Fresh nodes are
// appended at the end in J-edge declaration order.  Candidate edges are
// untouched.  Connectivity validation is separate (see verify.hpp).
inline Instance normalize(const Instance& in) {
    Instance out = in;
    std::vector<std::pair<int, int>> newJ;
    for (auto& [u, v] : in.jedges) {
        if (in.is_terminal(u) && in.is_terminal(v)) {
            int w = out.n++;
            newJ.push_back({u, w});
            newJ.push_back({w, v});
        } else {
            newJ.push_back({u, v});
        }
    }
    out.jedges = std::move(newJ);
    if (out.costModel == CostModel::node) out.nodeCost.resize(out.n, 0);
    return out;
}

inline nlohmann::json solution_to_json(const Solution& sol) {
    nlohmann::json j;
    j["cost"] = sol.cost;
    auto edges = nlohmann::json::array();
    for (auto& [u, v] : sol.edges) edges.push_back({u, v});
    j["edges"] = edges;
    nlohmann::json c;
    if (sol.cert.oracle) {
        c["oracle"] = true;
    } else {
        c["gadget_cost"] = sol.cert.gadget_cost;
        c["phase1_edges"] = sol.cert.phase1_edges;
        c["phase2_edges"] = sol.cert.phase2_edges;
        c["stars"] = sol.cert.stars;
        c["rooted_calls"] = sol.cert.rooted_calls;
        c["bound_value_num"] = sol.cert.bound_num;
        c["bound_value_den"] = sol.cert.bound_den;
        c["repair_used"] = sol.cert.repair_used;
        c["rooted_solver"] = sol.cert.rooted_solver;
        c["rho"] = sol.cert.rho;
    }
    j["certificate"] = c;
    return j;
}

// Deterministic, key-sorted JSON document; edges sorted lexicographically.
inline std::string serialize_solution(const Solution& sol) {
    Solution s = sol;
    std::sort(s.edges.begin(), s.edges.end());
    return solution_to_json(s).dump();
}

inline Solution parse_solution(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Solution s;
    s.cost = j.at("cost").get<long long>();
    for (auto& e : j.at("edges")) s.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    if (j.contains("certificate")) {
        auto& c = j["certificate"];
        if (c.contains("oracle")) s.cert.oracle = c["oracle"].get<bool>();
        if (c.contains("repair_used")) s.cert.repair_used = c["repair_used"].get<bool>();
    }
    return s;
}

// Resolves solution edge pairs back to candidate indices; parallel candidates
// with the same endpoints are taken cheapest first.
inline std::vector<int> resolve_edge_ids(const Instance& inst,
                                         const std::vector<std::pair<int, int>>& pairs) {
    std::map<std::pair<int, int>, std::vector<int>> byPair;
    for (int i = 0; i < (int)inst.cedges.size(); ++i)
        byPair[detail::canon_edge(inst.directed, inst.cedges[i].u, inst.cedges[i].v)].push_back(i);
    for (auto& [p, ids] : byPair)
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return std::make_pair(inst.cedges[a].cost, a) < std::make_pair(inst.cedges[b].cost, b);
        });
    std::map<std::pair<int, int>, size_t> used;
    std::vector<int> out;
    for (auto& pr : pairs) {
        auto key = detail::canon_edge(inst.directed, pr.first, pr.second);
        auto it = byPair.find(key);
        size_t& k = used[key];
        if (it == byPair.end() || k >= it->second.size())
            throw std::runtime_error("solution edge not in candidate set: (" +
                                     std::to_string(pr.first) + "," + std::to_string(pr.second) + ")");
        out.push_back(it->second[k++]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Solution make_solution(const Instance& inst, std::vector<int> edgeIds, Certificate cert) {
    std::sort(edgeIds.begin(), edgeIds.end());
    edgeIds.erase(std::unique(edgeIds.begin(), edgeIds.end()), edgeIds.end());
    Solution s;
    for (int id : edgeIds) s.edges.push_back({inst.cedges[id].u, inst.cedges[id].v});
    std::sort(s.edges.begin(), s.edges.end());
    s.cost = inst.accounting_cost(edgeIds);
    s.cert = std::move(cert);
    return s;
}

}  // namespace connaug
