#pragma once

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <vector>

#include "connaug/instance.hpp"

namespace connaug {

// Zero-cost edge structure the flow machinery runs on: the normalized J, or
// J plus bought edges, or J plus an arbitrary candidate subset.  For
// undirected graphs each pair is an edge; for directed each pair is an arc.
struct GraphView {
    int n = 0;
    bool directed = false;
    std::vector<std::pair<int, int>> arcs;
};

inline GraphView make_view(const Instance& inst) {
    return {inst.n, inst.directed, inst.jedges};
}

inline GraphView with_edges(const Instance& inst, const std::vector<int>& edgeIds) {
    GraphView g = make_view(inst);
    for (int id : edgeIds) g.arcs.push_back({inst.cedges[id].u, inst.cedges[id].v});
    return g;
}

// Priced candidate arc for realization flows.  w carries the model-specific
// per-edge weight (edge cost, or the summed endpoint node costs).
struct CandArc {
    int u = -1, v = -1;
    long long w = 0;
    int id = -1;
};

constexpr long long kInfCap = std::numeric_limits<long long>::max() / 4;

// Node-capacitated network via the standard splitting: node w becomes
// in(w)=2w -> out(w)=2w+1 with a unit internal arc (infinite for the
// endpoints), and every original arc gets infinite capacity.  Unit-flow
// paths then correspond one-to-one to internally-disjoint u->v paths.
struct FlowNetwork {
    struct Arc {
        int to;
        long long cap;
        long long cost;
        int tag;  // candidate edge id, -1 otherwise
    };
    int nodes = 0;
    int source = -1, sink = -1;
    int origN = 0;
    std::vector<Arc> arcs;               // rev arc of i is i^1
    std::vector<std::vector<int>> adj;

    void init(int origNodes, int s, int t) {
        origN = origNodes;
        nodes = 2 * origNodes;
        source = 2 * s + 1;  // out(u)
        sink = 2 * t;        // in(v)
        adj.assign(nodes, {});
    }

    void add_arc(int from, int to, long long cap, long long cost, int tag = -1) {
        adj[from].push_back((int)arcs.size());
        arcs.push_back({to, cap, cost, tag});
        adj[to].push_back((int)arcs.size());
        arcs.push_back({from, 0, -cost, tag});
    }

    long long flow_on(int i) const { return arcs[i ^ 1].cap; }
};

inline int split_in(int v) { return 2 * v; }
inline int split_out(int v) { return 2 * v + 1; }

inline FlowNetwork build_split_network(const GraphView& g, int u, int v,
                                       const std::vector<CandArc>& cands = {},
                                       const std::vector<std::pair<int, int>>& infArcs = {},
                                       long long costScale = 0) {
    FlowNetwork net;
    net.init(g.n, u, v);
    for (int w = 0; w < g.n; ++w) {
        long long cap = (w == u || w == v) ? kInfCap : 1;
        net.add_arc(split_in(w), split_out(w), cap, 0);
    }
    auto add_orig = [&](int a, int b, long long cap, long long cost, int tag) {
        if (a == v || b == u) return;  // arcs into the source / out of the sink carry no s-t flow
        net.add_arc(split_out(a), split_in(b), cap, cost, tag);
    };
    for (auto& [a, b] : g.arcs) {
        // non-direct arcs are uncuttable so min cuts consist of node splits;
        // a direct edge between the endpoints carries exactly one path
        add_orig(a, b, (a == u && b == v) ? 1 : kInfCap, 0, -1);
        if (!g.directed) add_orig(b, a, (b == u && a == v) ? 1 : kInfCap, 0, -1);
    }
    for (auto& [a, b] : infArcs) {
        add_orig(a, b, kInfCap, 0, -1);
        if (!g.directed) add_orig(b, a, kInfCap, 0, -1);
    }
    for (auto& c : cands) {
        long long cost = costScale > 0 ? c.w * costScale + 1 : 0;
        add_orig(c.u, c.v, 1, cost, c.id);
        if (!g.directed) add_orig(c.v, c.u, 1, cost, c.id);
    }
    return net;
}

struct MaxflowResult {
    long long value = 0;
    std::vector<int> cutNodes;         // source-minimal cut; empty when value hit the limit
    std::vector<int> sourceSideNodes;  // inclusion-minimal source side (inner part)
    std::vector<int> sinkSideNodes;    // inclusion-minimal sink side
    std::vector<int> sinkCutNodes;     // the cut certified by the sink side
    long long edgeCut = 0;             // direct endpoint-to-endpoint arcs in the cut
};

namespace detail {

inline bool bfs_augment(FlowNetwork& net, long long pushLimit, long long& pushed) {
    std::vector<int> pre(net.nodes, -1);
    std::deque<int> q{net.source};
    std::vector<char> seen(net.nodes, 0);
    seen[net.source] = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        if (x == net.sink) break;
        for (int ai : net.adj[x]) {
            const auto& a = net.arcs[ai];
            if (a.cap > 0 && !seen[a.to]) {
                seen[a.to] = 1;
                pre[a.to] = ai;
                q.push_back(a.to);
            }
        }
    }
    if (!seen[net.sink]) return false;
    long long bott = pushLimit;
    for (int x = net.sink; x != net.source;) {
        int ai = pre[x];
        bott = std::min(bott, net.arcs[ai].cap);
        x = net.arcs[ai ^ 1].to;
    }
    for (int x = net.sink; x != net.source;) {
        int ai = pre[x];
        net.arcs[ai].cap -= bott;
        net.arcs[ai ^ 1].cap += bott;
        x = net.arcs[ai ^ 1].to;
    }
    pushed = bott;
    return true;
}

inline std::vector<char> residual_reachable(const FlowNetwork& net) {
    std::vector<char> seen(net.nodes, 0);
    std::deque<int> q{net.source};
    seen[net.source] = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int ai : net.adj[x]) {
            const auto& a = net.arcs[ai];
            if (a.cap > 0 && !seen[a.to]) {
                seen[a.to] = 1;
                q.push_back(a.to);
            }
        }
    }
    return seen;
}

inline std::vector<char> reverse_residual_reachable(const FlowNetwork& net) {
    // nodes that can reach the sink in the residual graph
    std::vector<char> seen(net.nodes, 0);
    std::deque<int> q{net.sink};
    seen[net.sink] = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int ai : net.adj[x]) {
            // arc (x -> to) reversed means to -> x exists with cap arcs[ai^1].cap
            if (net.arcs[ai ^ 1].cap > 0 && !seen[net.arcs[ai].to]) {
                seen[net.arcs[ai].to] = 1;
                q.push_back(net.arcs[ai].to);
            }
        }
    }
    return seen;
}

}  // namespace detail

// Max flow up to `limit`.  When the limit is not reached both certified
// minimum node cuts are extracted: the source-minimal one (residual
// reachability) and the sink-minimal one (reverse residual reachability).
inline MaxflowResult max_flow(FlowNetwork& net, long long limit) {
    MaxflowResult res;
    while (res.value < limit) {
        long long pushed = 0;
        if (!detail::bfs_augment(net, limit - res.value, pushed)) break;
        res.value += pushed;
    }
    if (res.value >= limit) return res;

    auto seen = detail::residual_reachable(net);
    for (int w = 0; w < net.origN; ++w) {
        bool in = seen[split_in(w)], out = seen[split_out(w)];
        if (out) res.sourceSideNodes.push_back(w);
        else if (in) res.cutNodes.push_back(w);
    }
    // crossing non-internal arcs are saturated direct edges between the endpoints
    auto edge_crossings = [&](const std::vector<char>& side) {
        long long total = 0;
        for (size_t i = 0; i < net.arcs.size(); i += 2) {
            int tail = net.arcs[i ^ 1].to, head = net.arcs[i].to;
            if (tail / 2 == head / 2) continue;  // internal split arc
            if (side[tail] && !side[head]) total += net.flow_on((int)i);
        }
        return total;
    };
    res.edgeCut = edge_crossings(seen);
    assert((long long)res.cutNodes.size() + res.edgeCut == res.value);

    auto rseen = detail::reverse_residual_reachable(net);
    for (int w = 0; w < net.origN; ++w) {
        bool in = rseen[split_in(w)], out = rseen[split_out(w)];
        if (in) res.sinkSideNodes.push_back(w);
        else if (out) res.sinkCutNodes.push_back(w);
    }
#ifndef NDEBUG
    {
        std::vector<char> notR(rseen.size());
        for (size_t i = 0; i < rseen.size(); ++i) notR[i] = !rseen[i];
        assert((long long)res.sinkCutNodes.size() + edge_crossings(notR) == res.value);
    }
#endif
    return res;
}

// Internally-disjoint path count between u and v, parallel direct edges each
// counting as one path.  limit < 0 means unbounded.
inline int local_conn_view(const GraphView& g, int u, int v, long long limit = -1,
                           const std::vector<std::pair<int, int>>& infArcs = {}) {
    if (limit < 0) limit = (long long)g.arcs.size() + (long long)infArcs.size() + 1;
    FlowNetwork net = build_split_network(g, u, v, {}, infArcs);
    long long val = 0;
    while (val < limit) {
        long long pushed = 0;
        if (!detail::bfs_augment(net, limit - val, pushed)) break;
        val += pushed;
    }
    return (int)std::min<long long>(val, std::numeric_limits<int>::max());
}

struct QConnectResult {
    std::vector<int> edges;  // candidate ids, ascending
    long long cost = 0;      // sum of the candidate weights actually kept
};

// Minimum-weight candidate subset F such that the zero-cost graph plus F has
// q internally-disjoint u->v paths, by successive shortest path min-cost
// flow.  Weights are integral; ties favor fewer candidate arcs, so a
// sufficient zero-cost graph yields the empty set.  Greedy reverse-delete
// drops candidates no routing still needs.
inline QConnectResult min_cost_q_connect(const GraphView& g, const std::vector<CandArc>& cands,
                                         int u, int v, int q,
                                         const std::vector<std::pair<int, int>>& infArcs = {}) {
    long long scale = 2 * (long long)cands.size() + 2;
    FlowNetwork net = build_split_network(g, u, v, cands, infArcs, scale);
    const long long INFC = std::numeric_limits<long long>::max() / 2;
    for (int it = 0; it < q; ++it) {
        // Bellman-Ford over the residual graph; graphs are tiny and reverse
        // arcs go negative, so no potentials needed.
        std::vector<long long> dist(net.nodes, INFC);
        std::vector<int> pre(net.nodes, -1);
        dist[net.source] = 0;
        for (int round = 0; round < net.nodes; ++round) {
            bool changed = false;
            for (int x = 0; x < net.nodes; ++x) {
                if (dist[x] == INFC) continue;
                for (int ai : net.adj[x]) {
                    const auto& a = net.arcs[ai];
                    if (a.cap > 0 && dist[x] + a.cost < dist[a.to]) {
                        dist[a.to] = dist[x] + a.cost;
                        pre[a.to] = ai;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        if (dist[net.sink] == INFC)
            throw InfeasibleError("no " + std::to_string(q) + " disjoint paths available for pair (" +
                                      std::to_string(u) + "," + std::to_string(v) + ")",
                                  u, v);
        for (int x = net.sink; x != net.source;) {
            int ai = pre[x];
            net.arcs[ai].cap -= 1;
            net.arcs[ai ^ 1].cap += 1;
            x = net.arcs[ai ^ 1].to;
        }
    }

    // Decompose the flow into q source->sink walks; leftover circulation (if
    // any) is discarded so only path-supporting candidates are bought.
    std::vector<long long> flow(net.arcs.size(), 0);
    for (size_t i = 0; i < net.arcs.size(); i += 2) flow[i] = net.flow_on((int)i);
    std::set<int> kept;
    for (int path = 0; path < q; ++path) {
        int x = net.source;
        while (x != net.sink) {
            int chosen = -1;
            for (int ai : net.adj[x]) {
                if (ai % 2 == 0 && flow[ai] > 0) {
                    chosen = ai;
                    break;
                }
            }
            assert(chosen >= 0 && "flow decomposition ran dry");
            flow[chosen] -= 1;
            if (net.arcs[chosen].tag >= 0) kept.insert(net.arcs[chosen].tag);
            x = net.arcs[chosen].to;
        }
    }

    std::map<int, const CandArc*> byId;
    for (auto& c : cands) byId[c.id] = &c;
    std::vector<int> selected(kept.begin(), kept.end());

    // reverse-delete, heaviest first
    std::vector<int> order = selected;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::make_pair(byId[a]->w, a) > std::make_pair(byId[b]->w, b);
    });
    std::set<int> live(selected.begin(), selected.end());
    for (int id : order) {
        GraphView gtest = g;
        for (int other : live)
            if (other != id) gtest.arcs.push_back({byId[other]->u, byId[other]->v});
        if (local_conn_view(gtest, u, v, q, infArcs) >= q) live.erase(id);
    }
    QConnectResult out;
    for (int id : selected)
        if (live.count(id)) {
            out.edges.push_back(id);
            out.cost += byId[id]->w;
        }
    return out;
}

}  // namespace connaug
