#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "swarmplan/network.hpp"

namespace testutil {

using swarmplan::NodeId;
using swarmplan::SkywayNetwork;

inline SkywayNetwork make_net(std::vector<int> pads,
                              std::vector<std::tuple<NodeId, NodeId, double>> edges) {
    std::vector<swarmplan::Edge> list;
    list.reserve(edges.size());
    for (auto& [a, b, km] : edges) list.push_back({a, b, km});
    return SkywayNetwork(std::move(pads), list);
}

/// Independent all-simple-paths enumeration used as an oracle: collects every
/// path recursively and returns them sorted, so nothing about the library's
/// visit order is assumed.
inline void collect_paths(const SkywayNetwork& net, NodeId at, NodeId to,
                          std::set<NodeId>& used, std::vector<NodeId>& prefix,
                          std::vector<std::vector<NodeId>>& out) {
    if (at == to) {
        out.push_back(prefix);
        return;
    }
    // Walk neighbors in reverse to decorrelate from the library's DFS order.
    auto span = net.neighbors(at);
    for (auto it = span.rbegin(); it != span.rend(); ++it) {
        if (used.count(it->to)) continue;
        used.insert(it->to);
        prefix.push_back(it->to);
        collect_paths(net, it->to, to, used, prefix, out);
        prefix.pop_back();
        used.erase(it->to);
    }
}

inline std::vector<std::vector<NodeId>> all_paths_oracle(const SkywayNetwork& net,
                                                         NodeId from, NodeId to) {
    std::vector<std::vector<NodeId>> out;
    std::set<NodeId> used{from};
    std::vector<NodeId> prefix{from};
    collect_paths(net, from, to, used, prefix, out);
    std::sort(out.begin(), out.end());
    return out;
}

inline double path_length(const SkywayNetwork& net, const std::vector<NodeId>& nodes) {
    double km = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        km += *net.edge_km(nodes[i], nodes[i + 1]);
    return km;
}

/// Small random network with integer edge lengths, so distance ties are exact
/// and tie-break assertions are meaningful.
inline SkywayNetwork integer_random_net(std::size_t n, std::size_t extra_edges,
                                        unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    std::set<std::pair<NodeId, NodeId>> have;
    std::uniform_int_distribution<int> km(1, 9);
    for (NodeId v = 1; v < n; ++v) {
        std::uniform_int_distribution<NodeId> pick(0, v - 1);
        NodeId u = pick(rng);
        have.insert({std::min(u, v), std::max(u, v)});
        edges.emplace_back(u, v, km(rng));
    }
    std::uniform_int_distribution<NodeId> any(0, static_cast<NodeId>(n - 1));
    while (edges.size() < n - 1 + extra_edges) {
        NodeId a = any(rng), b = any(rng);
        if (a == b) continue;
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        if (have.count(key)) continue;
        have.insert(key);
        edges.emplace_back(a, b, km(rng));
    }
    return make_net(std::vector<int>(n, 2), edges);
}

}  // namespace testutil
