#include "swarmplan/network.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace swarmplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string node_str(NodeId n) { return std::to_string(n); }

}  // namespace

SkywayNetwork::SkywayNetwork(std::vector<int> pads, const std::vector<Edge>& edges)
    : pads_(std::move(pads)) {
    if (pads_.empty())
        throw ValidationError("network must contain at least one node");
    for (std::size_t i = 0; i < pads_.size(); ++i) {
        if (pads_[i] < 1)
            throw ValidationError("pad_count < 1 at node " + std::to_string(i));
    }

    adj_.resize(pads_.size());
    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
        if (!has_node(e.a) || !has_node(e.b))
            throw ValidationError("edge endpoint out of range: (" + node_str(e.a) +
                                  ", " + node_str(e.b) + ")");
        if (e.a == e.b)
            throw ValidationError("self-loop at node " + node_str(e.a));
        if (!(e.km > 0.0))
            throw ValidationError("nonpositive distance on edge (" + node_str(e.a) +
                                  ", " + node_str(e.b) + ")");
        Edge canon{std::min(e.a, e.b), std::max(e.a, e.b), e.km};
        edges_.push_back(canon);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].a == edges_[i - 1].a && edges_[i].b == edges_[i - 1].b)
            throw ValidationError("duplicate edge (" + node_str(edges_[i].a) + ", " +
                                  node_str(edges_[i].b) + ")");
    }
    for (const Edge& e : edges_) {
        adj_[e.a].push_back({e.b, e.km});
        adj_[e.b].push_back({e.a, e.km});
    }
    for (auto& list : adj_)
        std::sort(list.begin(), list.end(),
                  [](const EdgeRef& x, const EdgeRef& y) { return x.to < y.to; });

    // Connectivity (BFS from node 0).
    std::vector<char> seen(pads_.size(), 0);
    std::queue<NodeId> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop();
        for (const EdgeRef& e : adj_[u]) {
            if (!seen[e.to]) {
                seen[e.to] = 1;
                ++reached;
                frontier.push(e.to);
            }
        }
    }
    if (reached != pads_.size())
        throw ValidationError("disconnected network: " +
                              std::to_string(pads_.size() - reached) +
                              " node(s) unreachable from node 0");
}

void SkywayNetwork::check_node(NodeId node) const {
    if (!has_node(node))
        throw UnknownNode("unknown node " + node_str(node));
}

int SkywayNetwork::pad_count(NodeId node) const {
    check_node(node);
    return pads_[node];
}

std::span<const EdgeRef> SkywayNetwork::neighbors(NodeId node) const {
    check_node(node);
    return adj_[node];
}

std::optional<double> SkywayNetwork::edge_km(NodeId a, NodeId b) const {
    check_node(a);
    check_node(b);
    for (const EdgeRef& e : adj_[a])
        if (e.to == b) return e.km;
    return std::nullopt;
}

bool SkywayNetwork::operator==(const SkywayNetwork& other) const {
    if (pads_ != other.pads_ || edges_.size() != other.edges_.size()) return false;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].a != other.edges_[i].a || edges_[i].b != other.edges_[i].b ||
            edges_[i].km != other.edges_[i].km)
            return false;
    }
    return true;
}

std::vector<double> shortest_distances(const SkywayNetwork& net, NodeId from) {
    if (!net.has_node(from))
        throw UnknownNode("unknown node " + node_str(from));
    std::vector<double> dist(net.node_count(), kInf);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[from] = 0.0;
    heap.push({0.0, from});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const EdgeRef& e : net.neighbors(u)) {
            double nd = d + e.km;
            if (nd < dist[e.to]) {
                dist[e.to] = nd;
                heap.push({nd, e.to});
            }
        }
    }
    return dist;
}

std::vector<int> hop_distances(const SkywayNetwork& net, NodeId from) {
    if (!net.has_node(from))
        throw UnknownNode("unknown node " + node_str(from));
    std::vector<int> hops(net.node_count(), -1);
    std::queue<NodeId> frontier;
    hops[from] = 0;
    frontier.push(from);
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop();
        for (const EdgeRef& e : net.neighbors(u)) {
            if (hops[e.to] < 0) {
                hops[e.to] = hops[u] + 1;
                frontier.push(e.to);
            }
        }
    }
    return hops;
}

ShortestPathResult shortest_path(const SkywayNetwork& net, NodeId from, NodeId to) {
    if (!net.has_node(from)) throw UnknownNode("unknown node " + node_str(from));
    if (!net.has_node(to)) throw UnknownNode("unknown node " + node_str(to));

    ShortestPathResult result;
    if (from == to) {
        result.path.nodes = {from};
        result.distance_km = 0.0;
        return result;
    }

    // Distances toward the destination, then a greedy forward walk that always
    // takes the smallest next node still on a shortest path. This yields the
    // lexicographically smallest minimum-distance node sequence.
    std::vector<double> to_dest = shortest_distances(net, to);
    result.distance_km = to_dest[from];
    NodeId current = from;
    result.path.nodes.push_back(current);
    while (current != to) {
        NodeId best = current;
        double best_through = kInf;
        for (const EdgeRef& e : net.neighbors(current)) {
            double through = e.km + to_dest[e.to];
            if (through < best_through) {
                best_through = through;
                best = e.to;
            }
        }
        current = best;
        result.path.nodes.push_back(current);
    }
    return result;
}

std::vector<LookaheadNeighbor> neighbors_within_lookahead(const SkywayNetwork& net,
                                                          NodeId from, int lookahead) {
    if (lookahead < 0)
        throw InvalidParameter("lookahead must be >= 0");
    std::vector<int> hops = hop_distances(net, from);
    std::vector<double> dist = shortest_distances(net, from);
    std::vector<LookaheadNeighbor> out;
    for (NodeId n = 0; n < net.node_count(); ++n) {
        if (n == from) continue;
        if (hops[n] >= 1 && hops[n] <= lookahead + 1)
            out.push_back({n, dist[n]});
    }
    return out;  // ascending node id by construction
}

namespace {

void dfs_paths(const SkywayNetwork& net, NodeId current, NodeId to,
               std::vector<NodeId>& stack, std::vector<char>& on_stack,
               std::size_t max_paths, std::vector<Path>& out) {
    if (current == to) {
        if (out.size() >= max_paths)
            throw PathBudgetExceeded("more than " + std::to_string(max_paths) +
                                         " simple paths",
                                     out);
        out.push_back(Path{stack});
        return;
    }
    for (const EdgeRef& e : net.neighbors(current)) {
        if (on_stack[e.to]) continue;
        on_stack[e.to] = 1;
        stack.push_back(e.to);
        dfs_paths(net, e.to, to, stack, on_stack, max_paths, out);
        stack.pop_back();
        on_stack[e.to] = 0;
    }
}

}  // namespace

std::vector<Path> enumerate_simple_paths(const SkywayNetwork& net, NodeId from,
                                         NodeId to, std::size_t max_paths) {
    if (!net.has_node(from)) throw UnknownNode("unknown node " + node_str(from));
    if (!net.has_node(to)) throw UnknownNode("unknown node " + node_str(to));
    if (max_paths == 0)
        throw InvalidParameter("max_paths must be positive");
    std::vector<Path> out;
    std::vector<NodeId> stack{from};
    std::vector<char> on_stack(net.node_count(), 0);
    on_stack[from] = 1;
    dfs_paths(net, from, to, stack, on_stack, max_paths, out);
    return out;
}

// --- JSON I/O -------------------------------------------------------------

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed)
            if (it.key() == key) ok = true;
        if (!ok)
            throw ParseError("unknown field \"" + it.key() + "\" in " + context);
    }
}

std::int64_t require_int(const json& obj, const char* key, const std::string& context) {
    if (!obj.contains(key))
        throw ParseError("missing field \"" + std::string(key) + "\" in " + context);
    if (!obj[key].is_number_integer())
        throw ParseError("field \"" + std::string(key) + "\" in " + context +
                         " must be an integer");
    return obj[key].get<std::int64_t>();
}

double require_number(const json& obj, const char* key, const std::string& context) {
    if (!obj.contains(key))
        throw ParseError("missing field \"" + std::string(key) + "\" in " + context);
    if (!obj[key].is_number())
        throw ParseError("field \"" + std::string(key) + "\" in " + context +
                         " must be a number");
    return obj[key].get<double>();
}

}  // namespace

SkywayNetwork load_network(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("network document must be a JSON object");
    reject_unknown_fields(doc, {"nodes", "edges"}, "network document");
    if (!doc.contains("nodes") || !doc["nodes"].is_array())
        throw ParseError("network document needs a \"nodes\" array");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw ParseError("network document needs an \"edges\" array");

    const json& nodes = doc["nodes"];
    std::vector<int> pads(nodes.size(), 0);
    std::vector<char> seen(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::string ctx = "nodes[" + std::to_string(i) + "]";
        if (!nodes[i].is_object()) throw ParseError(ctx + " must be an object");
        reject_unknown_fields(nodes[i], {"id", "pads"}, ctx);
        std::int64_t id = require_int(nodes[i], "id", ctx);
        std::int64_t pad = require_int(nodes[i], "pads", ctx);
        if (id < 0 || static_cast<std::size_t>(id) >= nodes.size())
            throw ValidationError("node ids must form the dense range [0, " +
                                  std::to_string(nodes.size()) + "); got " +
                                  std::to_string(id));
        if (seen[static_cast<std::size_t>(id)])
            throw ValidationError("duplicate node id " + std::to_string(id));
        seen[static_cast<std::size_t>(id)] = 1;
        if (pad < 1)
            throw ValidationError("pad_count < 1 at node " + std::to_string(id));
        pads[static_cast<std::size_t>(id)] = static_cast<int>(pad);
    }

    std::vector<Edge> edges;
    const json& jedges = doc["edges"];
    edges.reserve(jedges.size());
    for (std::size_t i = 0; i < jedges.size(); ++i) {
        std::string ctx = "edges[" + std::to_string(i) + "]";
        if (!jedges[i].is_object()) throw ParseError(ctx + " must be an object");
        reject_unknown_fields(jedges[i], {"a", "b", "km"}, ctx);
        std::int64_t a = require_int(jedges[i], "a", ctx);
        std::int64_t b = require_int(jedges[i], "b", ctx);
        double km = require_number(jedges[i], "km", ctx);
        if (a < 0 || static_cast<std::size_t>(a) >= nodes.size() || b < 0 ||
            static_cast<std::size_t>(b) >= nodes.size())
            throw ValidationError(ctx + " references an unknown node");
        edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), km});
    }
    return SkywayNetwork(std::move(pads), edges);
}

SkywayNetwork load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open network file: " + path);
    return load_network(in);
}

void save_network(const SkywayNetwork& net, std::ostream& out) {
    json doc;
    doc["nodes"] = json::array();
    for (NodeId n = 0; n < net.node_count(); ++n)
        doc["nodes"].push_back({{"id", n}, {"pads", net.pad_count(n)}});
    doc["edges"] = json::array();
    for (const Edge& e : net.edges())
        doc["edges"].push_back({{"a", e.a}, {"b", e.b}, {"km", e.km}});
    out << doc.dump(2) << '\n';
}

std::string network_to_json(const SkywayNetwork& net) {
    std::ostringstream out;
    save_network(net, out);
    return out.str();
}

SkywayNetwork generate_random_network(const RandomNetworkParams& p, std::uint64_t seed) {
    if (p.node_count < 2)
        throw InvalidParameter("node_count must be >= 2");
    if (!(p.edge_density >= 0.0 && p.edge_density <= 1.0))
        throw InvalidParameter("edge_density must lie in [0, 1]");
    if (p.pad_min < 1 || p.pad_min > p.pad_max)
        throw InvalidParameter("pad range is empty or below 1");
    if (!(p.dist_min_km > 0.0) || p.dist_min_km > p.dist_max_km)
        throw InvalidParameter("distance range is empty or nonpositive");

    std::mt19937_64 rng(seed);
    const std::size_t n = p.node_count;

    // Random spanning tree plus shuffled non-tree pairs up to the target
    // density. Attachment is biased to recently added nodes: road-derived
    // skyway networks are elongated, not hub-and-spoke, and a recency window
    // reproduces that stringy shape.
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::shuffle(order.begin(), order.end(), rng);

    constexpr std::size_t kAttachWindow = 3;
    std::vector<char> is_edge(n * n, 0);
    auto mark = [&](NodeId a, NodeId b) { is_edge[a * n + b] = is_edge[b * n + a] = 1; };
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t lo = i > kAttachWindow ? i - kAttachWindow : 0;
        std::uniform_int_distribution<std::size_t> pick(lo, i - 1);
        NodeId a = order[i];
        NodeId b = order[pick(rng)];
        pairs.emplace_back(std::min(a, b), std::max(a, b));
        mark(a, b);
    }

    const std::size_t all_pairs = n * (n - 1) / 2;
    std::size_t target = static_cast<std::size_t>(p.edge_density * all_pairs + 0.5);
    target = std::clamp(target, n - 1, all_pairs);

    // Extra edges prefer pairs already close in the tree. Road redundancy is
    // local (parallel streets, blocks); long chords would collapse the
    // network's elongated shape.
    std::vector<std::vector<NodeId>> tree_adj(n);
    for (const auto& [a, b] : pairs) {
        tree_adj[a].push_back(b);
        tree_adj[b].push_back(a);
    }
    auto tree_hops_from = [&](NodeId start) {
        std::vector<int> hops(n, -1);
        std::vector<NodeId> frontier{start};
        hops[start] = 0;
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            NodeId u = frontier[head];
            for (NodeId v : tree_adj[u])
                if (hops[v] < 0) {
                    hops[v] = hops[u] + 1;
                    frontier.push_back(v);
                }
        }
        return hops;
    };
    std::vector<std::pair<NodeId, NodeId>> near, far;
    for (NodeId a = 0; a < n; ++a) {
        std::vector<int> hops = tree_hops_from(a);
        for (NodeId b = a + 1; b < n; ++b) {
            if (is_edge[a * n + b]) continue;
            (hops[b] <= 3 ? near : far).emplace_back(a, b);
        }
    }
    std::shuffle(near.begin(), near.end(), rng);
    std::shuffle(far.begin(), far.end(), rng);
    for (std::size_t i = 0; i < near.size() && pairs.size() < target; ++i)
        pairs.push_back(near[i]);
    for (std::size_t i = 0; i < far.size() && pairs.size() < target; ++i)
        pairs.push_back(far[i]);

    std::uniform_int_distribution<int> pad_dist(p.pad_min, p.pad_max);
    std::vector<int> pads(n);
    for (std::size_t i = 0; i < n; ++i) pads[i] = pad_dist(rng);

    // Fixed draw order: sort pairs first so distances do not depend on the
    // tree/extra interleaving.
    std::sort(pairs.begin(), pairs.end());
    std::uniform_real_distribution<double> dist_dist(p.dist_min_km, p.dist_max_km);
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) edges.push_back({a, b, dist_dist(rng)});

    return SkywayNetwork(std::move(pads), edges);
}

}  // namespace swarmplan
