#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarmplan/errors.hpp"

namespace swarmplan {

/// Dense node index in [0, node_count).
using NodeId = std::uint32_t;

/// Adjacency entry: neighbor id plus segment length.
struct EdgeRef {
    NodeId to;
    double km;
};

/// One undirected segment, stored with a < b.
struct Edge {
    NodeId a;
    NodeId b;
    double km;
};

/// A simple path (no repeated node); consecutive nodes are adjacent.
struct Path {
    std::vector<NodeId> nodes;

    bool empty() const { return nodes.empty(); }
    std::size_t hop_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }
};

/// Thrown by enumerate_simple_paths when the path budget is exhausted;
/// carries the paths discovered before truncation.
class PathBudgetExceeded : public Error {
public:
    PathBudgetExceeded(std::string msg, std::vector<Path> found)
        : Error(std::move(msg)), paths_found(std::move(found)) {}
    const char* name() const noexcept override { return "PathBudgetExceeded"; }

    std::vector<Path> paths_found;
};

/// Immutable skyway network: undirected, connected, one edge per node pair,
/// every node carries at least one recharging pad. Construction validates the
/// invariants; a constructed value never changes and is safe to share across
/// concurrent planner runs.
class SkywayNetwork {
public:
    /// `pads[i]` is the pad count of node i; edges as (a, b, km) triples.
    SkywayNetwork(std::vector<int> pads, const std::vector<Edge>& edges);

    std::size_t node_count() const { return pads_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    int pad_count(NodeId node) const;
    bool has_node(NodeId node) const { return node < pads_.size(); }

    /// Neighbors of `node`, sorted by id.
    std::span<const EdgeRef> neighbors(NodeId node) const;

    /// Length of the (a, b) segment, if present.
    std::optional<double> edge_km(NodeId a, NodeId b) const;

    /// All segments, sorted by (a, b) with a < b.
    const std::vector<Edge>& edges() const { return edges_; }

    bool operator==(const SkywayNetwork& other) const;

private:
    void check_node(NodeId node) const;

    std::vector<int> pads_;
    std::vector<std::vector<EdgeRef>> adj_;
    std::vector<Edge> edges_;
};

struct ShortestPathResult {
    Path path;
    double distance_km = 0.0;
};

/// Minimum-distance simple path between two nodes. Ties are broken toward the
/// lexicographically smallest node sequence, so results are reproducible.
ShortestPathResult shortest_path(const SkywayNetwork& net, NodeId from, NodeId to);

/// Shortest-path distance from `from` to every node (km).
std::vector<double> shortest_distances(const SkywayNetwork& net, NodeId from);

/// Hop count (edge count of a fewest-edge path) from `from` to every node.
std::vector<int> hop_distances(const SkywayNetwork& net, NodeId from);

struct LookaheadNeighbor {
    NodeId node;
    double distance_km;  // shortest-path distance from the query node
};

/// Every node at hop distance 1..(lookahead+1) from `from`, paired with its
/// shortest-path distance. `from` itself is excluded. Sorted by node id.
std::vector<LookaheadNeighbor> neighbors_within_lookahead(const SkywayNetwork& net,
                                                          NodeId from, int lookahead);

/// All simple paths from `from` to `to`, in depth-first order visiting
/// neighbors by ascending id. Throws PathBudgetExceeded (carrying the paths
/// found so far) if more than `max_paths` exist.
std::vector<Path> enumerate_simple_paths(const SkywayNetwork& net, NodeId from,
                                         NodeId to, std::size_t max_paths);

/// Parse the network JSON document. Unknown fields, duplicate nodes/edges and
/// invariant violations are rejected (ParseError / ValidationError).
SkywayNetwork load_network(std::istream& in);
SkywayNetwork load_network_file(const std::string& path);

/// Canonical JSON emission: nodes by id, edges sorted with a < b.
/// load(save(n)) is structurally identical to n.
void save_network(const SkywayNetwork& net, std::ostream& out);
std::string network_to_json(const SkywayNetwork& net);

struct RandomNetworkParams {
    std::size_t node_count = 30;
    double edge_density = 0.07;  // fraction of all node pairs carrying an edge;
                                 // road-like networks sit just above a tree
    int pad_min = 1;
    int pad_max = 4;
    double dist_min_km = 50.0;
    double dist_max_km = 400.0;
};

/// Connected random network: a random spanning tree plus extra edges up to the
/// requested density. Deterministic for a fixed seed.
SkywayNetwork generate_random_network(const RandomNetworkParams& params, std::uint64_t seed);

}  // namespace swarmplan
