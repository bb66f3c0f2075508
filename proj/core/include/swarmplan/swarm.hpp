#pragma once

#include <utility>
#include <vector>

#include "swarmplan/energy.hpp"
#include "swarmplan/network.hpp"

namespace swarmplan {

struct Drone {
    int id = 0;
    double battery_percent = 100.0;
    double payload_kg = 0.0;
};

/// One delivery order: move every package from source to destination.
struct DeliveryRequest {
    NodeId source = 0;
    NodeId destination = 0;
    std::vector<double> package_weights_kg;
};

/// A set of drones moving together. Sub-swarms produced by a split always
/// contain at least two drones. Drones are kept sorted by id.
struct SubSwarm {
    std::vector<Drone> drones;
    NodeId current_node = 0;
    double clock_minutes = 0.0;

    std::size_t size() const { return drones.size(); }
};

/// One drone per package (drone i carries package i), fully charged at the
/// request source. Requests with fewer than two packages are rejected: a
/// single-package delivery is a single-drone problem, not a swarm one.
SubSwarm build_swarm(const DeliveryRequest& request, const DronePerformance& perf);

/// A set partition of a swarm's drone ids; parts are ordered by smallest
/// member and each part holds at least two drones.
struct SwarmPartition {
    std::vector<std::vector<int>> parts;
};

/// Every partition of the swarm into 1..max_splits parts of size >= 2,
/// including the trivial no-split partition, in a deterministic order.
/// Throws PartitionBudgetExceeded beyond `partition_budget` results.
std::vector<SwarmPartition> enumerate_partitions(const SubSwarm& swarm, int max_splits,
                                                 std::size_t partition_budget = 100000);

/// Splits `ids` out of the swarm. Both halves keep the node and clock of the
/// original. Throws IllegalSplit if either side would drop below two drones.
std::pair<SubSwarm, SubSwarm> split_off(const SubSwarm& swarm,
                                        const std::vector<int>& ids);

}  // namespace swarmplan
