#include "swarmplan/swarm.hpp"

#include <algorithm>
#include <string>

namespace swarmplan {

SubSwarm build_swarm(const DeliveryRequest& request, const DronePerformance& perf) {
    if (request.package_weights_kg.size() < 2)
        throw TooFewPackages("a swarm delivery needs at least 2 packages, got " +
                             std::to_string(request.package_weights_kg.size()));
    SubSwarm swarm;
    swarm.current_node = request.source;
    swarm.clock_minutes = 0.0;
    swarm.drones.reserve(request.package_weights_kg.size());
    for (std::size_t i = 0; i < request.package_weights_kg.size(); ++i) {
        double w = request.package_weights_kg[i];
        if (!(w > 0.0))
            throw InvalidParameter("package weight must be positive");
        if (w > perf.max_payload_kg)
            throw PayloadExceedsCapacity("package " + std::to_string(i) + " weighs " +
                                         std::to_string(w) + " kg; capacity is " +
                                         std::to_string(perf.max_payload_kg) + " kg");
        swarm.drones.push_back({static_cast<int>(i), 100.0, w});
    }
    return swarm;
}

namespace {

// Restricted-growth enumeration: element i joins an existing part or opens a
// new one (never beyond max_splits). Partitions that leave a singleton part
// are dropped at the leaves.
void enumerate_rec(const std::vector<int>& ids, std::size_t index,
                   std::vector<std::vector<int>>& parts, int max_splits,
                   std::size_t budget, std::vector<SwarmPartition>& out) {
    if (index == ids.size()) {
        for (const auto& part : parts)
            if (part.size() < 2) return;
        if (out.size() >= budget)
            throw PartitionBudgetExceeded("more than " + std::to_string(budget) +
                                          " partitions");
        out.push_back(SwarmPartition{parts});
        return;
    }
    // Deeper levels may append (and later remove) parts; index to stay safe
    // against reallocation.
    const std::size_t existing = parts.size();
    for (std::size_t p = 0; p < existing; ++p) {
        parts[p].push_back(ids[index]);
        enumerate_rec(ids, index + 1, parts, max_splits, budget, out);
        parts[p].pop_back();
    }
    if (parts.size() < static_cast<std::size_t>(max_splits)) {
        parts.push_back({ids[index]});
        enumerate_rec(ids, index + 1, parts, max_splits, budget, out);
        parts.pop_back();
    }
}

}  // namespace

std::vector<SwarmPartition> enumerate_partitions(const SubSwarm& swarm, int max_splits,
                                                 std::size_t partition_budget) {
    if (swarm.size() < 2)
        throw InvalidParameter("cannot partition a swarm of fewer than 2 drones");
    if (max_splits < 1)
        throw InvalidParameter("max_splits must be >= 1");
    std::vector<int> ids;
    ids.reserve(swarm.size());
    for (const Drone& d : swarm.drones) ids.push_back(d.id);
    std::sort(ids.begin(), ids.end());

    std::vector<SwarmPartition> out;
    std::vector<std::vector<int>> parts{{ids[0]}};
    enumerate_rec(ids, 1, parts, max_splits, partition_budget, out);
    return out;
}

std::pair<SubSwarm, SubSwarm> split_off(const SubSwarm& swarm,
                                        const std::vector<int>& ids) {
    if (ids.size() < 2)
        throw IllegalSplit("split part has " + std::to_string(ids.size()) +
                           " drone(s); a sub-swarm needs at least 2");
    if (swarm.size() < ids.size() + 2)
        throw IllegalSplit("remainder would have " +
                           std::to_string(swarm.size() - std::min(swarm.size(), ids.size())) +
                           " drone(s); a sub-swarm needs at least 2");

    SubSwarm taken, rest;
    taken.current_node = rest.current_node = swarm.current_node;
    taken.clock_minutes = rest.clock_minutes = swarm.clock_minutes;
    for (const Drone& d : swarm.drones) {
        if (std::find(ids.begin(), ids.end(), d.id) != ids.end())
            taken.drones.push_back(d);
        else
            rest.drones.push_back(d);
    }
    if (taken.size() != ids.size())
        throw IllegalSplit("split references drone ids outside the swarm");
    return {std::move(taken), std::move(rest)};
}

}  // namespace swarmplan
