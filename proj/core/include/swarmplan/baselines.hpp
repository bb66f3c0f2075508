#pragma once

#include "swarmplan/planner.hpp"

namespace swarmplan {

/// Comparison algorithm: least-cost path search where an edge costs its travel
/// time plus the node time of a full swarm recharge at the head node. The
/// emitted itinerary replays that path, recharging to 100% at every
/// intermediate node (the destination contributes no charge time). Edges no
/// drone can cross on a full battery are unusable; if none remain toward the
/// destination the search fails with NoFeasiblePath.
Itinerary dijkstra_baseline(const SkywayNetwork& net, const SubSwarm& swarm,
                            const DeliveryRequest& request,
                            const DronePerformance& perf,
                            double reserve_percent = 0.0);

/// Exhaustive reference: enumerates every simple path between the endpoints
/// (refusing with PathBudgetExceeded beyond `max_paths`), places
/// charge-to-100% stops optimally along each path, and returns the cheapest
/// itinerary. Ties go to the first path in depth-first (ascending neighbor)
/// order.
Itinerary brute_force_oracle(const SkywayNetwork& net, const SubSwarm& swarm,
                             const DeliveryRequest& request,
                             const DronePerformance& perf,
                             const PlannerConfig& config, std::size_t max_paths);

}  // namespace swarmplan
