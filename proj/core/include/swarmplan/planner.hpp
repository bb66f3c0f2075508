#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swarmplan/energy.hpp"
#include "swarmplan/network.hpp"
#include "swarmplan/swarm.hpp"

namespace swarmplan {

struct PlannerConfig {
    int lookahead_l = 2;      // candidate levels beyond direct neighbors
    int max_splits_x = 2;     // maximum sub-swarms a swarm may disband into
    double arrival_window_w_minutes = 60.0;
    bool cooperative = false;  // partial charging under pad contention
    double reserve_percent = 0.0;
    std::size_t partition_budget = 100000;
};

void validate(const PlannerConfig& config);

enum class LegKind { Travel, Charge, Wait };

const char* to_string(LegKind kind);

struct ChargeTarget {
    int drone_id = 0;
    double to_percent = 0.0;
};

/// One timed step of a sub-swarm: an edge traversal, a charging round block,
/// or a wait. Charge legs carry the per-drone battery targets so an itinerary
/// can be re-simulated without re-running the planner.
struct Leg {
    int subswarm_id = 0;
    LegKind kind = LegKind::Travel;
    NodeId from = 0;
    NodeId to = 0;
    double start_min = 0.0;
    double dur_min = 0.0;
    std::vector<ChargeTarget> targets;  // charge legs only

    double end_min() const { return start_min + dur_min; }
};

struct SubSwarmRecord {
    int id = 0;
    std::vector<int> drone_ids;
    double created_min = 0.0;
    NodeId created_at = 0;
};

/// A fully timed plan. Component totals are measured along the timeline of
/// the last-arriving drone, so total = travel + charge + wait holds exactly;
/// waits other sub-swarms spend at the destination appear as legs only.
struct Itinerary {
    std::vector<SubSwarmRecord> subswarms;
    std::vector<Leg> legs;
    double total_min = 0.0;
    double travel_min = 0.0;
    double charge_min = 0.0;
    double wait_min = 0.0;
    double spread_min = 0.0;  // first-to-last arrival gap at the destination
};

/// Per-decision observation hook data. Collecting a trace never changes the
/// produced itinerary.
struct DecisionRecord {
    enum class Action { DirectFlight, ChargeHop, SubsetToDestination, Split };

    int subswarm_id = 0;
    NodeId at_node = 0;
    Action action = Action::DirectFlight;
    std::vector<std::pair<NodeId, double>> candidate_scores;  // charge hops
    SwarmPartition chosen_partition;  // splits and subset departures
    std::vector<NodeId> chosen_nodes;
    double chosen_score = 0.0;
};

using PlanTrace = std::vector<DecisionRecord>;

/// Whole-swarm composition: fly straight to the destination whenever every
/// drone can make it; otherwise hop to the lookahead candidate with the least
/// travel-plus-node time, recharge there, and retry. The swarm never splits.
Itinerary compose_sequential(const SkywayNetwork& net, const SubSwarm& swarm,
                             const DeliveryRequest& request,
                             const DronePerformance& perf, const PlannerConfig& config,
                             PlanTrace* trace = nullptr);

/// Dynamic-swarm composition: sub-swarms whose drones can all reach the
/// destination depart immediately; a reaching subset may leave the rest
/// behind; otherwise the swarm disbands into the partition/charging-node
/// combination with the least makespan. Arrivals are held within the
/// configured window, waiting before the final leg when the spread would
/// exceed it.
Itinerary compose_parallel(const SkywayNetwork& net, const SubSwarm& swarm,
                           const DeliveryRequest& request, const DronePerformance& perf,
                           const PlannerConfig& config, PlanTrace* trace = nullptr);

/// Recomputes total, per-component and spread fields from the legs. The
/// component breakdown follows the last-arriving drone's timeline.
void recompute_totals(Itinerary& itinerary);

/// Re-simulates an itinerary against the energy model and checks every
/// invariant (leg contiguity, travel durations, battery above reserve, charge
/// rounds, window compliance, component additivity, delivery completeness).
/// Throws ValidationError naming the violated invariant.
void validate_itinerary(const SkywayNetwork& net, const DeliveryRequest& request,
                        const DronePerformance& perf, const PlannerConfig& config,
                        const Itinerary& itinerary);

}  // namespace swarmplan
