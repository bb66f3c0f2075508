#include "swarmplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <string>

namespace swarmplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTimeTolMin = 1e-6;

double travel_minutes(const DronePerformance& perf, double km) {
    return km / perf.speed_kmh * 60.0;
}

/// One planning unit moving through the network.
struct Active {
    int id = 0;
    std::vector<Drone> drones;
    NodeId node = 0;
    double clock = 0.0;
    std::vector<char> visited;  // nodes traversed or stopped at on this lineage
    std::size_t steps = 0;
    std::size_t stops = 0;       // charging stops made so far
    double best_d2d = 0.0;       // closest the walk has come to the destination
};

struct ChargePlan {
    std::vector<ChargeDemand> demands;  // drone_id fields carry real drone ids
    NodeTimeBreakdown nt;
};

/// Shared state for one compose_* call.
struct Planning {
    const SkywayNetwork& net;
    const DeliveryRequest& request;
    const DronePerformance& perf;
    const PlannerConfig& config;
    PlanTrace* trace;
    std::map<NodeId, double> max_leg_cache;  // farthest lookahead candidate, per node
    std::size_t step_cap;
    std::size_t stop_budget = 0;  // charging stops before the walk must make progress

    Planning(const SkywayNetwork& n, const DeliveryRequest& r,
             const DronePerformance& p, const PlannerConfig& c, PlanTrace* t)
        : net(n), request(r), perf(p), config(c), trace(t),
          step_cap(8 * n.node_count() + 64) {}

    /// The greedy hop selection has no pull toward the destination, so an
    /// unchecked walk can drift arbitrarily. Two brakes: a sub-swarm that
    /// moved away from the destination must work its way back before it gets
    /// another free pick, and past a hard stop budget (twice what any route
    /// plausibly needs) every stop must reduce the distance to go.
    void set_stop_budget(const std::vector<Drone>& drones, double direct_km) {
        double worst_rate = 0.0;
        for (const Drone& d : drones)
            worst_rate = std::max(worst_rate, consumption_rate(perf, d.payload_kg));
        double usable = std::max(1.0, 100.0 - config.reserve_percent);
        double stops_needed = std::ceil(direct_km * worst_rate / usable);
        stop_budget = 2 * static_cast<std::size_t>(stops_needed) + 4;
    }

    bool must_progress(const Active& s, double current_d2d) const {
        return current_d2d > s.best_d2d + 1e-9 || s.stops >= stop_budget;
    }

    bool all_reach(const std::vector<Drone>& drones, double km) const {
        for (const Drone& d : drones)
            if (!can_reach(perf, d.battery_percent, d.payload_kg, km,
                           config.reserve_percent))
                return false;
        return true;
    }

    /// Distance a cooperative charge must cover: the farthest node the swarm
    /// could pick next from `node` (the destination included when it lies
    /// within the lookahead). Keeps every next-step candidate reachable.
    double max_next_leg_km(NodeId node) {
        auto it = max_leg_cache.find(node);
        if (it != max_leg_cache.end()) return it->second;
        double farthest = 0.0;
        for (const LookaheadNeighbor& c :
             neighbors_within_lookahead(net, node, config.lookahead_l))
            farthest = std::max(farthest, c.distance_km);
        max_leg_cache.emplace(node, farthest);
        return farthest;
    }

    /// Charge plan for a swarm arriving at `node` after `travel_km`.
    ChargePlan charge_plan(NodeId node, const std::vector<Drone>& drones,
                           double travel_km) {
        ChargePlan plan;
        plan.demands.reserve(drones.size());
        int pads = net.pad_count(node);
        if (config.cooperative) {
            std::vector<BatteryPayload> states;
            states.reserve(drones.size());
            for (const Drone& d : drones) {
                double arrival = d.battery_percent -
                                 consumption_rate(perf, d.payload_kg) * travel_km;
                states.push_back({arrival, d.payload_kg});
            }
            auto targets = cooperative_targets(perf, states, pads, max_next_leg_km(node),
                                               config.reserve_percent);
            for (std::size_t i = 0; i < targets.size(); ++i)
                plan.demands.push_back(
                    {drones[i].id, targets[i].from_percent, targets[i].to_percent});
        } else {
            for (const Drone& d : drones) {
                double arrival = d.battery_percent -
                                 consumption_rate(perf, d.payload_kg) * travel_km;
                plan.demands.push_back({d.id, arrival, 100.0});
            }
        }
        plan.nt = node_time(perf, plan.demands, pads);
        return plan;
    }

    void emit_travel(Itinerary& it, Active& s, const Path& path) {
        for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
            NodeId u = path.nodes[i];
            NodeId v = path.nodes[i + 1];
            double km = *net.edge_km(u, v);
            double dur = travel_minutes(perf, km);
            it.legs.push_back({s.id, LegKind::Travel, u, v, s.clock, dur, {}});
            for (Drone& d : s.drones)
                d.battery_percent -= consumption_rate(perf, d.payload_kg) * km;
            s.clock += dur;
            s.node = v;
            s.visited[v] = 1;
        }
    }

    void apply_charge(Itinerary& it, Active& s, const ChargePlan& plan) {
        for (const ChargeDemand& demand : plan.demands)
            for (Drone& d : s.drones)
                if (d.id == demand.drone_id) d.battery_percent = demand.to_percent;
        if (plan.nt.charging_minutes > 0.0) {
            Leg leg{s.id,   LegKind::Charge,          s.node, s.node,
                    s.clock, plan.nt.charging_minutes, {}};
            leg.targets.reserve(plan.demands.size());
            for (const ChargeDemand& demand : plan.demands)
                leg.targets.push_back({demand.drone_id, demand.to_percent});
            it.legs.push_back(std::move(leg));
            s.clock += plan.nt.charging_minutes;
        }
        if (plan.nt.waiting_minutes > 0.0) {
            it.legs.push_back({s.id, LegKind::Wait, s.node, s.node, s.clock,
                               plan.nt.waiting_minutes, {}});
            s.clock += plan.nt.waiting_minutes;
        }
    }

    void record_subswarm(Itinerary& it, const Active& s) {
        SubSwarmRecord rec;
        rec.id = s.id;
        rec.created_min = s.clock;
        rec.created_at = s.node;
        for (const Drone& d : s.drones) rec.drone_ids.push_back(d.id);
        it.subswarms.push_back(std::move(rec));
    }

    void bump_steps(Active& s) {
        if (s.steps++ >= step_cap)
            throw NoFeasibleCandidate(
                "planner made no progress after " + std::to_string(step_cap) +
                " steps; the network/payload combination keeps the swarm cycling");
    }
};

struct ScoredCandidate {
    NodeId node = 0;
    double km = 0.0;
    double score = kInf;
    double dist_to_dest = kInf;
    ChargePlan plan;
};

Active make_root(const SkywayNetwork& net, const SubSwarm& swarm,
                 const DeliveryRequest& request) {
    if (!net.has_node(request.source))
        throw UnknownNode("unknown source node " + std::to_string(request.source));
    if (!net.has_node(request.destination))
        throw UnknownNode("unknown destination node " + std::to_string(request.destination));
    if (swarm.size() < 2)
        throw InvalidParameter("a swarm needs at least 2 drones");
    if (swarm.current_node != request.source)
        throw InvalidParameter("swarm must start at the request source");
    Active root;
    root.id = 0;
    root.drones = swarm.drones;
    std::sort(root.drones.begin(), root.drones.end(),
              [](const Drone& a, const Drone& b) { return a.id < b.id; });
    root.node = swarm.current_node;
    root.clock = swarm.clock_minutes;
    root.visited.assign(net.node_count(), 0);
    root.visited[root.node] = 1;
    return root;
}

void sort_legs(Itinerary& it) {
    std::stable_sort(it.legs.begin(), it.legs.end(), [](const Leg& a, const Leg& b) {
        if (a.subswarm_id != b.subswarm_id) return a.subswarm_id < b.subswarm_id;
        return a.start_min < b.start_min;
    });
}

/// Holds the spread within the window: sub-swarms that would arrive more than
/// w before the last one wait at their last pre-destination node; everyone
/// then idles at the destination until the final arrival.
void enforce_window(Itinerary& it, NodeId destination, double window_min) {
    struct FinalLeg {
        std::size_t idx;
        double arrival;
    };
    std::map<int, FinalLeg> finals;
    for (std::size_t i = 0; i < it.legs.size(); ++i) {
        const Leg& leg = it.legs[i];
        if (leg.kind == LegKind::Travel && leg.to == destination) {
            auto [pos, inserted] = finals.try_emplace(leg.subswarm_id, FinalLeg{i, leg.end_min()});
            if (!inserted && leg.end_min() > pos->second.arrival)
                pos->second = {i, leg.end_min()};
        }
    }
    if (finals.size() < 2) return;

    double last = -kInf;
    for (const auto& [ss, fin] : finals) last = std::max(last, fin.arrival);

    for (auto& [ss, fin] : finals) {
        if (fin.arrival < last - window_min - 1e-9) {
            double delay = (last - window_min) - fin.arrival;
            NodeId hold_at = it.legs[fin.idx].from;
            double hold_from = it.legs[fin.idx].start_min;
            it.legs.push_back({ss, LegKind::Wait, hold_at, hold_at, hold_from, delay, {}});
            it.legs[fin.idx].start_min += delay;  // re-index: push_back may reallocate
            fin.arrival += delay;
        }
    }
    for (auto& [ss, fin] : finals) {
        if (last - fin.arrival > 1e-9)
            it.legs.push_back({ss, LegKind::Wait, destination, destination, fin.arrival,
                               last - fin.arrival, {}});
    }
}

}  // namespace

void validate(const PlannerConfig& config) {
    if (config.lookahead_l < 0)
        throw InvalidParameter("lookahead_l must be >= 0");
    if (config.max_splits_x < 1)
        throw InvalidParameter("max_splits_x must be >= 1");
    if (config.arrival_window_w_minutes < 0.0)
        throw InvalidParameter("arrival_window_w_minutes must be >= 0");
    if (config.reserve_percent < 0.0)
        throw InvalidParameter("reserve_percent must be >= 0");
    if (config.partition_budget == 0)
        throw InvalidParameter("partition_budget must be positive");
}

const char* to_string(LegKind kind) {
    switch (kind) {
        case LegKind::Travel: return "travel";
        case LegKind::Charge: return "charge";
        case LegKind::Wait: return "wait";
    }
    return "?";
}

void recompute_totals(Itinerary& it) {
    it.total_min = it.travel_min = it.charge_min = it.wait_min = it.spread_min = 0.0;

    std::map<int, std::vector<const Leg*>> legs_by_subswarm;
    for (const Leg& leg : it.legs) legs_by_subswarm[leg.subswarm_id].push_back(&leg);

    std::map<int, std::vector<int>> subswarms_of_drone;
    for (const SubSwarmRecord& rec : it.subswarms)
        for (int id : rec.drone_ids) subswarms_of_drone[id].push_back(rec.id);

    double first = kInf;
    double last = -kInf;
    int critical = -1;
    for (const auto& [drone, members] : subswarms_of_drone) {
        double arrival = -kInf;
        for (int ss : members) {
            auto found = legs_by_subswarm.find(ss);
            if (found == legs_by_subswarm.end()) continue;
            for (const Leg* leg : found->second)
                if (leg->kind == LegKind::Travel)
                    arrival = std::max(arrival, leg->end_min());
        }
        if (arrival == -kInf) continue;  // drone never travelled
        first = std::min(first, arrival);
        if (arrival > last) {
            last = arrival;
            critical = drone;
        }
    }
    if (critical < 0) return;

    it.total_min = last;
    it.spread_min = last - first;
    for (int ss : subswarms_of_drone[critical]) {
        auto found = legs_by_subswarm.find(ss);
        if (found == legs_by_subswarm.end()) continue;
        for (const Leg* leg : found->second) {
            switch (leg->kind) {
                case LegKind::Travel: it.travel_min += leg->dur_min; break;
                case LegKind::Charge: it.charge_min += leg->dur_min; break;
                case LegKind::Wait: it.wait_min += leg->dur_min; break;
            }
        }
    }
}

Itinerary compose_sequential(const SkywayNetwork& net, const SubSwarm& swarm,
                             const DeliveryRequest& request,
                             const DronePerformance& perf, const PlannerConfig& config,
                             PlanTrace* trace) {
    validate(perf);
    validate(config);
    Planning ctx(net, request, perf, config, trace);
    Itinerary it;
    Active s = make_root(net, swarm, request);
    ctx.record_subswarm(it, s);
    s.best_d2d = shortest_path(net, s.node, request.destination).distance_km;
    ctx.set_stop_budget(s.drones, s.best_d2d);

    while (s.node != request.destination) {
        ctx.bump_steps(s);
        ShortestPathResult direct = shortest_path(net, s.node, request.destination);
        if (ctx.all_reach(s.drones, direct.distance_km)) {
            if (trace)
                trace->push_back({s.id,
                                  s.node,
                                  DecisionRecord::Action::DirectFlight,
                                  {},
                                  {},
                                  {request.destination},
                                  travel_minutes(perf, direct.distance_km)});
            ctx.emit_travel(it, s, direct.path);
            continue;
        }

        // The destination is never a charging stop, so it is not a candidate.
        std::vector<ScoredCandidate> feasible;
        for (const LookaheadNeighbor& c :
             neighbors_within_lookahead(net, s.node, config.lookahead_l)) {
            if (c.node == request.destination) continue;
            if (!ctx.all_reach(s.drones, c.distance_km)) continue;
            ScoredCandidate cand;
            cand.node = c.node;
            cand.km = c.distance_km;
            cand.dist_to_dest =
                shortest_path(net, c.node, request.destination).distance_km;
            feasible.push_back(std::move(cand));
        }
        if (feasible.empty())
            throw NoFeasibleCandidate("no lookahead candidate reachable from node " +
                                      std::to_string(s.node));

        // A drifting walk must get closer to the destination; a walk at its
        // frontier picks freely, skipping nodes it has already passed
        // (revisits are a last resort).
        std::vector<ScoredCandidate> pool;
        if (ctx.must_progress(s, direct.distance_km)) {
            for (const ScoredCandidate& c : feasible)
                if (c.dist_to_dest < direct.distance_km) pool.push_back(c);
        }
        if (pool.empty()) {
            for (const ScoredCandidate& c : feasible)
                if (!s.visited[c.node]) pool.push_back(c);
            if (pool.empty()) pool = feasible;
        }

        // A stop is scored by the arrival time it implies: travel there, the
        // node time of the recharge, and the travel still left from there.
        for (ScoredCandidate& c : pool) {
            c.plan = ctx.charge_plan(c.node, s.drones, c.km);
            c.score = travel_minutes(perf, c.km) + c.plan.nt.total_minutes +
                      travel_minutes(perf, c.dist_to_dest);
        }
        const ScoredCandidate* best = &pool.front();
        for (const ScoredCandidate& c : pool) {
            if (c.score < best->score ||
                (c.score == best->score && c.dist_to_dest < best->dist_to_dest) ||
                (c.score == best->score && c.dist_to_dest == best->dist_to_dest &&
                 c.node < best->node))
                best = &c;
        }

        if (trace) {
            DecisionRecord rec;
            rec.subswarm_id = s.id;
            rec.at_node = s.node;
            rec.action = DecisionRecord::Action::ChargeHop;
            for (const ScoredCandidate& c : pool)
                rec.candidate_scores.emplace_back(c.node, c.score);
            rec.chosen_nodes = {best->node};
            rec.chosen_score = best->score;
            trace->push_back(std::move(rec));
        }

        ShortestPathResult hop = shortest_path(net, s.node, best->node);
        ChargePlan plan = best->plan;  // `best` aliases into pool; copy first
        ctx.emit_travel(it, s, hop.path);
        ctx.apply_charge(it, s, plan);
        ++s.stops;
        s.best_d2d = std::min(s.best_d2d, best->dist_to_dest);
    }

    recompute_totals(it);
    sort_legs(it);
    return it;
}

namespace {

/// Scenario-3 search: all legal partitions crossed with injective assignments
/// of parts to candidate nodes, scored by makespan (sum, then node sequence,
/// as tie-breaks).
struct SplitChoice {
    SwarmPartition partition;
    std::vector<NodeId> nodes;       // per part
    std::vector<ChargePlan> plans;   // per part, owned: the search is gone by
                                     // the time the winner is executed
    std::vector<double> travel_km;   // per part
    double makespan = kInf;
    double sum = kInf;
};

struct PartOption {
    double cost = kInf;  // tt + node time
    double km = 0.0;
    ChargePlan plan;
};

class SplitSearch {
public:
    /// `onward_minutes[i]` is the shortest travel time from candidates[i] to
    /// the destination; a part's cost estimates its arrival time.
    SplitSearch(Planning& ctx, const Active& s,
                const std::vector<LookaheadNeighbor>& candidates,
                const std::vector<double>& onward_minutes)
        : ctx_(ctx), swarm_(s), candidates_(candidates),
          onward_minutes_(onward_minutes) {}

    /// Evaluates every partition; returns false if no feasible combination.
    bool run(const std::vector<SwarmPartition>& partitions, SplitChoice& out) {
        bool found = false;
        for (const SwarmPartition& partition : partitions) {
            if (partition.parts.size() > candidates_.size()) continue;
            part_options_.clear();
            part_options_.reserve(partition.parts.size());
            bool viable = true;
            for (const auto& part : partition.parts) {
                const std::vector<PartOption>* options = options_for(part);
                bool any = false;
                for (const PartOption& opt : *options)
                    if (opt.cost < kInf) any = true;
                if (!any) {
                    viable = false;
                    break;
                }
                part_options_.push_back(options);
            }
            if (!viable) continue;

            current_nodes_.assign(partition.parts.size(), 0);
            current_plans_.assign(partition.parts.size(), nullptr);
            current_km_.assign(partition.parts.size(), 0.0);
            used_.assign(candidates_.size(), 0);
            if (descend(partition, 0, 0.0, 0.0, out)) found = true;
        }
        return found;
    }

private:
    // Cost of sending one part to each candidate, cached across partitions
    // (the same part shows up in many of them).
    const std::vector<PartOption>* options_for(const std::vector<int>& part) {
        auto it = cache_.find(part);
        if (it != cache_.end()) return &it->second;

        std::vector<Drone> members;
        for (const Drone& d : swarm_.drones)
            if (std::find(part.begin(), part.end(), d.id) != part.end())
                members.push_back(d);

        std::vector<PartOption> options(candidates_.size());
        for (std::size_t ci = 0; ci < candidates_.size(); ++ci) {
            const LookaheadNeighbor& cand = candidates_[ci];
            if (!ctx_.all_reach(members, cand.distance_km)) continue;
            PartOption& opt = options[ci];
            opt.km = cand.distance_km;
            opt.plan = ctx_.charge_plan(cand.node, members, cand.distance_km);
            opt.cost = travel_minutes(ctx_.perf, cand.distance_km) +
                       opt.plan.nt.total_minutes + onward_minutes_[ci];
        }
        return &cache_.emplace(part, std::move(options)).first->second;
    }

    bool descend(const SwarmPartition& partition, std::size_t part_idx,
                 double makespan, double sum, SplitChoice& best) {
        if (makespan > best.makespan) return false;  // ties continue for sum/lex
        if (part_idx == partition.parts.size()) {
            bool better = makespan < best.makespan ||
                          (makespan == best.makespan && sum < best.sum) ||
                          (makespan == best.makespan && sum == best.sum &&
                           current_nodes_ < best.nodes);
            if (better) {
                best.partition = partition;
                best.nodes = current_nodes_;
                best.plans.clear();
                for (const ChargePlan* plan : current_plans_) best.plans.push_back(*plan);
                best.travel_km = current_km_;
                best.makespan = makespan;
                best.sum = sum;
            }
            return better;
        }
        bool any = false;
        const std::vector<PartOption>& options = *part_options_[part_idx];
        for (std::size_t ci = 0; ci < candidates_.size(); ++ci) {
            if (used_[ci] || options[ci].cost >= kInf) continue;
            used_[ci] = 1;
            current_nodes_[part_idx] = candidates_[ci].node;
            current_plans_[part_idx] = &options[ci].plan;
            current_km_[part_idx] = options[ci].km;
            if (descend(partition, part_idx + 1, std::max(makespan, options[ci].cost),
                        sum + options[ci].cost, best))
                any = true;
            used_[ci] = 0;
        }
        return any;
    }

    Planning& ctx_;
    const Active& swarm_;
    const std::vector<LookaheadNeighbor>& candidates_;
    const std::vector<double>& onward_minutes_;
    std::map<std::vector<int>, std::vector<PartOption>> cache_;
    std::vector<const std::vector<PartOption>*> part_options_;
    std::vector<NodeId> current_nodes_;
    std::vector<const ChargePlan*> current_plans_;
    std::vector<double> current_km_;
    std::vector<char> used_;
};

}  // namespace

Itinerary compose_parallel(const SkywayNetwork& net, const SubSwarm& swarm,
                           const DeliveryRequest& request, const DronePerformance& perf,
                           const PlannerConfig& config, PlanTrace* trace) {
    validate(perf);
    validate(config);
    Planning ctx(net, request, perf, config, trace);
    Itinerary it;
    Active root = make_root(net, swarm, request);
    ctx.record_subswarm(it, root);
    root.best_d2d = shortest_path(net, root.node, request.destination).distance_km;
    ctx.set_stop_budget(root.drones, root.best_d2d);

    std::deque<Active> queue;
    queue.push_back(std::move(root));
    int next_id = 1;

    while (!queue.empty()) {
        Active s = std::move(queue.front());
        queue.pop_front();
        if (s.node == request.destination) continue;
        ctx.bump_steps(s);

        ShortestPathResult direct = shortest_path(net, s.node, request.destination);

        // Scenario 1: everyone can make it.
        if (ctx.all_reach(s.drones, direct.distance_km)) {
            if (trace)
                trace->push_back({s.id,
                                  s.node,
                                  DecisionRecord::Action::DirectFlight,
                                  {},
                                  {},
                                  {request.destination},
                                  travel_minutes(perf, direct.distance_km)});
            ctx.emit_travel(it, s, direct.path);
            continue;
        }

        // Scenario 2: the drones that can make it leave the rest behind,
        // provided both sides stay legal sub-swarms.
        std::vector<Drone> reach, rest;
        for (const Drone& d : s.drones) {
            if (can_reach(perf, d.battery_percent, d.payload_kg, direct.distance_km,
                          config.reserve_percent))
                reach.push_back(d);
            else
                rest.push_back(d);
        }
        if (reach.size() >= 2 && rest.size() >= 2) {
            Active departing;
            departing.id = next_id++;
            departing.drones = reach;
            departing.node = s.node;
            departing.clock = s.clock;
            departing.visited = s.visited;
            departing.steps = s.steps;
            departing.stops = s.stops;
            departing.best_d2d = s.best_d2d;
            ctx.record_subswarm(it, departing);

            Active staying;
            staying.id = next_id++;
            staying.drones = rest;
            staying.node = s.node;
            staying.clock = s.clock;
            staying.visited = s.visited;
            staying.steps = s.steps;
            staying.stops = s.stops;
            staying.best_d2d = s.best_d2d;
            ctx.record_subswarm(it, staying);

            if (trace) {
                DecisionRecord rec;
                rec.subswarm_id = s.id;
                rec.at_node = s.node;
                rec.action = DecisionRecord::Action::SubsetToDestination;
                rec.chosen_partition.parts.resize(2);
                for (const Drone& d : reach) rec.chosen_partition.parts[0].push_back(d.id);
                for (const Drone& d : rest) rec.chosen_partition.parts[1].push_back(d.id);
                rec.chosen_nodes = {request.destination};
                rec.chosen_score = travel_minutes(perf, direct.distance_km);
                trace->push_back(std::move(rec));
            }

            ctx.emit_travel(it, departing, direct.path);
            queue.push_back(std::move(staying));
            continue;
        }

        // Scenario 3: disband (or stay whole) and charge somewhere.
        std::vector<LookaheadNeighbor> all_cands;
        for (const LookaheadNeighbor& c :
             neighbors_within_lookahead(net, s.node, config.lookahead_l))
            if (c.node != request.destination) all_cands.push_back(c);
        if (all_cands.empty())
            throw NoFeasibleCandidate("no candidate node near node " +
                                      std::to_string(s.node));

        // Candidate pools in order of preference: progress-only while the
        // sub-swarm is drifting, otherwise unvisited first.
        std::vector<std::vector<LookaheadNeighbor>> pools;
        if (ctx.must_progress(s, direct.distance_km)) {
            std::vector<LookaheadNeighbor> progress;
            for (const LookaheadNeighbor& c : all_cands)
                if (shortest_path(net, c.node, request.destination).distance_km <
                    direct.distance_km)
                    progress.push_back(c);
            if (!progress.empty()) pools.push_back(std::move(progress));
        } else {
            std::vector<LookaheadNeighbor> fresh;
            for (const LookaheadNeighbor& c : all_cands)
                if (!s.visited[c.node]) fresh.push_back(c);
            if (!fresh.empty()) pools.push_back(std::move(fresh));
        }
        pools.push_back(all_cands);

        SubSwarm as_subswarm{s.drones, s.node, s.clock};
        std::vector<SwarmPartition> partitions =
            enumerate_partitions(as_subswarm, config.max_splits_x, config.partition_budget);

        SplitChoice choice;
        bool found = false;
        for (const auto& pool : pools) {
            std::vector<double> onward;
            onward.reserve(pool.size());
            for (const LookaheadNeighbor& c : pool)
                onward.push_back(travel_minutes(
                    perf,
                    shortest_path(net, c.node, request.destination).distance_km));
            SplitSearch search(ctx, s, pool, onward);
            found = search.run(partitions, choice);
            if (found) break;
        }
        if (!found)
            throw NoFeasibleCandidate(
                "no feasible split/charging-node combination from node " +
                std::to_string(s.node));

        if (trace) {
            DecisionRecord rec;
            rec.subswarm_id = s.id;
            rec.at_node = s.node;
            rec.action = DecisionRecord::Action::Split;
            rec.chosen_partition = choice.partition;
            rec.chosen_nodes = choice.nodes;
            rec.chosen_score = choice.makespan;
            trace->push_back(std::move(rec));
        }

        bool whole = choice.partition.parts.size() == 1;
        for (std::size_t pi = 0; pi < choice.partition.parts.size(); ++pi) {
            const std::vector<int>& part = choice.partition.parts[pi];
            Active child;
            child.id = whole ? s.id : next_id++;
            child.drones.clear();
            for (const Drone& d : s.drones)
                if (std::find(part.begin(), part.end(), d.id) != part.end())
                    child.drones.push_back(d);
            child.node = s.node;
            child.clock = s.clock;
            child.visited = s.visited;
            child.steps = s.steps;
            child.stops = s.stops + 1;
            child.best_d2d = std::min(
                s.best_d2d,
                shortest_path(net, choice.nodes[pi], request.destination).distance_km);
            if (!whole) ctx.record_subswarm(it, child);

            ShortestPathResult hop = shortest_path(net, s.node, choice.nodes[pi]);
            ctx.emit_travel(it, child, hop.path);
            ctx.apply_charge(it, child, choice.plans[pi]);
            queue.push_back(std::move(child));
        }
    }

    enforce_window(it, request.destination, config.arrival_window_w_minutes);
    recompute_totals(it);
    sort_legs(it);
    return it;
}

// --- itinerary validation ---------------------------------------------------

namespace {

bool close(double a, double b, double abs_tol = kTimeTolMin) {
    return std::abs(a - b) <= abs_tol + 1e-9 * std::max(std::abs(a), std::abs(b));
}

[[noreturn]] void violate(const std::string& what) {
    throw ValidationError("itinerary invariant violated: " + what);
}

}  // namespace

void validate_itinerary(const SkywayNetwork& net, const DeliveryRequest& request,
                        const DronePerformance& perf, const PlannerConfig& config,
                        const Itinerary& it) {
    const std::size_t n = request.package_weights_kg.size();

    std::map<int, const SubSwarmRecord*> records;
    for (const SubSwarmRecord& rec : it.subswarms) {
        if (rec.drone_ids.size() < 2)
            violate("sub-swarm " + std::to_string(rec.id) + " has fewer than 2 drones");
        for (int id : rec.drone_ids)
            if (id < 0 || static_cast<std::size_t>(id) >= n)
                violate("sub-swarm references unknown drone " + std::to_string(id));
        if (!records.emplace(rec.id, &rec).second)
            violate("duplicate sub-swarm id " + std::to_string(rec.id));
    }

    std::map<int, std::vector<const Leg*>> legs_by_subswarm;
    for (const Leg& leg : it.legs) {
        if (!records.count(leg.subswarm_id))
            violate("leg references unknown sub-swarm " +
                    std::to_string(leg.subswarm_id));
        if (leg.dur_min < 0.0) violate("negative leg duration");
        legs_by_subswarm[leg.subswarm_id].push_back(&leg);
    }

    // Per sub-swarm: chronological, contiguous, structurally sound legs.
    for (auto& [ss, legs] : legs_by_subswarm) {
        std::sort(legs.begin(), legs.end(), [](const Leg* a, const Leg* b) {
            return a->start_min < b->start_min;
        });
        const SubSwarmRecord* rec = records[ss];
        double cursor = rec->created_min;
        NodeId where = rec->created_at;
        for (const Leg* leg : legs) {
            if (!close(leg->start_min, cursor))
                violate("gap in sub-swarm " + std::to_string(ss) + " timeline at " +
                        std::to_string(leg->start_min) + " min");
            if (leg->from != where)
                violate("sub-swarm " + std::to_string(ss) + " teleports to node " +
                        std::to_string(leg->from));
            if (leg->kind == LegKind::Travel) {
                auto km = net.edge_km(leg->from, leg->to);
                if (!km) violate("travel leg over a missing edge");
                if (!close(leg->dur_min, *km / perf.speed_kmh * 60.0))
                    violate("travel duration does not match edge length");
            } else if (leg->from != leg->to) {
                violate("charge/wait leg changes node");
            }
            cursor = leg->end_min();
            where = leg->to;
        }
    }

    // Per drone: the containing sub-swarms' legs must tile its timeline, the
    // battery must stay within [reserve, 100], and charge rounds must match
    // the pad-contention model.
    double recomputed_total = 0.0;
    double first_arrival = kInf;
    double last_arrival = -kInf;
    int critical = -1;
    std::map<int, double> arrivals;
    for (std::size_t drone = 0; drone < n; ++drone) {
        double payload = request.package_weights_kg[drone];
        double rate = consumption_rate(perf, payload);

        std::vector<const Leg*> timeline;
        for (const SubSwarmRecord& rec : it.subswarms) {
            if (std::find(rec.drone_ids.begin(), rec.drone_ids.end(),
                          static_cast<int>(drone)) == rec.drone_ids.end())
                continue;
            auto found = legs_by_subswarm.find(rec.id);
            if (found != legs_by_subswarm.end())
                timeline.insert(timeline.end(), found->second.begin(),
                                found->second.end());
        }
        if (timeline.empty())
            violate("drone " + std::to_string(drone) + " has no legs");
        std::sort(timeline.begin(), timeline.end(), [](const Leg* a, const Leg* b) {
            return a->start_min < b->start_min;
        });

        double cursor = 0.0;
        double battery = 100.0;
        double arrival = -kInf;
        for (std::size_t i = 0; i < timeline.size(); ++i) {
            const Leg* leg = timeline[i];
            if (!close(leg->start_min, cursor))
                violate("drone " + std::to_string(drone) +
                        " is in two sub-swarms at once or idles untracked");
            cursor = leg->end_min();
            if (leg->kind == LegKind::Travel) {
                battery -= rate * *net.edge_km(leg->from, leg->to);
                if (battery < config.reserve_percent - 1e-6)
                    violate("battery of drone " + std::to_string(drone) +
                            " falls below the reserve (" + std::to_string(battery) +
                            "%)");
                arrival = cursor;
            } else if (leg->kind == LegKind::Charge) {
                const ChargeTarget* mine = nullptr;
                for (const ChargeTarget& t : leg->targets)
                    if (t.drone_id == static_cast<int>(drone)) mine = &t;
                if (!mine) violate("charge leg missing a target for drone " +
                                   std::to_string(drone));
                if (mine->to_percent < battery - 1e-6)
                    violate("charge target discharges drone " + std::to_string(drone));
                if (mine->to_percent > 100.0 + 1e-9)
                    violate("charge target above 100%");
                battery = mine->to_percent;
            }
        }
        if (timeline.back()->kind != LegKind::Travel &&
            timeline.back()->kind != LegKind::Wait)
            violate("drone " + std::to_string(drone) + " ends mid-charge");
        if (arrival == -kInf ||
            timeline.back()->to != request.destination)
            violate("drone " + std::to_string(drone) +
                    " does not end at the destination (package undelivered)");

        arrivals[static_cast<int>(drone)] = arrival;
        first_arrival = std::min(first_arrival, arrival);
        if (arrival > last_arrival) {
            last_arrival = arrival;
            critical = static_cast<int>(drone);
        }
        recomputed_total = std::max(recomputed_total, arrival);
    }

    // Charge-round consistency: a charge leg lasts as long as the longest
    // individual demand and is followed by the rounds-model wait when pads
    // are contended.
    std::map<int, double> battery_now;
    for (std::size_t i = 0; i < n; ++i) battery_now[static_cast<int>(i)] = 100.0;
    std::vector<const Leg*> chronological;
    for (const Leg& leg : it.legs) chronological.push_back(&leg);
    std::sort(chronological.begin(), chronological.end(),
              [](const Leg* a, const Leg* b) {
                  if (a->start_min != b->start_min) return a->start_min < b->start_min;
                  return a->subswarm_id < b->subswarm_id;
              });
    for (std::size_t i = 0; i < chronological.size(); ++i) {
        const Leg* leg = chronological[i];
        const SubSwarmRecord* rec = records[leg->subswarm_id];
        if (leg->kind == LegKind::Travel) {
            for (int id : rec->drone_ids)
                battery_now[id] -=
                    consumption_rate(perf,
                                     request.package_weights_kg[static_cast<std::size_t>(id)]) *
                    *net.edge_km(leg->from, leg->to);
        } else if (leg->kind == LegKind::Charge) {
            std::vector<ChargeDemand> demands;
            for (const ChargeTarget& t : leg->targets) {
                // The re-simulated battery can sit an ulp above a no-op target.
                double from = std::min(battery_now[t.drone_id], t.to_percent);
                demands.push_back({t.drone_id, from, t.to_percent});
                battery_now[t.drone_id] = t.to_percent;
            }
            NodeTimeBreakdown nt = node_time(perf, demands, net.pad_count(leg->from));
            if (!close(leg->dur_min, nt.charging_minutes))
                violate("charge leg duration does not match the longest demand");
            if (nt.waiting_minutes > kTimeTolMin) {
                bool ok = false;
                if (i + 1 < chronological.size()) {
                    const Leg* next = chronological[i + 1];
                    ok = next->subswarm_id == leg->subswarm_id &&
                         next->kind == LegKind::Wait && next->from == leg->from &&
                         close(next->dur_min, nt.waiting_minutes);
                }
                // The wait may not be globally adjacent; look it up directly.
                if (!ok) {
                    for (const Leg* cand : legs_by_subswarm[leg->subswarm_id])
                        if (cand->kind == LegKind::Wait &&
                            close(cand->start_min, leg->end_min()) &&
                            close(cand->dur_min, nt.waiting_minutes))
                            ok = true;
                }
                if (!ok)
                    violate("pad contention wait missing after charge at node " +
                            std::to_string(leg->from));
            }
        }
    }

    double spread = (critical < 0) ? 0.0 : last_arrival - first_arrival;
    if (spread > config.arrival_window_w_minutes + kTimeTolMin)
        violate("arrival spread " + std::to_string(spread) +
                " min exceeds the window of " +
                std::to_string(config.arrival_window_w_minutes) + " min");
    if (!close(it.spread_min, spread)) violate("stored arrival spread is stale");
    if (!close(it.total_min, recomputed_total)) violate("stored total is stale");

    double travel = 0.0, charge = 0.0, wait = 0.0;
    for (const SubSwarmRecord& rec : it.subswarms) {
        if (std::find(rec.drone_ids.begin(), rec.drone_ids.end(), critical) ==
            rec.drone_ids.end())
            continue;
        auto found = legs_by_subswarm.find(rec.id);
        if (found == legs_by_subswarm.end()) continue;
        for (const Leg* leg : found->second) {
            if (leg->kind == LegKind::Travel) travel += leg->dur_min;
            if (leg->kind == LegKind::Charge) charge += leg->dur_min;
            if (leg->kind == LegKind::Wait) wait += leg->dur_min;
        }
    }
    if (!close(it.travel_min, travel) || !close(it.charge_min, charge) ||
        !close(it.wait_min, wait))
        violate("stored component times are stale");
    if (!close(travel + charge + wait, it.total_min))
        violate("component times do not add up to the total");
}

}  // namespace swarmplan
