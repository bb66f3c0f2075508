#include "swarmplan/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace swarmplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double travel_minutes(const DronePerformance& perf, double km) {
    return km / perf.speed_kmh * 60.0;
}

std::vector<double> drone_rates(const DronePerformance& perf,
                                const std::vector<Drone>& drones) {
    std::vector<double> rates;
    rates.reserve(drones.size());
    for (const Drone& d : drones) rates.push_back(consumption_rate(perf, d.payload_kg));
    return rates;
}

/// Node time of a full recharge after flying `km` with full batteries.
NodeTimeBreakdown full_recharge_time(const SkywayNetwork& net,
                                     const DronePerformance& perf,
                                     const std::vector<Drone>& drones,
                                     const std::vector<double>& rates, NodeId node,
                                     double km) {
    std::vector<ChargeDemand> demands;
    demands.reserve(drones.size());
    for (std::size_t i = 0; i < drones.size(); ++i)
        demands.push_back({drones[i].id, 100.0 - rates[i] * km, 100.0});
    return node_time(perf, demands, net.pad_count(node));
}

void check_preconditions(const SkywayNetwork& net, const SubSwarm& swarm,
                         const DeliveryRequest& request) {
    if (!net.has_node(request.source))
        throw UnknownNode("unknown source node " + std::to_string(request.source));
    if (!net.has_node(request.destination))
        throw UnknownNode("unknown destination node " +
                          std::to_string(request.destination));
    if (swarm.size() < 2)
        throw InvalidParameter("a swarm needs at least 2 drones");
    if (swarm.current_node != request.source)
        throw InvalidParameter("swarm must start at the request source");
}

/// Replays a concrete path, recharging fully at the given stop indices.
Itinerary replay_path(const SkywayNetwork& net, const DronePerformance& perf,
                      const std::vector<Drone>& swarm_drones,
                      const std::vector<double>& rates, const Path& path,
                      const std::vector<char>& stop_here) {
    Itinerary it;
    SubSwarmRecord rec;
    rec.id = 0;
    rec.created_min = 0.0;
    rec.created_at = path.nodes.front();
    for (const Drone& d : swarm_drones) rec.drone_ids.push_back(d.id);
    it.subswarms.push_back(rec);

    std::vector<double> battery(swarm_drones.size(), 100.0);
    double clock = 0.0;
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
        NodeId u = path.nodes[i];
        NodeId v = path.nodes[i + 1];
        double km = *net.edge_km(u, v);
        double dur = travel_minutes(perf, km);
        it.legs.push_back({0, LegKind::Travel, u, v, clock, dur, {}});
        clock += dur;
        for (std::size_t r = 0; r < battery.size(); ++r) battery[r] -= rates[r] * km;

        if (v != path.nodes.back() && stop_here[i + 1]) {
            std::vector<ChargeDemand> demands;
            demands.reserve(battery.size());
            for (std::size_t r = 0; r < battery.size(); ++r) {
                demands.push_back({swarm_drones[r].id, battery[r], 100.0});
                battery[r] = 100.0;
            }
            NodeTimeBreakdown nt = node_time(perf, demands, net.pad_count(v));
            if (nt.charging_minutes > 0.0) {
                Leg leg{0, LegKind::Charge, v, v, clock, nt.charging_minutes, {}};
                for (const ChargeDemand& d : demands)
                    leg.targets.push_back({d.drone_id, 100.0});
                it.legs.push_back(std::move(leg));
                clock += nt.charging_minutes;
            }
            if (nt.waiting_minutes > 0.0) {
                it.legs.push_back(
                    {0, LegKind::Wait, v, v, clock, nt.waiting_minutes, {}});
                clock += nt.waiting_minutes;
            }
        }
    }
    recompute_totals(it);
    return it;
}

}  // namespace

Itinerary dijkstra_baseline(const SkywayNetwork& net, const SubSwarm& swarm,
                            const DeliveryRequest& request,
                            const DronePerformance& perf, double reserve_percent) {
    validate(perf);
    check_preconditions(net, swarm, request);

    std::vector<Drone> drones = swarm.drones;
    std::sort(drones.begin(), drones.end(),
              [](const Drone& a, const Drone& b) { return a.id < b.id; });
    std::vector<double> rates = drone_rates(perf, drones);
    double max_rate = *std::max_element(rates.begin(), rates.end());

    NodeId dest = request.destination;
    auto edge_usable = [&](double km) {
        return 100.0 - max_rate * km >=
               reserve_percent - kFeasibilityEpsilonPercent;
    };
    // Delivery cost of traversing (u, v): travel plus the full-swarm recharge
    // at v. Reaching the destination costs travel only.
    auto weight = [&](NodeId /*u*/, NodeId v, double km) {
        if (!edge_usable(km)) return kInf;
        double w = travel_minutes(perf, km);
        if (v != dest)
            w += full_recharge_time(net, perf, drones, rates, v, km).total_minutes;
        return w;
    };

    // Cost from every node to the destination under the directed edge costs.
    std::vector<double> cost(net.node_count(), kInf);
    cost[dest] = 0.0;
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, dest});
    while (!heap.empty()) {
        auto [c, v] = heap.top();
        heap.pop();
        if (c > cost[v]) continue;
        for (const EdgeRef& e : net.neighbors(v)) {
            double w = weight(e.to, v, e.km);  // entering v from e.to
            if (w == kInf) continue;
            if (c + w < cost[e.to]) {
                cost[e.to] = c + w;
                heap.push({cost[e.to], e.to});
            }
        }
    }
    if (cost[request.source] == kInf)
        throw NoFeasiblePath(
            "every route to the destination needs an edge beyond full-battery range");

    // Greedy forward walk; picking the cheapest continuation (smallest node id
    // on ties) reproduces the least-cost path deterministically.
    Path path;
    path.nodes.push_back(request.source);
    NodeId current = request.source;
    while (current != dest) {
        NodeId best = current;
        double best_cost = kInf;
        for (const EdgeRef& e : net.neighbors(current)) {
            double w = weight(current, e.to, e.km);
            if (w == kInf) continue;
            double through = w + cost[e.to];
            if (through < best_cost) {
                best_cost = through;
                best = e.to;
            }
        }
        current = best;
        path.nodes.push_back(current);
    }

    std::vector<char> stop_everywhere(path.nodes.size(), 1);
    return replay_path(net, perf, drones, rates, path, stop_everywhere);
}

Itinerary brute_force_oracle(const SkywayNetwork& net, const SubSwarm& swarm,
                             const DeliveryRequest& request,
                             const DronePerformance& perf, const PlannerConfig& config,
                             std::size_t max_paths) {
    validate(perf);
    check_preconditions(net, swarm, request);

    std::vector<Drone> drones = swarm.drones;
    std::sort(drones.begin(), drones.end(),
              [](const Drone& a, const Drone& b) { return a.id < b.id; });
    std::vector<double> rates = drone_rates(perf, drones);
    double max_rate = *std::max_element(rates.begin(), rates.end());
    double reserve = config.reserve_percent;

    std::vector<Path> paths =
        enumerate_simple_paths(net, request.source, request.destination, max_paths);

    double best_total = kInf;
    const Path* best_path = nullptr;
    std::vector<char> best_stops;

    std::vector<double> cum, cost;
    std::vector<int> parent;
    for (const Path& path : paths) {
        const std::size_t k = path.nodes.size() - 1;  // edge count
        cum.assign(k + 1, 0.0);
        for (std::size_t i = 0; i < k; ++i)
            cum[i + 1] = cum[i] + *net.edge_km(path.nodes[i], path.nodes[i + 1]);

        // cost[j]: cheapest time to stand at path node j fully charged (or at
        // the destination, uncharged). A hop i -> j is allowed when the
        // heaviest drone can fly it on a full battery.
        cost.assign(k + 1, kInf);
        parent.assign(k + 1, -1);
        cost[0] = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                if (cost[i] == kInf) continue;
                double d = cum[j] - cum[i];
                if (100.0 - max_rate * d < reserve - kFeasibilityEpsilonPercent)
                    continue;
                double step = cost[i] + travel_minutes(perf, d);
                if (j < k)
                    step += full_recharge_time(net, perf, drones, rates,
                                               path.nodes[j], d)
                                .total_minutes;
                if (step < cost[j]) {
                    cost[j] = step;
                    parent[j] = static_cast<int>(i);
                }
            }
        }
        if (cost[k] < best_total) {
            best_total = cost[k];
            best_path = &path;
            best_stops.assign(k + 1, 0);
            for (int j = parent[k]; j > 0; j = parent[j]) best_stops[j] = 1;
        }
    }
    if (!best_path)
        throw NoFeasiblePath("no simple path is flyable with full recharges");

    return replay_path(net, perf, drones, rates, *best_path, best_stops);
}

}  // namespace swarmplan
