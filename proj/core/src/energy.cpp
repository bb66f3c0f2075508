#include "swarmplan/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swarmplan {

void validate(const DronePerformance& perf) {
    if (!(perf.speed_kmh > 0.0))
        throw InvalidParameter("speed_kmh must be positive");
    if (!(perf.full_charge_minutes > 0.0))
        throw InvalidParameter("full_charge_minutes must be positive");
    if (!(perf.rate_at_ref_percent_per_km > 0.0))
        throw InvalidParameter("rate_at_ref_percent_per_km must be positive");
    if (!(perf.base_fraction >= 0.0 && perf.base_fraction <= 1.0))
        throw InvalidParameter("base_fraction must lie in [0, 1]");
    if (!(perf.ref_payload_kg > 0.0) || perf.ref_payload_kg > perf.max_payload_kg)
        throw InvalidParameter("ref_payload_kg must lie in (0, max_payload_kg]");
}

double consumption_rate(const DronePerformance& perf, double payload_kg) {
    if (payload_kg < 0.0)
        throw InvalidParameter("payload must be nonnegative");
    if (payload_kg > perf.max_payload_kg)
        throw PayloadExceedsCapacity("payload " + std::to_string(payload_kg) +
                                     " kg exceeds capacity " +
                                     std::to_string(perf.max_payload_kg) + " kg");
    return perf.rate_at_ref_percent_per_km *
           (perf.base_fraction +
            (1.0 - perf.base_fraction) * payload_kg / perf.ref_payload_kg);
}

bool can_reach(const DronePerformance& perf, double battery_percent, double payload_kg,
               double distance_km, double reserve_percent) {
    double rate = consumption_rate(perf, payload_kg);
    return battery_percent - rate * distance_km >=
           reserve_percent - kFeasibilityEpsilonPercent;
}

double charge_duration(const DronePerformance& perf, const ChargeDemand& demand) {
    double delta = demand.to_percent - demand.from_percent;
    if (delta < -1e-9)
        throw InvalidParameter("charge demand must not discharge");
    return std::max(0.0, delta) / 100.0 * perf.full_charge_minutes;
}

NodeTimeBreakdown node_time(const DronePerformance& perf,
                            std::span<const ChargeDemand> demands, int pad_count) {
    if (pad_count < 1)
        throw InvalidParameter("pad_count must be >= 1");
    NodeTimeBreakdown out;
    if (demands.empty()) return out;

    std::vector<std::pair<double, int>> durations;
    durations.reserve(demands.size());
    for (const ChargeDemand& d : demands)
        durations.emplace_back(charge_duration(perf, d), d.drone_id);
    std::sort(durations.begin(), durations.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second < y.second;
    });

    // Longest charges go first, pad_count at a time; every round lasts as long
    // as its longest member (the first one, given the descending sort).
    for (std::size_t i = 0; i < durations.size(); i += pad_count)
        out.total_minutes += durations[i].first;
    out.charging_minutes = durations.front().first;
    out.waiting_minutes = out.total_minutes - out.charging_minutes;
    return out;
}

std::vector<ChargeDemand> cooperative_targets(const DronePerformance& perf,
                                              std::span<const BatteryPayload> drones,
                                              int pad_count, double next_leg_km,
                                              double reserve_percent) {
    if (next_leg_km < 0.0)
        throw InvalidParameter("next_leg_km must be nonnegative");
    bool contended = drones.size() > static_cast<std::size_t>(pad_count);
    std::vector<ChargeDemand> out;
    out.reserve(drones.size());
    for (std::size_t i = 0; i < drones.size(); ++i) {
        const BatteryPayload& d = drones[i];
        double target = 100.0;
        if (contended) {
            double needed =
                consumption_rate(perf, d.payload_kg) * next_leg_km + reserve_percent;
            target = std::min(100.0, needed);
        } else {
            consumption_rate(perf, d.payload_kg);  // still reject illegal payloads
        }
        target = std::max(target, d.battery_percent);  // a pad never discharges
        out.push_back({static_cast<int>(i), d.battery_percent, target});
    }
    return out;
}

}  // namespace swarmplan
