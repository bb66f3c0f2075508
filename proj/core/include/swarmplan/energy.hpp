#pragma once

#include <span>
#include <vector>

#include "swarmplan/errors.hpp"

namespace swarmplan {

/// Slack applied to battery feasibility comparisons so that exact-boundary
/// cases (arriving with precisely the reserve left) count as reachable.
inline constexpr double kFeasibilityEpsilonPercent = 1e-9;

/// Fleet-wide drone parameters. One set per fleet; drones are homogeneous.
struct DronePerformance {
    double speed_kmh = 65.0;
    double full_charge_minutes = 60.0;        // 0% -> 100%
    double rate_at_ref_percent_per_km = 0.1;  // consumption at the reference payload
    double ref_payload_kg = 5.0;
    double base_fraction = 0.5;  // payload-independent share of consumption
    double max_payload_kg = 5.0;
};

/// Throws InvalidParameter on out-of-range fields.
void validate(const DronePerformance& perf);

/// Battery % consumed per km at the given payload. Affine in payload:
///   rate(p) = rate_ref * (base_fraction + (1 - base_fraction) * p / ref_payload)
/// so rate(ref_payload) equals the reference rate exactly, and base_fraction 0
/// reduces to pure proportionality.
double consumption_rate(const DronePerformance& perf, double payload_kg);

/// True iff the drone reaches `distance_km` with at least `reserve_percent`
/// battery left. The boundary is inclusive.
bool can_reach(const DronePerformance& perf, double battery_percent, double payload_kg,
               double distance_km, double reserve_percent = 0.0);

struct ChargeDemand {
    int drone_id = 0;
    double from_percent = 0.0;
    double to_percent = 0.0;
};

/// Linear charging: minutes to move from from_percent to to_percent.
double charge_duration(const DronePerformance& perf, const ChargeDemand& demand);

struct NodeTimeBreakdown {
    double charging_minutes = 0.0;  // ct: longest individual charge
    double waiting_minutes = 0.0;   // wt: extra time from pad contention
    double total_minutes = 0.0;     // NT = ct + wt
};

/// Pad-contention model: demands sorted by duration descending are served in
/// rounds of `pad_count`; each round lasts as long as its longest charge.
/// total = sum of round maxima, ct = longest individual charge, wt = total - ct.
NodeTimeBreakdown node_time(const DronePerformance& perf,
                            std::span<const ChargeDemand> demands, int pad_count);

struct BatteryPayload {
    double battery_percent = 100.0;
    double payload_kg = 0.0;
};

/// Charge targets for a swarm sharing `pad_count` pads with `next_leg_km`
/// still to fly. With enough pads for everyone the swarm charges to 100%;
/// otherwise each drone only charges to what the next leg needs (plus
/// reserve), never discharging below its current level. Demand drone_ids are
/// indices into `drones`.
std::vector<ChargeDemand> cooperative_targets(const DronePerformance& perf,
                                              std::span<const BatteryPayload> drones,
                                              int pad_count, double next_leg_km,
                                              double reserve_percent = 0.0);

}  // namespace swarmplan
