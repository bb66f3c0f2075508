#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swarmplan/baselines.hpp"

namespace swarmplan {

struct RequestGenParams {
    std::size_t count = 1;
    std::uint64_t seed = 0;
    int max_packages = 10;
    double max_weight_kg = 5.0;
};

/// Random requests: distinct uniform endpoints, package count uniform in
/// 2..max_packages, weights uniform in (0, max_weight]. Deterministic per seed.
std::vector<DeliveryRequest> generate_requests(const SkywayNetwork& net,
                                               const RequestGenParams& params);

/// Request list JSON ({"requests": [...]}; a single request object is also
/// accepted and yields a one-element list).
std::vector<DeliveryRequest> load_requests(std::istream& in);
void save_requests(const std::vector<DeliveryRequest>& requests, std::ostream& out);

std::string itinerary_to_json(const Itinerary& itinerary);
Itinerary itinerary_from_json(std::istream& in);

/// The `drone` config object: fleet performance plus the reserve the planner
/// must keep.
struct DroneConfig {
    DronePerformance perf;
    double reserve_percent = 0.0;
};

struct PlannerGrid {
    std::vector<int> lookaheads{2};
    std::vector<int> max_splits{2};
    std::vector<bool> cooperative{false};
    double window_min = 60.0;
    std::size_t partition_budget = 100000;
};

struct BaselinesToggle {
    bool dijkstra = true;
    bool brute_force = false;
    std::size_t path_budget = 10000;
};

/// Either a file path or inline generation parameters.
struct NetworkSource {
    std::string file;  // wins when nonempty
    RandomNetworkParams params;
    std::uint64_t seed = 1;
};

struct ExperimentConfig {
    NetworkSource network;
    DroneConfig drone;
    RequestGenParams requests{200, 42, 10, 5.0};
    PlannerGrid planners;
    BaselinesToggle baselines;
};

ExperimentConfig load_experiment_config(std::istream& in);
DroneConfig load_drone_config(std::istream& in);
SkywayNetwork realize_network(const NetworkSource& source);

PlannerConfig make_planner_config(const ExperimentConfig& config, int lookahead,
                                  int max_splits, bool cooperative);

/// One (request, algorithm variant) outcome. `hops` counts the nodes on the
/// shortest source-destination path, endpoints included. Rows whose planner
/// failed carry the error name in `status` and no numeric results.
struct ResultRow {
    std::size_t request_id = 0;
    std::string algorithm;  // sequential | parallel | dijkstra | brute_force
    int lookahead = -1;     // -1 = not applicable
    int max_splits = -1;
    int cooperative = -1;  // 0 / 1, -1 = not applicable
    int hops = 0;
    double total_min = 0.0;
    double travel_min = 0.0;
    double charge_min = 0.0;
    double wait_min = 0.0;
    double spread_min = 0.0;
    std::int64_t plan_us = 0;
    std::string status = "ok";
};

/// Runs every configured algorithm variant over the generated corpus. Planner
/// wall-clock is only recorded when `measure_timing` is set, keeping the
/// default output reproducible byte for byte.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      bool measure_timing = false);

void write_raw_csv(const std::vector<ResultRow>& rows, std::ostream& out);

struct SummaryRow {
    std::string algorithm;
    int lookahead = -1;
    int max_splits = -1;
    int cooperative = -1;
    int hops = 0;
    std::size_t n = 0;
    std::size_t failed = 0;
    double mean_total_min = 0.0;
    double mean_travel_min = 0.0;
    double mean_charge_min = 0.0;
    double mean_wait_min = 0.0;
    double mean_spread_min = 0.0;
    double mean_plan_us = 0.0;
};

/// Per (algorithm variant, hop bucket) means over the rows that succeeded.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

}  // namespace swarmplan
