// Command-line front end: network/request generation, single-request planning,
// the experiment grid, and itinerary validation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarmplan/harness.hpp"

namespace {

using namespace swarmplan;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidParameter("cannot write to " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot read " + path);
    return in;
}

struct PlanOptions {
    std::string network_file;
    std::string requests_file;
    std::size_t request_index = 0;
    int source = -1;
    int destination = -1;
    std::vector<double> weights;
    std::string algorithm = "sequential";
    int lookahead = 2;
    int max_splits = 2;
    bool cooperative = false;
    double window_min = 60.0;
    std::string drone_config_file;
    std::size_t path_budget = 10000;
    std::string out_file;
};

DeliveryRequest resolve_request(const PlanOptions& opt) {
    if (!opt.requests_file.empty()) {
        auto in = open_in(opt.requests_file);
        std::vector<DeliveryRequest> all = load_requests(in);
        if (opt.request_index >= all.size())
            throw InvalidParameter("request index " + std::to_string(opt.request_index) +
                                   " out of range (file has " +
                                   std::to_string(all.size()) + ")");
        return all[opt.request_index];
    }
    if (opt.source < 0 || opt.destination < 0 || opt.weights.empty())
        throw InvalidParameter(
            "provide --requests/--index or --source, --destination and --weights");
    DeliveryRequest req;
    req.source = static_cast<NodeId>(opt.source);
    req.destination = static_cast<NodeId>(opt.destination);
    req.package_weights_kg = opt.weights;
    return req;
}

DroneConfig resolve_drone(const std::string& file) {
    if (file.empty()) return {};
    auto in = open_in(file);
    return load_drone_config(in);
}

int run_plan(const PlanOptions& opt) {
    SkywayNetwork net = load_network_file(opt.network_file);
    DeliveryRequest request = resolve_request(opt);
    DroneConfig drone = resolve_drone(opt.drone_config_file);

    PlannerConfig pc;
    pc.lookahead_l = opt.lookahead;
    pc.max_splits_x = opt.max_splits;
    pc.arrival_window_w_minutes = opt.window_min;
    pc.cooperative = opt.cooperative;
    pc.reserve_percent = drone.reserve_percent;

    SubSwarm swarm = build_swarm(request, drone.perf);
    Itinerary it;
    if (opt.algorithm == "sequential")
        it = compose_sequential(net, swarm, request, drone.perf, pc);
    else if (opt.algorithm == "parallel")
        it = compose_parallel(net, swarm, request, drone.perf, pc);
    else if (opt.algorithm == "dijkstra")
        it = dijkstra_baseline(net, swarm, request, drone.perf, drone.reserve_percent);
    else if (opt.algorithm == "brute-force")
        it = brute_force_oracle(net, swarm, request, drone.perf, pc, opt.path_budget);
    else
        throw InvalidParameter("unknown algorithm \"" + opt.algorithm + "\"");

    std::string payload = itinerary_to_json(it);
    if (opt.out_file.empty()) {
        std::cout << payload;
    } else {
        auto out = open_out(opt.out_file);
        out << payload;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swarm delivery planning on skyway networks"};
    app.require_subcommand(1);

    // gen-network
    auto* gen_net = app.add_subcommand("gen-network", "Generate a random connected network");
    RandomNetworkParams net_params;
    std::uint64_t net_seed = 1;
    std::string net_out;
    gen_net->add_option("--nodes", net_params.node_count, "Node count")->default_val(30);
    gen_net->add_option("--edge-density", net_params.edge_density,
                        "Fraction of node pairs carrying an edge");
    gen_net->add_option("--pad-min", net_params.pad_min, "Minimum pads per node");
    gen_net->add_option("--pad-max", net_params.pad_max, "Maximum pads per node");
    gen_net->add_option("--dist-min", net_params.dist_min_km, "Minimum edge length (km)");
    gen_net->add_option("--dist-max", net_params.dist_max_km, "Maximum edge length (km)");
    gen_net->add_option("--seed", net_seed, "RNG seed");
    gen_net->add_option("--out", net_out, "Output file (stdout when omitted)");

    // gen-requests
    auto* gen_req = app.add_subcommand("gen-requests", "Generate a request corpus");
    std::string req_network;
    RequestGenParams req_params;
    std::string req_out;
    gen_req->add_option("--network", req_network, "Network JSON file")->required();
    gen_req->add_option("--count", req_params.count, "Number of requests")->default_val(100);
    gen_req->add_option("--seed", req_params.seed, "RNG seed");
    gen_req->add_option("--max-packages", req_params.max_packages, "Packages per request cap");
    gen_req->add_option("--max-weight", req_params.max_weight_kg, "Package weight cap (kg)");
    gen_req->add_option("--out", req_out, "Output file (stdout when omitted)");

    // plan
    auto* plan = app.add_subcommand("plan", "Plan one request and print the itinerary");
    PlanOptions plan_opt;
    plan->add_option("--network", plan_opt.network_file, "Network JSON file")->required();
    plan->add_option("--requests", plan_opt.requests_file, "Request list JSON file");
    plan->add_option("--index", plan_opt.request_index, "Request index within --requests");
    plan->add_option("--source", plan_opt.source, "Source node (inline request)");
    plan->add_option("--destination", plan_opt.destination, "Destination node (inline request)");
    plan->add_option("--weights", plan_opt.weights, "Package weights in kg (inline request)");
    plan->add_option("--algorithm", plan_opt.algorithm,
                     "sequential | parallel | dijkstra | brute-force");
    plan->add_option("--lookahead", plan_opt.lookahead, "Lookahead level l");
    plan->add_option("--max-splits", plan_opt.max_splits, "Split cap x (parallel)");
    plan->add_flag("--cooperative", plan_opt.cooperative, "Partial charging under contention");
    plan->add_option("--window", plan_opt.window_min, "Arrival window w (minutes)");
    plan->add_option("--drone-config", plan_opt.drone_config_file,
                     "Drone parameter JSON (defaults otherwise)");
    plan->add_option("--path-budget", plan_opt.path_budget, "Simple-path cap (brute-force)");
    plan->add_option("--out", plan_opt.out_file, "Output file (stdout when omitted)");

    // bench
    auto* bench = app.add_subcommand("bench", "Run the experiment grid to CSV");
    std::string bench_config, bench_out, bench_summary;
    bool bench_timing = false;
    bench->add_option("--config", bench_config, "Experiment config JSON")->required();
    bench->add_option("--out", bench_out, "Raw CSV output file")->required();
    bench->add_option("--summary", bench_summary, "Summary CSV output file");
    bench->add_flag("--timing", bench_timing,
                    "Record planner wall-clock (column is 0 otherwise, keeping "
                    "output reproducible)");

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Re-simulate and check an itinerary");
    std::string val_network, val_itinerary, val_request, val_drone;
    double val_window = 60.0;
    validate_cmd->add_option("--network", val_network, "Network JSON file")->required();
    validate_cmd->add_option("--itinerary", val_itinerary, "Itinerary JSON file")->required();
    validate_cmd->add_option("--request", val_request, "Request JSON file")->required();
    validate_cmd->add_option("--drone-config", val_drone, "Drone parameter JSON");
    validate_cmd->add_option("--window", val_window, "Arrival window w (minutes)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_net->parsed()) {
            SkywayNetwork net = generate_random_network(net_params, net_seed);
            if (net_out.empty()) {
                save_network(net, std::cout);
            } else {
                auto out = open_out(net_out);
                save_network(net, out);
            }
            return 0;
        }
        if (gen_req->parsed()) {
            SkywayNetwork net = load_network_file(req_network);
            std::vector<DeliveryRequest> requests = generate_requests(net, req_params);
            if (req_out.empty()) {
                save_requests(requests, std::cout);
            } else {
                auto out = open_out(req_out);
                save_requests(requests, out);
            }
            return 0;
        }
        if (plan->parsed()) return run_plan(plan_opt);
        if (bench->parsed()) {
            auto in = open_in(bench_config);
            ExperimentConfig config = load_experiment_config(in);
            std::vector<ResultRow> rows = run_experiment(config, bench_timing);
            {
                auto out = open_out(bench_out);
                write_raw_csv(rows, out);
            }
            if (!bench_summary.empty()) {
                auto out = open_out(bench_summary);
                write_summary_csv(summarize(rows), out);
            }
            std::cout << rows.size() << " rows written to " << bench_out << '\n';
            return 0;
        }
        if (validate_cmd->parsed()) {
            SkywayNetwork net = load_network_file(val_network);
            auto it_in = open_in(val_itinerary);
            Itinerary it = itinerary_from_json(it_in);
            auto req_in = open_in(val_request);
            std::vector<DeliveryRequest> requests = load_requests(req_in);
            if (requests.size() != 1)
                throw InvalidParameter("validate expects exactly one request");
            DroneConfig drone = resolve_drone(val_drone);
            PlannerConfig pc;
            pc.arrival_window_w_minutes = val_window;
            pc.reserve_percent = drone.reserve_percent;
            validate_itinerary(net, requests[0], drone.perf, pc, it);
            std::cout << "itinerary OK\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
