#include "swarmplan/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace swarmplan {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed)
            if (it.key() == key) ok = true;
        if (!ok)
            throw ParseError("unknown field \"" + it.key() + "\" in " + context);
    }
}

json parse_stream(std::istream& in, const char* what) {
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid ") + what + " JSON: " + e.what());
    }
}

}  // namespace

std::vector<DeliveryRequest> generate_requests(const SkywayNetwork& net,
                                               const RequestGenParams& params) {
    if (params.count < 1)
        throw InvalidParameter("request count must be >= 1");
    if (params.max_packages < 2)
        throw InvalidParameter("max_packages must be >= 2");
    if (!(params.max_weight_kg > 0.0))
        throw InvalidParameter("max_weight_kg must be positive");
    if (net.node_count() < 2)
        throw InvalidParameter("need at least 2 nodes to draw distinct endpoints");

    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<NodeId> node_dist(
        0, static_cast<NodeId>(net.node_count() - 1));
    std::uniform_int_distribution<int> count_dist(2, params.max_packages);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<DeliveryRequest> out;
    out.reserve(params.count);
    for (std::size_t i = 0; i < params.count; ++i) {
        DeliveryRequest req;
        req.source = node_dist(rng);
        do {
            req.destination = node_dist(rng);
        } while (req.destination == req.source);
        int packages = count_dist(rng);
        req.package_weights_kg.reserve(packages);
        for (int p = 0; p < packages; ++p)
            req.package_weights_kg.push_back(params.max_weight_kg * (1.0 - unit(rng)));
        out.push_back(std::move(req));
    }
    return out;
}

// --- request JSON -----------------------------------------------------------

namespace {

DeliveryRequest request_from_json(const json& obj, const std::string& context) {
    if (!obj.is_object()) throw ParseError(context + " must be an object");
    reject_unknown(obj, {"source", "destination", "weights_kg"}, context);
    for (const char* key : {"source", "destination", "weights_kg"})
        if (!obj.contains(key))
            throw ParseError("missing field \"" + std::string(key) + "\" in " + context);
    DeliveryRequest req;
    req.source = obj["source"].get<NodeId>();
    req.destination = obj["destination"].get<NodeId>();
    if (!obj["weights_kg"].is_array())
        throw ParseError("\"weights_kg\" must be an array in " + context);
    for (const json& w : obj["weights_kg"])
        req.package_weights_kg.push_back(w.get<double>());
    if (req.source == req.destination)
        throw ValidationError("request source equals destination in " + context);
    return req;
}

json request_to_json(const DeliveryRequest& req) {
    return json{{"source", req.source},
                {"destination", req.destination},
                {"weights_kg", req.package_weights_kg}};
}

}  // namespace

std::vector<DeliveryRequest> load_requests(std::istream& in) {
    json doc = parse_stream(in, "request");
    std::vector<DeliveryRequest> out;
    if (doc.is_object() && doc.contains("requests")) {
        reject_unknown(doc, {"requests"}, "request document");
        std::size_t i = 0;
        for (const json& item : doc["requests"])
            out.push_back(request_from_json(item, "requests[" + std::to_string(i++) + "]"));
    } else {
        out.push_back(request_from_json(doc, "request document"));
    }
    return out;
}

void save_requests(const std::vector<DeliveryRequest>& requests, std::ostream& out) {
    json doc;
    doc["requests"] = json::array();
    for (const DeliveryRequest& req : requests) doc["requests"].push_back(request_to_json(req));
    out << doc.dump(2) << '\n';
}

// --- itinerary JSON ----------------------------------------------------------

std::string itinerary_to_json(const Itinerary& it) {
    json doc;
    doc["subswarms"] = json::array();
    for (const SubSwarmRecord& rec : it.subswarms)
        doc["subswarms"].push_back({{"id", rec.id},
                                    {"drones", rec.drone_ids},
                                    {"created_min", rec.created_min},
                                    {"created_at", rec.created_at}});
    doc["legs"] = json::array();
    for (const Leg& leg : it.legs) {
        json j{{"subswarm", leg.subswarm_id}, {"kind", to_string(leg.kind)},
               {"from", leg.from},            {"to", leg.to},
               {"start_min", leg.start_min},  {"dur_min", leg.dur_min}};
        if (leg.kind == LegKind::Charge) {
            j["targets"] = json::array();
            for (const ChargeTarget& t : leg.targets)
                j["targets"].push_back({{"drone", t.drone_id}, {"to_percent", t.to_percent}});
        }
        doc["legs"].push_back(std::move(j));
    }
    doc["totals"] = {{"total_min", it.total_min},   {"travel_min", it.travel_min},
                     {"charge_min", it.charge_min}, {"wait_min", it.wait_min},
                     {"spread_min", it.spread_min}};
    return doc.dump(2) + "\n";
}

Itinerary itinerary_from_json(std::istream& in) {
    json doc = parse_stream(in, "itinerary");
    if (!doc.is_object()) throw ParseError("itinerary document must be an object");
    reject_unknown(doc, {"subswarms", "legs", "totals"}, "itinerary document");
    Itinerary it;
    for (const json& rec : doc.value("subswarms", json::array())) {
        reject_unknown(rec, {"id", "drones", "created_min", "created_at"}, "subswarm");
        SubSwarmRecord r;
        r.id = rec.at("id").get<int>();
        for (const json& d : rec.at("drones")) r.drone_ids.push_back(d.get<int>());
        r.created_min = rec.value("created_min", 0.0);
        r.created_at = rec.value("created_at", NodeId{0});
        it.subswarms.push_back(std::move(r));
    }
    for (const json& jleg : doc.value("legs", json::array())) {
        reject_unknown(jleg, {"subswarm", "kind", "from", "to", "start_min", "dur_min", "targets"},
                       "leg");
        Leg leg;
        leg.subswarm_id = jleg.at("subswarm").get<int>();
        std::string kind = jleg.at("kind").get<std::string>();
        if (kind == "travel")
            leg.kind = LegKind::Travel;
        else if (kind == "charge")
            leg.kind = LegKind::Charge;
        else if (kind == "wait")
            leg.kind = LegKind::Wait;
        else
            throw ParseError("unknown leg kind \"" + kind + "\"");
        leg.from = jleg.at("from").get<NodeId>();
        leg.to = jleg.at("to").get<NodeId>();
        leg.start_min = jleg.at("start_min").get<double>();
        leg.dur_min = jleg.at("dur_min").get<double>();
        for (const json& t : jleg.value("targets", json::array())) {
            reject_unknown(t, {"drone", "to_percent"}, "charge target");
            leg.targets.push_back({t.at("drone").get<int>(), t.at("to_percent").get<double>()});
        }
        it.legs.push_back(std::move(leg));
    }
    const json& totals = doc.value("totals", json::object());
    it.total_min = totals.value("total_min", 0.0);
    it.travel_min = totals.value("travel_min", 0.0);
    it.charge_min = totals.value("charge_min", 0.0);
    it.wait_min = totals.value("wait_min", 0.0);
    it.spread_min = totals.value("spread_min", 0.0);
    return it;
}

// --- configuration ------------------------------------------------------------

namespace {

DroneConfig drone_config_from_json(const json& obj) {
    reject_unknown(obj,
                   {"speed_kmh", "full_charge_min", "rate_percent_per_km_at_ref",
                    "ref_payload_kg", "base_fraction", "max_payload_kg",
                    "reserve_percent"},
                   "drone config");
    DroneConfig cfg;
    cfg.perf.speed_kmh = obj.value("speed_kmh", cfg.perf.speed_kmh);
    cfg.perf.full_charge_minutes = obj.value("full_charge_min", cfg.perf.full_charge_minutes);
    cfg.perf.rate_at_ref_percent_per_km =
        obj.value("rate_percent_per_km_at_ref", cfg.perf.rate_at_ref_percent_per_km);
    cfg.perf.ref_payload_kg = obj.value("ref_payload_kg", cfg.perf.ref_payload_kg);
    cfg.perf.base_fraction = obj.value("base_fraction", cfg.perf.base_fraction);
    cfg.perf.max_payload_kg = obj.value("max_payload_kg", cfg.perf.max_payload_kg);
    cfg.reserve_percent = obj.value("reserve_percent", cfg.reserve_percent);
    validate(cfg.perf);
    if (cfg.reserve_percent < 0.0)
        throw InvalidParameter("reserve_percent must be >= 0");
    return cfg;
}

NetworkSource network_source_from_json(const json& obj) {
    NetworkSource src;
    if (obj.contains("file")) {
        reject_unknown(obj, {"file"}, "network config");
        src.file = obj["file"].get<std::string>();
        return src;
    }
    reject_unknown(obj, {"nodes", "edge_density", "pads", "distance_km", "seed"},
                   "network config");
    if (obj.contains("nodes")) src.params.node_count = obj["nodes"].get<std::size_t>();
    if (obj.contains("edge_density")) src.params.edge_density = obj["edge_density"].get<double>();
    if (obj.contains("pads")) {
        const json& pads = obj["pads"];
        if (!pads.is_array() || pads.size() != 2)
            throw ParseError("\"pads\" must be a [min, max] pair");
        src.params.pad_min = pads[0].get<int>();
        src.params.pad_max = pads[1].get<int>();
    }
    if (obj.contains("distance_km")) {
        const json& range = obj["distance_km"];
        if (!range.is_array() || range.size() != 2)
            throw ParseError("\"distance_km\" must be a [min, max] pair");
        src.params.dist_min_km = range[0].get<double>();
        src.params.dist_max_km = range[1].get<double>();
    }
    if (obj.contains("seed")) src.seed = obj["seed"].get<std::uint64_t>();
    return src;
}

}  // namespace

DroneConfig load_drone_config(std::istream& in) {
    json doc = parse_stream(in, "drone config");
    return drone_config_from_json(doc);
}

ExperimentConfig load_experiment_config(std::istream& in) {
    json doc = parse_stream(in, "experiment config");
    if (!doc.is_object()) throw ParseError("experiment config must be an object");
    reject_unknown(doc, {"network", "drone", "requests", "planners", "baselines"},
                   "experiment config");
    if (!doc.contains("network"))
        throw ParseError("experiment config needs a \"network\" section");

    ExperimentConfig cfg;
    cfg.network = network_source_from_json(doc["network"]);
    if (doc.contains("drone")) cfg.drone = drone_config_from_json(doc["drone"]);
    if (doc.contains("requests")) {
        const json& r = doc["requests"];
        reject_unknown(r, {"count", "seed", "max_packages", "max_weight_kg"}, "requests config");
        cfg.requests.count = r.value("count", cfg.requests.count);
        cfg.requests.seed = r.value("seed", cfg.requests.seed);
        cfg.requests.max_packages = r.value("max_packages", cfg.requests.max_packages);
        cfg.requests.max_weight_kg = r.value("max_weight_kg", cfg.requests.max_weight_kg);
    }
    if (doc.contains("planners")) {
        const json& p = doc["planners"];
        reject_unknown(p,
                       {"lookaheads", "max_splits", "cooperative", "window_min",
                        "partition_budget"},
                       "planners config");
        if (p.contains("lookaheads"))
            cfg.planners.lookaheads = p["lookaheads"].get<std::vector<int>>();
        if (p.contains("max_splits"))
            cfg.planners.max_splits = p["max_splits"].get<std::vector<int>>();
        if (p.contains("cooperative"))
            cfg.planners.cooperative = p["cooperative"].get<std::vector<bool>>();
        cfg.planners.window_min = p.value("window_min", cfg.planners.window_min);
        cfg.planners.partition_budget =
            p.value("partition_budget", cfg.planners.partition_budget);
    }
    if (doc.contains("baselines")) {
        const json& b = doc["baselines"];
        reject_unknown(b, {"dijkstra", "brute_force", "path_budget"}, "baselines config");
        cfg.baselines.dijkstra = b.value("dijkstra", cfg.baselines.dijkstra);
        cfg.baselines.brute_force = b.value("brute_force", cfg.baselines.brute_force);
        cfg.baselines.path_budget = b.value("path_budget", cfg.baselines.path_budget);
    }
    if (cfg.planners.lookaheads.empty() || cfg.planners.max_splits.empty() ||
        cfg.planners.cooperative.empty())
        throw InvalidParameter("planner grid lists must not be empty");
    return cfg;
}

SkywayNetwork realize_network(const NetworkSource& source) {
    if (!source.file.empty()) return load_network_file(source.file);
    return generate_random_network(source.params, source.seed);
}

PlannerConfig make_planner_config(const ExperimentConfig& config, int lookahead,
                                  int max_splits, bool cooperative) {
    PlannerConfig out;
    out.lookahead_l = lookahead;
    out.max_splits_x = max_splits;
    out.arrival_window_w_minutes = config.planners.window_min;
    out.cooperative = cooperative;
    out.reserve_percent = config.drone.reserve_percent;
    out.partition_budget = config.planners.partition_budget;
    return out;
}

// --- experiment runner ---------------------------------------------------------

namespace {

struct Variant {
    std::string algorithm;
    int lookahead = -1;
    int max_splits = -1;
    int cooperative = -1;
};

ResultRow run_variant(const SkywayNetwork& net, const DeliveryRequest& request,
                      std::size_t request_id, int hops, const ExperimentConfig& cfg,
                      const Variant& variant, bool measure_timing) {
    ResultRow row;
    row.request_id = request_id;
    row.algorithm = variant.algorithm;
    row.lookahead = variant.lookahead;
    row.max_splits = variant.max_splits;
    row.cooperative = variant.cooperative;
    row.hops = hops;

    PlannerConfig pc = make_planner_config(cfg, std::max(variant.lookahead, 0),
                                           std::max(variant.max_splits, 1),
                                           variant.cooperative == 1);
    try {
        SubSwarm swarm = build_swarm(request, cfg.drone.perf);
        auto t0 = std::chrono::steady_clock::now();
        Itinerary it;
        if (variant.algorithm == "sequential")
            it = compose_sequential(net, swarm, request, cfg.drone.perf, pc);
        else if (variant.algorithm == "parallel")
            it = compose_parallel(net, swarm, request, cfg.drone.perf, pc);
        else if (variant.algorithm == "dijkstra")
            it = dijkstra_baseline(net, swarm, request, cfg.drone.perf,
                                   cfg.drone.reserve_percent);
        else
            it = brute_force_oracle(net, swarm, request, cfg.drone.perf, pc,
                                    cfg.baselines.path_budget);
        auto t1 = std::chrono::steady_clock::now();
        if (measure_timing)
            row.plan_us =
                std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
        row.total_min = it.total_min;
        row.travel_min = it.travel_min;
        row.charge_min = it.charge_min;
        row.wait_min = it.wait_min;
        row.spread_min = it.spread_min;
    } catch (const Error& e) {
        row.status = e.name();
    }
    return row;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      bool measure_timing) {
    SkywayNetwork net = realize_network(config.network);
    std::vector<DeliveryRequest> requests = generate_requests(net, config.requests);

    std::vector<Variant> variants;
    for (int l : config.planners.lookaheads)
        for (bool coop : config.planners.cooperative)
            variants.push_back({"sequential", l, -1, coop ? 1 : 0});
    for (int l : config.planners.lookaheads)
        for (int x : config.planners.max_splits)
            for (bool coop : config.planners.cooperative)
                variants.push_back({"parallel", l, x, coop ? 1 : 0});
    if (config.baselines.dijkstra) variants.push_back({"dijkstra", -1, -1, -1});
    if (config.baselines.brute_force) variants.push_back({"brute_force", -1, -1, -1});

    std::vector<ResultRow> rows;
    rows.reserve(requests.size() * variants.size());
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const DeliveryRequest& request = requests[i];
        int hops =
            static_cast<int>(shortest_path(net, request.source, request.destination)
                                 .path.nodes.size());
        for (const Variant& variant : variants)
            rows.push_back(
                run_variant(net, request, i, hops, config, variant, measure_timing));
    }
    return rows;
}

// --- CSV ------------------------------------------------------------------------

namespace {

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string opt_int(int value) { return value < 0 ? "" : std::to_string(value); }

}  // namespace

void write_raw_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "request_id,algorithm,lookahead,max_splits,cooperative,hops,total_min,"
           "travel_min,charge_min,wait_min,spread_min,plan_us,status\n";
    for (const ResultRow& r : rows) {
        out << r.request_id << ',' << r.algorithm << ',' << opt_int(r.lookahead) << ','
            << opt_int(r.max_splits) << ',' << opt_int(r.cooperative) << ',' << r.hops
            << ',';
        if (r.status == "ok")
            out << fmt(r.total_min) << ',' << fmt(r.travel_min) << ','
                << fmt(r.charge_min) << ',' << fmt(r.wait_min) << ','
                << fmt(r.spread_min);
        else
            out << ",,,,";
        out << ',' << r.plan_us << ',' << r.status << '\n';
    }
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
    using Key = std::tuple<std::string, int, int, int, int>;
    std::map<Key, SummaryRow> groups;
    for (const ResultRow& r : rows) {
        Key key{r.algorithm, r.lookahead, r.max_splits, r.cooperative, r.hops};
        SummaryRow& g = groups.try_emplace(key).first->second;
        g.algorithm = r.algorithm;
        g.lookahead = r.lookahead;
        g.max_splits = r.max_splits;
        g.cooperative = r.cooperative;
        g.hops = r.hops;
        if (r.status != "ok") {
            ++g.failed;
            continue;
        }
        ++g.n;
        g.mean_total_min += r.total_min;
        g.mean_travel_min += r.travel_min;
        g.mean_charge_min += r.charge_min;
        g.mean_wait_min += r.wait_min;
        g.mean_spread_min += r.spread_min;
        g.mean_plan_us += static_cast<double>(r.plan_us);
    }
    std::vector<SummaryRow> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) {
        if (g.n > 0) {
            g.mean_total_min /= static_cast<double>(g.n);
            g.mean_travel_min /= static_cast<double>(g.n);
            g.mean_charge_min /= static_cast<double>(g.n);
            g.mean_wait_min /= static_cast<double>(g.n);
            g.mean_spread_min /= static_cast<double>(g.n);
            g.mean_plan_us /= static_cast<double>(g.n);
        }
        out.push_back(g);
    }
    return out;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
    // hops counts the nodes on the shortest source-destination path, endpoints
    // included.
    out << "algorithm,lookahead,max_splits,cooperative,hops_incl_endpoints,n,failed,"
           "mean_total_min,mean_travel_min,mean_charge_min,mean_wait_min,"
           "mean_spread_min,mean_plan_us\n";
    for (const SummaryRow& r : rows) {
        out << r.algorithm << ',' << opt_int(r.lookahead) << ',' << opt_int(r.max_splits)
            << ',' << opt_int(r.cooperative) << ',' << r.hops << ',' << r.n << ','
            << r.failed << ',' << fmt(r.mean_total_min) << ',' << fmt(r.mean_travel_min)
            << ',' << fmt(r.mean_charge_min) << ',' << fmt(r.mean_wait_min) << ','
            << fmt(r.mean_spread_min) << ',' << fmt(r.mean_plan_us) << '\n';
    }
}

}  // namespace swarmplan
