// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Rigs are fixed-seed desk-scale networks; every itinerary produced
// anywhere in the suite is also re-simulated through validate_itinerary and
// counted toward the invariant criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "swarmplan/harness.hpp"

using namespace swarmplan;
using Clock = std::chrono::steady_clock;

namespace {

const DronePerformance kDrone{};  // default fleet parameters

struct Rig {
    SkywayNetwork net;
    std::vector<DeliveryRequest> requests;
};

Rig make_rig(std::size_t nodes, double density, int pad_min, int pad_max,
             std::uint64_t net_seed, std::size_t request_count,
             std::uint64_t request_seed) {
    RandomNetworkParams np;
    np.node_count = nodes;
    np.edge_density = density;
    np.pad_min = pad_min;
    np.pad_max = pad_max;
    np.dist_min_km = 50.0;
    np.dist_max_km = 400.0;
    Rig rig{generate_random_network(np, net_seed), {}};
    rig.requests = generate_requests(rig.net, {request_count, request_seed, 10, 5.0});
    return rig;
}

PlannerConfig planner_config(int lookahead, int max_splits, bool cooperative) {
    PlannerConfig cfg;
    cfg.lookahead_l = lookahead;
    cfg.max_splits_x = max_splits;
    cfg.arrival_window_w_minutes = 60.0;
    cfg.cooperative = cooperative;
    cfg.reserve_percent = 0.0;
    return cfg;
}

int g_validated = 0;
int g_violations = 0;

void audit(const SkywayNetwork& net, const DeliveryRequest& req,
           const PlannerConfig& cfg, const Itinerary& it) {
    ++g_validated;
    try {
        validate_itinerary(net, req, kDrone, cfg, it);
    } catch (const ValidationError& e) {
        ++g_violations;
        if (g_violations <= 5) std::printf("      invariant violation: %s\n", e.what());
    }
}

struct Outcome {
    double total = 0.0;
    std::int64_t plan_us = 0;
    bool ok = false;
};

/// Times the planning call alone; the invariant audit runs outside the clock.
template <typename F>
Outcome run_timed(const SkywayNetwork& net, const DeliveryRequest& req,
                  const PlannerConfig& cfg, F&& plan) {
    Outcome out;
    auto t0 = Clock::now();
    Itinerary it = plan();
    auto t1 = Clock::now();
    out.total = it.total_min;
    out.plan_us = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
    out.ok = true;
    audit(net, req, cfg, it);
    return out;
}

double mean(const std::vector<double>& xs) {
    return xs.empty() ? 0.0
                      : std::accumulate(xs.begin(), xs.end(), 0.0) /
                            static_cast<double>(xs.size());
}

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

// --- criteria ---------------------------------------------------------------

// Small-network rig shared by criteria 1 and 9.
struct OracleRun {
    std::vector<int> hops;
    std::vector<double> oracle_total, seq_total, dijkstra_total;
    std::vector<std::int64_t> oracle_us, seq_us;
    int skipped = 0;
    double elapsed_s = 0.0;
};

OracleRun run_small_rig() {
    Rig rig = make_rig(12, 0.3, 1, 4, 3, 250, 44);
    PlannerConfig cfg = planner_config(2, 2, false);
    OracleRun out;
    auto start = Clock::now();
    for (const DeliveryRequest& req : rig.requests) {
        SubSwarm swarm = build_swarm(req, kDrone);
        int hops = static_cast<int>(
            shortest_path(rig.net, req.source, req.destination).path.nodes.size());
        Outcome oracle;
        try {
            oracle = run_timed(rig.net, req, cfg, [&] {
                return brute_force_oracle(rig.net, swarm, req, kDrone, cfg, 200000);
            });
        } catch (const PathBudgetExceeded&) {
            ++out.skipped;
            continue;
        }
        Outcome seq = run_timed(rig.net, req, cfg, [&] {
            return compose_sequential(rig.net, swarm, req, kDrone, cfg);
        });
        Outcome dij = run_timed(rig.net, req, cfg, [&] {
            return dijkstra_baseline(rig.net, swarm, req, kDrone);
        });
        out.hops.push_back(hops);
        out.oracle_total.push_back(oracle.total);
        out.seq_total.push_back(seq.total);
        out.dijkstra_total.push_back(dij.total);
        out.oracle_us.push_back(oracle.plan_us);
        out.seq_us.push_back(seq.plan_us);
    }
    out.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
}

void criterion_1(const OracleRun& run) {
    int dominated = 0;
    int n = static_cast<int>(run.oracle_total.size());
    for (int i = 0; i < n; ++i)
        if (run.oracle_total[i] <= run.seq_total[i] &&
            run.oracle_total[i] <= run.dijkstra_total[i])
            ++dominated;
    // The runtime target is stated for 100 requests; this rig runs 250.
    double per_100 = run.elapsed_s * 100.0 / std::max(1, n + run.skipped);
    bool pass = dominated == n && n > 0 && per_100 < 60.0;
    report(1, pass,
           "oracle dominance: " + std::to_string(dominated) + "/" + std::to_string(n) +
               " requests dominated (" + std::to_string(run.skipped) +
               " over path budget), " + fmt1(per_100) + " s per 100 requests");
}

struct DefaultRigRun {
    std::vector<double> seq_l0, seq_l1, seq_l2, dij;
    std::vector<double> par_l1_x2, par_l1_x3, par_l1_x4;
    std::vector<std::int64_t> seq_l0_us, seq_l2_us;
};

DefaultRigRun run_default_rig() {
    Rig rig = make_rig(30, 0.07, 1, 4, 7, 200, 42);
    DefaultRigRun out;
    for (const DeliveryRequest& req : rig.requests) {
        SubSwarm swarm = build_swarm(req, kDrone);
        auto seq = [&](int l, std::vector<double>& totals,
                       std::vector<std::int64_t>* times) {
            PlannerConfig cfg = planner_config(l, 2, false);
            Outcome o = run_timed(rig.net, req, cfg, [&] {
                return compose_sequential(rig.net, swarm, req, kDrone, cfg);
            });
            totals.push_back(o.total);
            if (times) times->push_back(o.plan_us);
        };
        seq(0, out.seq_l0, &out.seq_l0_us);
        seq(1, out.seq_l1, nullptr);
        seq(2, out.seq_l2, &out.seq_l2_us);

        auto par = [&](int x, std::vector<double>& totals) {
            PlannerConfig cfg = planner_config(1, x, false);
            Outcome o = run_timed(rig.net, req, cfg, [&] {
                return compose_parallel(rig.net, swarm, req, kDrone, cfg);
            });
            totals.push_back(o.total);
        };
        par(2, out.par_l1_x2);
        par(3, out.par_l1_x3);
        par(4, out.par_l1_x4);

        PlannerConfig cfg = planner_config(2, 2, false);
        Outcome dij = run_timed(rig.net, req, cfg, [&] {
            return dijkstra_baseline(rig.net, swarm, req, kDrone);
        });
        out.dij.push_back(dij.total);
    }
    return out;
}

void criterion_2(const DefaultRigRun& run) {
    double seq = mean(run.seq_l2);
    double dij = mean(run.dij);
    report(2, seq <= dij,
           "sequential (l=2) mean " + fmt1(seq) + " min <= dijkstra baseline mean " +
               fmt1(dij) + " min over " + std::to_string(run.dij.size()) + " requests");
}

void criterion_3(const DefaultRigRun& run) {
    double par = mean(run.par_l1_x2);
    double seq = mean(run.seq_l1);
    bool mean_ok = par <= seq;

    // Pad-constrained rig for the strict-improvement share.
    Rig rig = make_rig(30, 0.07, 1, 2, 7, 200, 43);
    int improved = 0;
    int n = 0;
    PlannerConfig scfg = planner_config(1, 2, false);
    for (const DeliveryRequest& req : rig.requests) {
        SubSwarm swarm = build_swarm(req, kDrone);
        auto s = compose_sequential(rig.net, swarm, req, kDrone, scfg);
        auto p = compose_parallel(rig.net, swarm, req, kDrone, scfg);
        audit(rig.net, req, scfg, s);
        audit(rig.net, req, scfg, p);
        ++n;
        if (p.total_min < s.total_min - 1e-9) ++improved;
    }
    double share = static_cast<double>(improved) / std::max(1, n);
    bool pass = mean_ok && share >= 0.30;
    report(3, pass,
           "parallel (l=1,x=2) mean " + fmt1(par) + " <= sequential (l=1) mean " +
               fmt1(seq) + "; strict improvement on pad-constrained rig: " +
               std::to_string(improved) + "/" + std::to_string(n) + " (" +
               fmt1(share * 100.0) + "%)");
}

void criterion_4(const DefaultRigRun& run) {
    double x2 = mean(run.par_l1_x2);
    double x3 = mean(run.par_l1_x3);
    double x4 = mean(run.par_l1_x4);
    double eps = 0.01 * x2;
    bool pass = x2 <= x3 + eps && x2 <= x4 + eps;
    report(4, pass,
           "splits trend: mean x=2 " + fmt1(x2) + ", x=3 " + fmt1(x3) + ", x=4 " +
               fmt1(x4) + " (tolerance " + fmt1(eps) + ")");
}

void criterion_5(const DefaultRigRun& run) {
    double t2 = mean(run.seq_l2);
    double t0 = mean(run.seq_l0);
    double us0 = 0.0, us2 = 0.0;
    for (auto v : run.seq_l0_us) us0 += static_cast<double>(v);
    for (auto v : run.seq_l2_us) us2 += static_cast<double>(v);
    us0 /= static_cast<double>(run.seq_l0_us.size());
    us2 /= static_cast<double>(run.seq_l2_us.size());
    bool pass = t2 <= t0 && us2 > us0;
    report(5, pass,
           "lookahead trend: delivery mean l=2 " + fmt1(t2) + " <= l=0 " + fmt1(t0) +
               "; plan time l=0 " + fmt1(us0) + " us < l=2 " + fmt1(us2) + " us");
}

void criterion_6() {
    // Pad-starved stations and large swarms, where cooperation matters.
    Rig rig = make_rig(30, 0.07, 1, 2, 7, 600, 45);
    std::vector<DeliveryRequest> big;
    for (const DeliveryRequest& req : rig.requests) {
        if (req.package_weights_kg.size() >= 5) big.push_back(req);
        if (big.size() == 200) break;
    }
    std::vector<double> plain_totals, coop_totals;
    PlannerConfig plain_cfg = planner_config(1, 2, false);
    PlannerConfig coop_cfg = planner_config(1, 2, true);
    for (const DeliveryRequest& req : big) {
        SubSwarm swarm = build_swarm(req, kDrone);
        auto plain = compose_sequential(rig.net, swarm, req, kDrone, plain_cfg);
        auto coop = compose_sequential(rig.net, swarm, req, kDrone, coop_cfg);
        audit(rig.net, req, plain_cfg, plain);
        audit(rig.net, req, coop_cfg, coop);
        plain_totals.push_back(plain.total_min);
        coop_totals.push_back(coop.total_min);
    }
    double p = mean(plain_totals);
    double c = mean(coop_totals);
    report(6, c <= p,
           "cooperation: cooperative mean " + fmt1(c) + " <= plain mean " + fmt1(p) +
               " over " + std::to_string(big.size()) + " 5..10-drone requests");
}

void criterion_7() {
    // Invariants were audited throughout; the byte-identity check runs here.
    ExperimentConfig cfg;
    cfg.network.params.node_count = 20;
    cfg.network.params.edge_density = 0.15;
    cfg.network.seed = 5;
    cfg.requests = {40, 9, 10, 5.0};
    cfg.planners.lookaheads = {0, 1};
    cfg.planners.max_splits = {2};
    cfg.planners.cooperative = {false, true};
    cfg.baselines.dijkstra = true;
    cfg.baselines.brute_force = true;
    cfg.baselines.path_budget = 100000;

    std::ostringstream raw_a, raw_b, sum_a, sum_b;
    auto rows_a = run_experiment(cfg);
    auto rows_b = run_experiment(cfg);
    write_raw_csv(rows_a, raw_a);
    write_raw_csv(rows_b, raw_b);
    write_summary_csv(summarize(rows_a), sum_a);
    write_summary_csv(summarize(rows_b), sum_b);
    bool identical = raw_a.str() == raw_b.str() && sum_a.str() == sum_b.str();

    bool pass = identical && g_violations == 0 && g_validated > 0;
    report(7, pass,
           "invariants: " + std::to_string(g_validated) + " itineraries re-simulated, " +
               std::to_string(g_violations) + " violations; fixed-seed CSV byte-identical: " +
               (identical ? "yes" : "no"));
}

void criterion_8() {
    bool pass = true;
    std::string detail;

    // Calibration points.
    pass &= consumption_rate(kDrone, 5.0) == 0.1;
    pass &= charge_duration(kDrone, {0, 0.0, 100.0}) == 60.0;

    // Greedy rounds against exhaustive grouping for <= 6 demands, <= 3 pads.
    std::vector<std::vector<double>> cases{
        {30, 30, 20, 20, 10},  {10, 9, 1},       {5, 5, 5, 5, 5, 5},
        {60, 1, 1, 1, 1, 1},   {17, 42, 33, 9, 51}, {44, 44, 44, 2, 2, 2},
        {59, 58, 57, 56, 55, 54}, {1, 2, 3, 4, 5, 6},
    };
    int node_time_checked = 0;
    for (const auto& durations : cases) {
        for (int pads = 1; pads <= 3; ++pads) {
            std::vector<ChargeDemand> demands;
            for (std::size_t i = 0; i < durations.size(); ++i)
                demands.push_back(
                    {static_cast<int>(i), 0.0, durations[i] * 100.0 / 60.0});
            double greedy = node_time(kDrone, demands, pads).total_minutes;

            // Exhaustive: try every assignment of demands to serving rounds.
            std::vector<int> group(durations.size(), 0);
            double best = 1e18;
            std::function<void(std::size_t, int)> rec = [&](std::size_t i, int groups) {
                if (i == durations.size()) {
                    std::vector<double> mx(groups, 0.0);
                    std::vector<int> cnt(groups, 0);
                    for (std::size_t k = 0; k < durations.size(); ++k) {
                        mx[group[k]] = std::max(mx[group[k]], durations[k]);
                        cnt[group[k]] += 1;
                    }
                    double total = 0.0;
                    for (int g = 0; g < groups; ++g) {
                        if (cnt[g] > pads) return;
                        total += mx[g];
                    }
                    best = std::min(best, total);
                    return;
                }
                for (int g = 0; g <= groups && g < static_cast<int>(durations.size()); ++g) {
                    group[i] = g;
                    rec(i + 1, std::max(groups, g + 1));
                }
            };
            rec(0, 0);
            if (std::abs(greedy - best) > 1e-9) pass = false;
            ++node_time_checked;
        }
    }

    // Partition counts against an independent recurrence. The number of
    // partitions of n into parts of size >= 2 with at most x parts satisfies
    // f(n, x) = sum over the size k of the part containing the first element.
    std::function<double(int, int)> choose = [&](int n, int k) {
        double c = 1;
        for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
        return c;
    };
    std::function<std::size_t(int, int)> count_parts = [&](int n, int x) -> std::size_t {
        if (n == 0) return 1;
        if (x == 0 || n == 1) return 0;
        std::size_t total = 0;
        for (int k = 2; k <= n; ++k)
            total += static_cast<std::size_t>(choose(n - 1, k - 1) + 0.5) *
                     count_parts(n - k, x - 1);
        return total;
    };
    int partitions_checked = 0;
    for (int n = 2; n <= 8; ++n) {
        for (int x = 1; x <= 4; ++x) {
            SubSwarm s;
            for (int i = 0; i < n; ++i) s.drones.push_back({i, 100.0, 1.0});
            if (enumerate_partitions(s, x).size() != count_parts(n, x)) pass = false;
            ++partitions_checked;
        }
    }

    report(8, pass,
           "unit oracles: rate(5kg)=0.1 %/km, full charge 60 min, " +
               std::to_string(node_time_checked) + " round schedules optimal, " +
               std::to_string(partitions_checked) + " partition counts exact");
}

void criterion_9(const OracleRun& run) {
    std::map<int, std::vector<double>> oracle_by_hops, seq_by_hops;
    for (std::size_t i = 0; i < run.hops.size(); ++i) {
        oracle_by_hops[run.hops[i]].push_back(static_cast<double>(run.oracle_us[i]));
        seq_by_hops[run.hops[i]].push_back(static_cast<double>(run.seq_us[i]));
    }
    bool have = oracle_by_hops.count(3) && oracle_by_hops.count(6) &&
                oracle_by_hops[3].size() >= 5 && oracle_by_hops[6].size() >= 5;
    if (!have) {
        report(9, false, "hop buckets 3 and 6 are not both populated on the small rig");
        return;
    }
    double o3 = mean(oracle_by_hops[3]);
    double o6 = mean(oracle_by_hops[6]);
    double s3 = mean(seq_by_hops[3]);
    double s6 = mean(seq_by_hops[6]);
    double oracle_ratio = o6 / o3;
    double seq_ratio = s6 / s3;
    bool pass = oracle_ratio >= 5.0 && seq_ratio < oracle_ratio;
    report(9, pass,
           "cost growth: oracle " + fmt1(o3) + " us @3 hops -> " + fmt1(o6) +
               " us @6 hops (x" + fmt1(oracle_ratio) + ", need >= 5); heuristic x" +
               fmt1(seq_ratio));
}

}  // namespace

int main() {
    std::printf("swarmplan acceptance suite\n");

    OracleRun small = run_small_rig();
    criterion_1(small);

    DefaultRigRun main_rig = run_default_rig();
    criterion_2(main_rig);
    criterion_3(main_rig);
    criterion_4(main_rig);
    criterion_5(main_rig);
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(small);

    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
