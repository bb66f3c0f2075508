#include <doctest.h>

#include <set>
#include <sstream>

#include "swarmplan/network.hpp"
#include "test_util.hpp"

using namespace swarmplan;
using testutil::make_net;

TEST_CASE("shortest_path picks the cheaper two-hop route over the direct edge") {
    auto net = make_net({1, 1, 1}, {{0, 1, 3.0}, {1, 2, 4.0}, {0, 2, 8.0}});
    auto res = shortest_path(net, 0, 2);
    CHECK(res.distance_km == doctest::Approx(7.0));
    CHECK(res.path.nodes == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("shortest_path from a node to itself") {
    auto net = make_net({1, 1}, {{0, 1, 5.0}});
    auto res = shortest_path(net, 0, 0);
    CHECK(res.distance_km == 0.0);
    CHECK(res.path.nodes == std::vector<NodeId>{0});
}

TEST_CASE("shortest_path rejects unknown nodes") {
    auto net = make_net({1, 1}, {{0, 1, 5.0}});
    CHECK_THROWS_AS(shortest_path(net, 0, 7), UnknownNode);
}

TEST_CASE("shortest_path matches exhaustive enumeration on random networks") {
    for (unsigned seed : {11u, 12u, 13u}) {
        auto net = testutil::integer_random_net(10, 8, seed);
        for (NodeId from : {NodeId{0}, NodeId{3}}) {
            for (NodeId to = 0; to < net.node_count(); ++to) {
                if (to == from) continue;
                auto paths = testutil::all_paths_oracle(net, from, to);
                REQUIRE(!paths.empty());
                double best = 1e18;
                for (const auto& p : paths)
                    best = std::min(best, testutil::path_length(net, p));
                std::vector<NodeId> best_lex;
                for (const auto& p : paths)  // already sorted lexicographically
                    if (testutil::path_length(net, p) == best && best_lex.empty())
                        best_lex = p;

                auto res = shortest_path(net, from, to);
                CHECK(res.distance_km == doctest::Approx(best));
                CHECK(res.path.nodes == best_lex);
            }
        }
    }
}

TEST_CASE("shortest distances are symmetric and obey the triangle inequality") {
    auto net = testutil::integer_random_net(12, 10, 99);
    std::vector<std::vector<double>> dist;
    for (NodeId v = 0; v < net.node_count(); ++v)
        dist.push_back(shortest_distances(net, v));
    for (NodeId u = 0; u < net.node_count(); ++u)
        for (NodeId v = 0; v < net.node_count(); ++v) {
            CHECK(dist[u][v] == doctest::Approx(dist[v][u]));
            for (NodeId w = 0; w < net.node_count(); ++w)
                CHECK(dist[u][v] <= dist[u][w] + dist[w][v] + 1e-9);
        }
}

TEST_CASE("lookahead 0 on a star returns the leaves with edge lengths") {
    auto net = make_net({1, 1, 1, 1, 1},
                        {{0, 1, 2.0}, {0, 2, 3.0}, {0, 3, 4.0}, {0, 4, 5.0}});
    auto res = neighbors_within_lookahead(net, 0, 0);
    REQUIRE(res.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(res[i].node == i + 1);
        CHECK(res[i].distance_km == doctest::Approx(2.0 + i));
    }
}

TEST_CASE("lookahead counts hop levels, not distance") {
    auto net = make_net({1, 1, 1, 1}, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
    auto res = neighbors_within_lookahead(net, 0, 1);
    REQUIRE(res.size() == 2);
    CHECK(res[0].node == 1);
    CHECK(res[1].node == 2);
}

TEST_CASE("lookahead equals BFS levels and grows monotonically") {
    auto net = testutil::integer_random_net(10, 7, 21);
    auto hops = hop_distances(net, 4);
    for (int l = 0; l <= 2; ++l) {
        auto res = neighbors_within_lookahead(net, 4, l);
        std::set<NodeId> got;
        for (auto& c : res) got.insert(c.node);
        std::set<NodeId> expect;
        for (NodeId v = 0; v < net.node_count(); ++v)
            if (v != 4 && hops[v] >= 1 && hops[v] <= l + 1) expect.insert(v);
        CHECK(got == expect);
        if (l > 0) {
            auto prev = neighbors_within_lookahead(net, 4, l - 1);
            std::set<NodeId> prev_set;
            for (auto& c : prev) prev_set.insert(c.node);
            CHECK(std::includes(got.begin(), got.end(), prev_set.begin(), prev_set.end()));
        }
    }
}

TEST_CASE("lookahead and enumeration reject unknown nodes") {
    auto net = make_net({1, 1}, {{0, 1, 5.0}});
    CHECK_THROWS_AS(neighbors_within_lookahead(net, 9, 1), UnknownNode);
    CHECK_THROWS_AS(enumerate_simple_paths(net, 0, 9, 10), UnknownNode);
    CHECK_THROWS_AS(neighbors_within_lookahead(net, 0, -1), InvalidParameter);
}

TEST_CASE("simple path enumeration on a triangle and a line") {
    auto tri = make_net({1, 1, 1}, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    CHECK(enumerate_simple_paths(tri, 0, 2, 100).size() == 2);
    auto line = make_net({1, 1, 1}, {{0, 1, 1.0}, {1, 2, 1.0}});
    CHECK(enumerate_simple_paths(line, 0, 2, 100).size() == 1);
}

TEST_CASE("K5 has 16 simple paths between two nodes") {
    // 1 + P(3,1) + P(3,2) + P(3,3) interior arrangements
    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    for (NodeId a = 0; a < 5; ++a)
        for (NodeId b = a + 1; b < 5; ++b) edges.emplace_back(a, b, 1.0);
    auto k5 = make_net({1, 1, 1, 1, 1}, edges);
    auto paths = enumerate_simple_paths(k5, 0, 1, 100);
    CHECK(paths.size() == 16);
    CHECK(paths.size() == testutil::all_paths_oracle(k5, 0, 1).size());
}

TEST_CASE("path budget overflow carries the paths found so far") {
    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    for (NodeId a = 0; a < 5; ++a)
        for (NodeId b = a + 1; b < 5; ++b) edges.emplace_back(a, b, 1.0);
    auto k5 = make_net({1, 1, 1, 1, 1}, edges);
    try {
        enumerate_simple_paths(k5, 0, 1, 10);
        FAIL("expected PathBudgetExceeded");
    } catch (const PathBudgetExceeded& e) {
        CHECK(e.paths_found.size() == 10);
    }
}

TEST_CASE("enumeration contains the shortest path and attains its distance") {
    auto net = testutil::integer_random_net(9, 6, 5);
    auto res = shortest_path(net, 0, 8);
    auto paths = enumerate_simple_paths(net, 0, 8, 100000);
    bool contains = false;
    double best = 1e18;
    for (const auto& p : paths) {
        if (p.nodes == res.path.nodes) contains = true;
        best = std::min(best, testutil::path_length(net, p.nodes));
    }
    CHECK(contains);
    CHECK(best == doctest::Approx(res.distance_km));
}

TEST_CASE("network invariants are enforced at construction") {
    CHECK_THROWS_AS(make_net({1, 1}, {{0, 0, 1.0}}), ValidationError);        // self-loop
    CHECK_THROWS_AS(make_net({1, 1}, {{0, 1, 0.0}}), ValidationError);        // zero length
    CHECK_THROWS_AS(make_net({1, 0}, {{0, 1, 1.0}}), ValidationError);        // pad < 1
    CHECK_THROWS_AS(make_net({1, 1, 1}, {{0, 1, 1.0}}), ValidationError);     // disconnected
    CHECK_THROWS_AS(make_net({1, 1}, {{0, 1, 1.0}, {1, 0, 2.0}}), ValidationError);  // dup
}

TEST_CASE("network JSON loading") {
    SUBCASE("minimal document") {
        std::istringstream in(R"({"nodes":[{"id":0,"pads":1},{"id":1,"pads":2}],
                                  "edges":[{"a":0,"b":1,"km":3.5}]})");
        auto net = load_network(in);
        CHECK(net.node_count() == 2);
        CHECK(net.pad_count(1) == 2);
        CHECK(*net.edge_km(0, 1) == doctest::Approx(3.5));
    }
    SUBCASE("zero distance is a validation error") {
        std::istringstream in(R"({"nodes":[{"id":0,"pads":1},{"id":1,"pads":1}],
                                  "edges":[{"a":0,"b":1,"km":0.0}]})");
        CHECK_THROWS_AS(load_network(in), ValidationError);
    }
    SUBCASE("unknown fields are rejected") {
        std::istringstream in(R"({"nodes":[{"id":0,"pads":1,"name":"x"},{"id":1,"pads":1}],
                                  "edges":[{"a":0,"b":1,"km":1.0}]})");
        CHECK_THROWS_AS(load_network(in), ParseError);
    }
    SUBCASE("duplicate node ids are rejected") {
        std::istringstream in(R"({"nodes":[{"id":0,"pads":1},{"id":0,"pads":1}],
                                  "edges":[{"a":0,"b":0,"km":1.0}]})");
        CHECK_THROWS_AS(load_network(in), ValidationError);
    }
    SUBCASE("malformed JSON is a parse error") {
        std::istringstream in("{nodes: oops");
        CHECK_THROWS_AS(load_network(in), ParseError);
    }
}

TEST_CASE("save/load round-trips a generated network") {
    RandomNetworkParams params;
    params.node_count = 200;
    params.edge_density = 0.05;
    auto net = generate_random_network(params, 31415);
    std::stringstream buffer;
    save_network(net, buffer);
    auto copy = load_network(buffer);
    CHECK(net == copy);
}

TEST_CASE("random network generation") {
    SUBCASE("two nodes come out connected by one edge") {
        RandomNetworkParams params;
        params.node_count = 2;
        auto net = generate_random_network(params, 1);
        CHECK(net.edge_count() == 1);
    }
    SUBCASE("identical seeds give identical networks") {
        RandomNetworkParams params;
        params.node_count = 40;
        params.edge_density = 0.2;
        auto a = generate_random_network(params, 7);
        auto b = generate_random_network(params, 7);
        CHECK(a == b);
        auto c = generate_random_network(params, 8);
        CHECK(!(a == c));
    }
    SUBCASE("200-node networks are connected (constructor would throw otherwise)") {
        RandomNetworkParams params;
        params.node_count = 200;
        params.edge_density = 0.03;
        for (std::uint64_t seed : {1, 2, 3}) {
            auto net = generate_random_network(params, seed);
            auto hops = hop_distances(net, 0);
            for (NodeId v = 0; v < net.node_count(); ++v) CHECK(hops[v] >= 0);
        }
    }
    SUBCASE("bad parameters are rejected") {
        RandomNetworkParams params;
        params.node_count = 1;
        CHECK_THROWS_AS(generate_random_network(params, 1), InvalidParameter);
        params.node_count = 5;
        params.pad_min = 3;
        params.pad_max = 2;
        CHECK_THROWS_AS(generate_random_network(params, 1), InvalidParameter);
    }
}
