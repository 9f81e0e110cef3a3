#include <doctest.h>

#include <cmath>

#include "paltk/constructions.hpp"
#include "paltk/core.hpp"
#include "paltk/lagrangian.hpp"
#include "paltk/painting.hpp"
#include "support.hpp"

using namespace paltk;
using testsupport::graph;
using testsupport::pal;

namespace {

std::vector<int> range(int lo, int hi) {
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

/// Exhaustive subgraph test: does h contain a copy of f?
bool contains_copy(const ThreeGraph& h, const ThreeGraph& f) {
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int next) -> bool {
        if (static_cast<int>(chosen.size()) == f.vertex_count()) {
            std::vector<int> perm(chosen.begin(), chosen.end());
            std::sort(perm.begin(), perm.end());
            do {
                bool all = true;
                for (const auto& e : f.edges()) {
                    const Edge3 image{perm[static_cast<std::size_t>(e[0] - 1)],
                                      perm[static_cast<std::size_t>(e[1] - 1)],
                                      perm[static_cast<std::size_t>(e[2] - 1)]};
                    if (!h.contains(image)) {
                        all = false;
                        break;
                    }
                }
                if (all) return true;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return false;
        }
        for (int v = next; v <= h.vertex_count(); ++v) {
            chosen.push_back(v);
            if (self(self, v + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return rec(rec, 1);
}

}  // namespace

TEST_CASE("palette construction fixtures") {
    SUBCASE("the all-ones palette on one color builds the complete 3-graph") {
        const auto con = palette_construction(pal(1, {{1, 1, 1}}), WeightVector::uniform(1), 8, 5);
        CHECK(con.graph.edge_count() == 56);
    }
    SUBCASE("the empty palette builds the edgeless 3-graph") {
        const auto con = palette_construction(pal(2, {}), WeightVector::uniform(2), 10, 5);
        CHECK(con.graph.edge_count() == 0);
    }
    SUBCASE("the constructed witness paints without any search") {
        Rng rng(81);
        for (int round = 0; round < 10; ++round) {
            Rng stream = rng.split(round);
            const int c = stream.uniform_int(1, 3);
            const auto p = testsupport::random_palette(stream, c, 0.4);
            const auto con = palette_construction(p, WeightVector::uniform(c), 12, round);
            CHECK(is_painting(p, con.graph, construction_painting(con)));
        }
    }
    SUBCASE("seeds reproduce colorings") {
        const auto p = pal(3, {{1, 2, 3}});
        const auto a = palette_construction(p, WeightVector::uniform(3), 15, 99);
        const auto b = palette_construction(p, WeightVector::uniform(3), 15, 99);
        CHECK(a.pair_colors == b.pair_colors);
        CHECK(a.graph == b.graph);
    }
}

TEST_CASE("empirical edge probability approaches the Lagrange value") {
    const auto p = pal(3, {{1, 2, 3}});
    const auto x = WeightVector::uniform(3);
    const double lambda = lambda_eval(p, x);
    const int n = 60;
    const double total = static_cast<double>(n) * (n - 1) * (n - 2) / 6.0;
    std::vector<double> densities;
    for (int seed = 0; seed < 12; ++seed) {
        const auto con = palette_construction(p, x, n, static_cast<std::uint64_t>(seed));
        densities.push_back(con.graph.edge_count() / total);
    }
    double mean = 0.0;
    for (double d : densities) mean += d;
    mean /= static_cast<double>(densities.size());
    double var = 0.0;
    for (double d : densities) var += (d - mean) * (d - mean);
    var /= static_cast<double>(densities.size() - 1);
    const double se = std::sqrt(var / static_cast<double>(densities.size()));
    CHECK(std::abs(mean - lambda) <= 3 * std::max(se, 1e-4));
}

TEST_CASE("deficient palettes build graphs free of their family") {
    // the rainbow pattern does not paint K4 minus an edge, so no copy of it
    // may appear in the construction
    const auto p = pal(3, {{1, 2, 3}});
    const auto k4minus = graph(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}});
    REQUIRE(paints(p, k4minus) == Verdict::kNo);
    for (int seed = 0; seed < 3; ++seed) {
        const auto con = palette_construction(p, WeightVector::uniform(3), 40,
                                              static_cast<std::uint64_t>(seed));
        CHECK_FALSE(contains_copy(con.graph, k4minus));
    }
    // a five-vertex unpaintable graph stays out as well
    std::vector<Edge3> k5_edges;
    for (int a = 1; a <= 5; ++a)
        for (int b = a + 1; b <= 5; ++b)
            for (int c = b + 1; c <= 5; ++c) k5_edges.push_back({a, b, c});
    const auto k5 = graph(5, k5_edges);
    REQUIRE(paints(p, k5) == Verdict::kNo);
    const auto con = palette_construction(p, WeightVector::uniform(3), 28, 11);
    CHECK_FALSE(contains_copy(con.graph, k5));
}

TEST_CASE("density audit fixtures") {
    SUBCASE("complete graph is (1, eta)-dense for any eta") {
        std::vector<Edge3> edges;
        for (int a = 1; a <= 10; ++a)
            for (int b = a + 1; b <= 10; ++b)
                for (int c = b + 1; c <= 10; ++c) edges.push_back({a, b, c});
        const auto audit = d_eta_density_audit(graph(10, edges), 1.0, 0.0);
        CHECK(audit.exhaustive);
        CHECK(audit.dense);
    }
    SUBCASE("edgeless graph is (0, eta)-dense") {
        const auto audit = d_eta_density_audit(graph(10, {}), 0.0, 0.0);
        CHECK(audit.dense);
    }
    SUBCASE("a planted hole is caught exhaustively and by sampling") {
        Rng rng(82);
        // random graph on 24 vertices whose first 12 vertices span nothing
        std::vector<Edge3> edges;
        for (int a = 1; a <= 24; ++a)
            for (int b = a + 1; b <= 24; ++b)
                for (int c = b + 1; c <= 24; ++c) {
                    if (c > 12 && rng.bernoulli(0.7)) edges.push_back({a, b, c});
                }
        const auto h = graph(24, edges);
        const auto sampled = d_eta_density_audit(h, 0.5, 0.001, 400, 7);
        CHECK_FALSE(sampled.exhaustive);
        CHECK_FALSE(sampled.dense);
        // the worst subset reported is a genuine violation on recount
        long long recount = 0;
        for (const auto& e : h.edges()) {
            const bool inside =
                std::binary_search(sampled.worst_subset.begin(), sampled.worst_subset.end(),
                                   e[0]) &&
                std::binary_search(sampled.worst_subset.begin(), sampled.worst_subset.end(),
                                   e[1]) &&
                std::binary_search(sampled.worst_subset.begin(), sampled.worst_subset.end(), e[2]);
            recount += inside;
        }
        const double size = static_cast<double>(sampled.worst_subset.size());
        const double margin = static_cast<double>(recount) -
                              0.5 * size * (size - 1) * (size - 2) / 6.0 +
                              0.001 * 24.0 * 24.0 * 24.0;
        CHECK(margin == doctest::Approx(sampled.worst_margin).epsilon(1e-9));
        CHECK(margin < 0.0);
    }
}

TEST_CASE("sampled and exhaustive audits agree on small instances") {
    Rng rng(83);
    for (int round = 0; round < 8; ++round) {
        Rng stream = rng.split(round);
        const int n = 12;
        // half the rounds plant a hole on vertices 1..6
        const bool plant = round % 2 == 0;
        std::vector<Edge3> edges;
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                for (int c = b + 1; c <= n; ++c) {
                    if (plant && c <= 6) continue;
                    if (stream.bernoulli(0.75)) edges.push_back({a, b, c});
                }
        const auto h = graph(n, edges);
        const double d = 0.5;
        const double eta = 0.002;
        const auto exhaustive = d_eta_density_audit(h, d, eta);
        REQUIRE(exhaustive.exhaustive);
        const auto sampled = d_eta_density_audit(h, d, eta, 2000, round,
                                                 DensityAuditMode::kSampled);
        CHECK_FALSE(sampled.exhaustive);
        CHECK(sampled.dense == exhaustive.dense);
        CHECK(sampled.worst_margin >= exhaustive.worst_margin - 1e-9);
    }
}

TEST_CASE("reduced 3-graph type invariants") {
    std::map<VertexPair, std::vector<int>> pair_sets{
        {{1, 2}, {1, 2}}, {{1, 3}, {3, 4}}, {{2, 3}, {5, 6}}};
    std::vector<Reduced3Graph::Constituent> constituents{
        {{1, 2, 3}, {{1, 3, 5}, {2, 4, 6}}}};
    const Reduced3Graph a(3, pair_sets, constituents);
    CHECK(a.index_count() == 3);
    CHECK(a.pair_set(1, 2) == std::vector<int>{1, 2});
    CHECK(a.constituent(1, 2, 3).edges.size() == 2);
    CHECK(a.constituent(1, 2, 3).edges == a.constituent(3, 1, 2).edges);

    // overlapping pair sets are rejected
    auto bad = pair_sets;
    bad[{1, 3}] = {2, 4};
    CHECK_THROWS_AS(Reduced3Graph(3, bad, {}), std::invalid_argument);
    // constituent edges must live in their classes
    std::vector<Reduced3Graph::Constituent> escape{{{1, 2, 3}, {{1, 5, 3}}}};
    CHECK_THROWS_AS(Reduced3Graph(3, pair_sets, escape), std::invalid_argument);
}

TEST_CASE("uniform density of reduced 3-graphs") {
    std::map<VertexPair, std::vector<int>> pair_sets{
        {{1, 2}, {1, 2}}, {{1, 3}, {3, 4}}, {{2, 3}, {5, 6}}};
    std::vector<Reduced3Graph::Constituent> full{{{1, 2, 3},
                                                  {{1, 3, 5},
                                                   {1, 3, 6},
                                                   {1, 4, 5},
                                                   {1, 4, 6},
                                                   {2, 3, 5},
                                                   {2, 3, 6},
                                                   {2, 4, 5},
                                                   {2, 4, 6}}}};
    CHECK(is_uniformly_dense_reduced(Reduced3Graph(3, pair_sets, full), 1.0));
    CHECK(is_uniformly_dense_reduced(Reduced3Graph(3, pair_sets, {}), 0.0));
    CHECK(is_uniformly_dense_reduced(Reduced3Graph(3, pair_sets, {}), -0.5));
    CHECK_FALSE(is_uniformly_dense_reduced(Reduced3Graph(3, pair_sets, {}), 0.5));
    std::map<VertexPair, std::vector<int>> empty_set{
        {{1, 2}, {}}, {{1, 3}, {3}}, {{2, 3}, {5}}};
    CHECK_THROWS_AS(is_uniformly_dense_reduced(Reduced3Graph(3, empty_set, {}), 0.5),
                    std::invalid_argument);
}

TEST_CASE("reduced maps") {
    // assemble a slice of the rainbow palette over four indices
    const auto g = pal(2, {{1, 2, 2}, {2, 1, 1}});
    std::map<VertexPair, std::vector<int>> pair_vertices;
    int next = 1;
    for (int i = 1; i <= 4; ++i) {
        for (int j = i + 1; j <= 4; ++j) {
            pair_vertices[{i, j}] = {next, next + 1};
            next += 2;
        }
    }
    const auto a = slice_assembly(g, 4, pair_vertices);

    SUBCASE("edgeless graphs map trivially") {
        const auto result = reduced_map_exists(graph(3, {}), a);
        CHECK(result.verdict == Verdict::kYes);
    }
    SUBCASE("no map into empty constituents") {
        const auto empty = slice_assembly(pal(2, {}), 4, pair_vertices);
        const auto result = reduced_map_exists(graph(3, {{1, 2, 3}}), empty);
        CHECK(result.verdict == Verdict::kNo);
    }
    SUBCASE("painted graphs lift through the slice") {
        Rng rng(84);
        int lifted = 0;
        for (int round = 0; round < 30 && lifted < 12; ++round) {
            Rng stream = rng.split(round);
            const auto f = testsupport::random_graph(stream, 4, 0.5);
            if (paints(g, f) != Verdict::kYes) continue;
            ++lifted;
            const auto result = reduced_map_exists(f, a);
            REQUIRE(result.verdict == Verdict::kYes);
            CHECK(is_reduced_map(f, a, *result.map));
        }
        CHECK(lifted >= 6);
    }
    SUBCASE("adding constituent edges preserves existing maps") {
        const auto f = graph(3, {{1, 2, 3}});
        const auto result = reduced_map_exists(f, a);
        REQUIRE(result.verdict == Verdict::kYes);
        const auto richer = slice_assembly(pal(2, testsupport::all_patterns(2)), 4, pair_vertices);
        CHECK(is_reduced_map(f, richer, *result.map));
    }
    SUBCASE("budget exhaustion is three-valued") {
        Rng stream(85);
        const auto f = testsupport::random_graph(stream, 5, 0.9);
        const auto result = reduced_map_exists(f, a, 2);
        CHECK(result.verdict == Verdict::kUnknown);
    }
}

TEST_CASE("palette slices round trip") {
    Rng rng(86);
    for (int round = 0; round < 100; ++round) {
        Rng stream = rng.split(round);
        const int s = stream.uniform_int(1, 3);
        const int t = stream.uniform_int(3, 5);
        auto g = testsupport::random_palette(stream, s, 0.5);
        std::map<VertexPair, std::vector<int>> pair_vertices;
        int next = 1;
        for (int i = 1; i <= t; ++i) {
            for (int j = i + 1; j <= t; ++j) {
                std::vector<int> ids;
                for (int r = 0; r < s; ++r) ids.push_back(next++);
                pair_vertices[{i, j}] = ids;
            }
        }
        const auto a = slice_assembly(g, t, pair_vertices);
        std::vector<int> indices;
        for (int i = 1; i <= t; ++i) indices.push_back(i);
        const auto recovered = palette_from_slice(a, indices, pair_vertices);
        CHECK(recovered == g);
    }
}

TEST_CASE("slice extraction rejects disagreeing triples") {
    const auto g = pal(2, {{1, 2, 2}});
    std::map<VertexPair, std::vector<int>> pair_vertices;
    int next = 1;
    for (int i = 1; i <= 4; ++i) {
        for (int j = i + 1; j <= 4; ++j) {
            pair_vertices[{i, j}] = {next, next + 1};
            next += 2;
        }
    }
    auto a = slice_assembly(g, 4, pair_vertices);
    // rebuild with one constituent emptied: triples now disagree
    std::vector<Reduced3Graph::Constituent> mutated = a.constituents();
    mutated.front().edges.clear();
    const Reduced3Graph broken(4, pair_vertices, mutated);
    std::vector<int> indices{1, 2, 3, 4};
    CHECK_THROWS_AS(palette_from_slice(broken, indices, pair_vertices), SliceDisagreement);
}

TEST_CASE("slice density tracks the constituent density") {
    // identified sets carry the full constituents, so the recovered palette
    // density equals the constituent density exactly
    const auto g = pal(3, {{1, 2, 3}, {2, 2, 2}, {3, 1, 2}});
    std::map<VertexPair, std::vector<int>> pair_vertices;
    int next = 1;
    for (int i = 1; i <= 3; ++i) {
        for (int j = i + 1; j <= 3; ++j) {
            pair_vertices[{i, j}] = {next, next + 1, next + 2};
            next += 3;
        }
    }
    const auto a = slice_assembly(g, 3, pair_vertices);
    const auto recovered = palette_from_slice(a, {1, 2, 3}, pair_vertices);
    const double constituent_density =
        static_cast<double>(a.constituent(1, 2, 3).edges.size()) / 27.0;
    CHECK(density(recovered).to_double() == doctest::Approx(constituent_density));
    CHECK(is_uniformly_dense_reduced(a, constituent_density));
    CHECK_FALSE(is_uniformly_dense_reduced(a, constituent_density + 0.01));
}

TEST_CASE("pair_index is a bijection onto the pair range") {
    const int n = 9;
    std::vector<char> seen(static_cast<std::size_t>(n * (n - 1) / 2), 0);
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            const auto idx = pair_index(a, b, n);
            REQUIRE(idx < seen.size());
            CHECK_FALSE(seen[idx]);
            seen[idx] = 1;
        }
    }
}

TEST_CASE("construction preconditions") {
    const auto p = pal(2, {{1, 1, 2}});
    CHECK_THROWS_AS(palette_construction(p, WeightVector::uniform(2), 2, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(palette_construction(p, WeightVector::uniform(3), 10, 1),
                    std::invalid_argument);
}
