#include <doctest.h>

#include <cmath>
#include <numeric>

#include "paltk/core.hpp"
#include "paltk/hom.hpp"
#include "paltk/regularity.hpp"
#include "support.hpp"

using namespace paltk;
using testsupport::pal;

namespace {

std::vector<int> range(int lo, int hi) {
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

/// Palette whose patterns live exclusively on the first halves of three
/// blocks of 20; the planted irregularity fixture.
Palette planted_half_split() {
    std::vector<Pattern> patterns;
    for (int a = 1; a <= 10; ++a)
        for (int b = 21; b <= 30; ++b)
            for (int c = 41; c <= 50; ++c) patterns.push_back({a, b, c});
    return {60, std::move(patterns)};
}

/// Direct audit oracle: every subset triple with the size floor, checked by
/// explicit enumeration. Only for parts of at most 5 colors.
bool irregular_oracle(const Palette& p, const std::vector<int>& v1, const std::vector<int>& v2,
                      const std::vector<int>& v3, double eps) {
    const double base = triple_density(p, v1, v2, v3);
    auto subsets = [&](const std::vector<int>& v) {
        std::vector<std::vector<int>> out;
        const int k = static_cast<int>(
            std::ceil(eps * static_cast<double>(v.size()) - 1e-12));
        for (std::uint32_t mask = 1; mask < (1u << v.size()); ++mask) {
            if (std::popcount(mask) < std::max(1, k)) continue;
            std::vector<int> sub;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (mask & (1u << i)) sub.push_back(v[i]);
            }
            out.push_back(std::move(sub));
        }
        return out;
    };
    for (const auto& w1 : subsets(v1))
        for (const auto& w2 : subsets(v2))
            for (const auto& w3 : subsets(v3)) {
                if (std::abs(triple_density(p, w1, w2, w3) - base) > eps) return true;
            }
    return false;
}

}  // namespace

TEST_CASE("triple density fixtures") {
    const auto full = pal(3, testsupport::all_patterns(3));
    CHECK(triple_density(full, {1}, {2}, {3}) == 1.0);
    CHECK(triple_density(pal(3, {}), {1, 2}, {1, 3}, {2, 3}) == 0.0);
    const auto p = pal(3, {{1, 2, 3}});
    CHECK(triple_density(p, {1}, {2}, {3}) == 1.0);
    CHECK(triple_density(p, {2}, {1}, {3}) == 0.0);  // order sensitive
    CHECK_THROWS_AS(triple_density(p, {}, {2}, {3}), std::invalid_argument);
}

TEST_CASE("exhaustive audit clears complete and empty triples") {
    const auto v1 = range(1, 12), v2 = range(13, 24), v3 = range(25, 36);
    std::vector<Pattern> all;
    for (int a : v1)
        for (int b : v2)
            for (int c : v3) all.push_back({a, b, c});
    for (const auto& p : {pal(36, all), pal(36, {})}) {
        const auto audit = eps_regular_audit(p, v1, v2, v3, 0.3, 0, 1);
        CHECK(audit.mode == AuditMode::kExhaustive);
        CHECK_FALSE(audit.witness_found);
    }
}

TEST_CASE("exhaustive audit agrees with the subset-triple oracle") {
    Rng rng(61);
    for (int round = 0; round < 12; ++round) {
        Rng stream = rng.split(round);
        const auto p = testsupport::random_palette(stream, 12, 0.35);
        const auto v1 = range(1, 4), v2 = range(5, 8), v3 = range(9, 12);
        const double eps = 0.35;
        const auto audit = eps_regular_audit(p, v1, v2, v3, eps, 0, 1);
        CHECK(audit.mode == AuditMode::kExhaustive);
        CHECK(audit.witness_found == irregular_oracle(p, v1, v2, v3, eps));
        if (audit.witness_found) {
            CHECK(verify_witness(p, v1, v2, v3, audit.witness, eps));
        }
    }
}

TEST_CASE("planted half-split yields a verified witness at eps 0.4") {
    const auto p = planted_half_split();
    const auto v1 = range(1, 20), v2 = range(21, 40), v3 = range(41, 60);
    const auto audit = eps_regular_audit(p, v1, v2, v3, 0.4, 20, 99, false);
    REQUIRE(audit.witness_found);
    CHECK(audit.mode == AuditMode::kSampled);
    CHECK(verify_witness(p, v1, v2, v3, audit.witness, 0.4));
    // arithmetic re-check of the inequality the witness claims
    const double base = triple_density(p, v1, v2, v3);
    const double dev = triple_density(p, audit.witness.witness_sets[0],
                                      audit.witness.witness_sets[1],
                                      audit.witness.witness_sets[2]);
    CHECK(std::abs(dev - base) > 0.4);
}

TEST_CASE("energy fixtures") {
    const auto p = pal(6, {{1, 2, 3}, {4, 5, 6}, {1, 1, 1}});
    SUBCASE("single part squares the global density") {
        const auto whole = std::vector<std::vector<int>>{range(1, 6)};
        const double d = triple_density(p, range(1, 6), range(1, 6), range(1, 6));
        CHECK(energy(p, whole) == doctest::Approx(d * d).epsilon(1e-12));
    }
    SUBCASE("empty palette has zero energy") {
        CHECK(energy(pal(6, {}), {range(1, 3), range(4, 6)}) == 0.0);
    }
    SUBCASE("bounds") {
        Rng rng(62);
        for (int round = 0; round < 20; ++round) {
            Rng stream = rng.split(round);
            const auto q = testsupport::random_palette(stream, 9, 0.5);
            const double e = energy(q, {range(1, 3), range(4, 6), range(7, 9)});
            CHECK(e >= 0.0);
            CHECK(e <= 1.0);
        }
    }
    SUBCASE("exceptional colors enter as singletons") {
        const Equipartition part(6, {{1, 2}, {3, 4}}, {5, 6});
        CHECK(energy(p, part.expanded()) ==
              doctest::Approx(tri_energy(p, part.expanded(), part.expanded(), part.expanded())));
    }
}

TEST_CASE("refinement never decreases the energy") {
    Rng rng(63);
    for (int round = 0; round < 30; ++round) {
        Rng stream = rng.split(round);
        const int n = 12;
        const auto p = testsupport::random_palette(stream, n, 0.4);
        // random coarse partition and then a random refinement of it
        std::vector<std::vector<int>> coarse(3);
        for (int v = 1; v <= n; ++v) {
            coarse[static_cast<std::size_t>(stream.uniform_int(0, 2))].push_back(v);
        }
        coarse.erase(std::remove_if(coarse.begin(), coarse.end(),
                                    [](const auto& c) { return c.empty(); }),
                     coarse.end());
        std::vector<std::vector<int>> fine;
        for (const auto& cell : coarse) {
            std::vector<int> left, right;
            for (int v : cell) (stream.bernoulli(0.5) ? left : right).push_back(v);
            if (!left.empty()) fine.push_back(left);
            if (!right.empty()) fine.push_back(right);
        }
        CHECK(energy(p, fine) >= energy(p, coarse) - 1e-12);
    }
}

TEST_CASE("a verified witness cut buys the fifth-power energy increment") {
    const auto p = planted_half_split();
    const auto v1 = range(1, 20), v2 = range(21, 40), v3 = range(41, 60);
    const double eps = 0.4;
    const auto audit = eps_regular_audit(p, v1, v2, v3, eps, 20, 99, false);
    REQUIRE(audit.witness_found);
    auto split = [](const std::vector<int>& v, const std::vector<int>& cut) {
        std::vector<int> inside, outside;
        for (int x : v) {
            if (std::find(cut.begin(), cut.end(), x) != cut.end()) {
                inside.push_back(x);
            } else {
                outside.push_back(x);
            }
        }
        std::vector<std::vector<int>> cells;
        if (!inside.empty()) cells.push_back(inside);
        if (!outside.empty()) cells.push_back(outside);
        return cells;
    };
    const auto c1 = split(v1, audit.witness.witness_sets[0]);
    const auto c2 = split(v2, audit.witness.witness_sets[1]);
    const auto c3 = split(v3, audit.witness.witness_sets[2]);
    const double n = 60.0;
    const double before =
        (20.0 * 20.0 * 20.0 / (n * n * n)) *
        triple_density(p, v1, v2, v3) * triple_density(p, v1, v2, v3);
    // q over the refined cells of this (and only this) triple
    double after = 0.0;
    for (const auto& a : c1)
        for (const auto& b : c2)
            for (const auto& c : c3) {
                const double d = triple_density(p, a, b, c);
                after += (static_cast<double>(a.size()) * b.size() * c.size() / (n * n * n)) * d *
                         d;
            }
    const double required = std::pow(eps, 5.0) * 20.0 * 20.0 * 20.0 / (n * n * n);
    CHECK(after >= before + required - 1e-12);
}

TEST_CASE("regularize accepts flat palettes in the first round") {
    for (const auto& p : {pal(12, testsupport::all_patterns(12)), pal(12, {})}) {
        const auto cert = regularize(p, 0.3, 2, 7);
        CHECK(cert.complete);
        CHECK(cert.rounds == 1);
        CHECK(cert.energy_trace.size() == 1);
        CHECK(cert.meets_triple_bound);
        CHECK(cert.irregular.empty());
    }
}

TEST_CASE("regularize on a planted instance: energy climbs, increments hold") {
    const auto p = planted_half_split();
    RegularizeOptions options;
    options.samples = 30;
    const auto cert = regularize(p, 0.25, 3, 5, options);
    CHECK(cert.rounds <= static_cast<int>(std::ceil(16.0 / std::pow(0.25, 6.0))) + 1);
    for (std::size_t i = 1; i < cert.energy_trace.size(); ++i) {
        CHECK(cert.energy_trace[i] >= cert.energy_trace[i - 1] - 1e-12);
    }
    for (const auto& inc : cert.increments) {
        CHECK(inc.after >= inc.before + inc.required - 1e-12);
    }
    CHECK(cert.energy >= 0.0);
    CHECK(cert.energy <= 1.0);
    CHECK(cert.energy_trace.size() >= 2);  // the planted cut forces a refinement
    CHECK(cert.partition.universe() == 60);
    CHECK(cert.partition.exceptional().empty());
}

TEST_CASE("regularize is reproducible for a fixed seed") {
    Rng rng(64);
    const auto p = testsupport::random_palette(rng, 30, 0.5);
    const auto a = regularize(p, 0.3, 3, 11);
    const auto b = regularize(p, 0.3, 3, 11);
    CHECK(a.energy == b.energy);
    CHECK(a.energy_trace == b.energy_trace);
    CHECK(a.rounds == b.rounds);
    CHECK(a.partition.parts() == b.partition.parts());
}

TEST_CASE("density closeness under refinement with a small energy gap") {
    Rng rng(65);
    const double eps = 0.5;
    int tested = 0;
    for (int round = 0; round < 10; ++round) {
        Rng stream = rng.split(round);
        const int n = 60;
        const auto p = testsupport::random_palette(stream, n, 0.5);
        std::vector<std::vector<int>> coarse{range(1, 20), range(21, 40), range(41, 60)};
        std::vector<std::vector<std::vector<int>>> cells;
        std::vector<std::vector<int>> fine;
        for (const auto& part : coarse) {
            std::vector<int> left(part.begin(), part.begin() + 10);
            std::vector<int> right(part.begin() + 10, part.end());
            cells.push_back({left, right});
            fine.push_back(left);
            fine.push_back(right);
        }
        if (energy(p, fine) - energy(p, coarse) > std::pow(eps, 4.0) / 64.0) continue;
        ++tested;
        int offending = 0;
        for (std::size_t i = 0; i < coarse.size(); ++i)
            for (std::size_t j = 0; j < coarse.size(); ++j)
                for (std::size_t k = 0; k < coarse.size(); ++k) {
                    const double base = triple_density(p, coarse[i], coarse[j], coarse[k]);
                    int deviating = 0;
                    for (const auto& a : cells[i])
                        for (const auto& b : cells[j])
                            for (const auto& c : cells[k]) {
                                if (std::abs(triple_density(p, a, b, c) - base) > eps)
                                    ++deviating;
                            }
                    if (deviating > eps * 8) ++offending;
                }
        CHECK(static_cast<double>(offending) <= eps * 27);
    }
    CHECK(tested >= 5);
}

TEST_CASE("small superset additions never break a clean exhaustive triple at 2eps") {
    Rng rng(66);
    const double eps = 0.25;
    // complete core on three 8-blocks, sprinkled patterns on the extra colors
    std::vector<Pattern> patterns;
    for (int a = 1; a <= 8; ++a)
        for (int b = 9; b <= 16; ++b)
            for (int c = 17; c <= 24; ++c) patterns.push_back({a, b, c});
    for (int b = 9; b <= 16; ++b)
        for (int c = 17; c <= 24; ++c) {
            if (rng.bernoulli(0.5)) patterns.push_back({25, b, c});
        }
    const auto p = pal(27, patterns);
    const auto v1 = range(1, 8), v2 = range(9, 16), v3 = range(17, 24);
    const auto clean_audit = eps_regular_audit(p, v1, v2, v3, eps, 0, 1);
    REQUIRE(clean_audit.mode == AuditMode::kExhaustive);
    REQUIRE_FALSE(clean_audit.witness_found);
    auto with = [](std::vector<int> v, int extra) {
        v.push_back(extra);
        return v;
    };
    const auto super_audit =
        eps_regular_audit(p, with(v1, 25), with(v2, 26), with(v3, 27), 2 * eps, 0, 1);
    CHECK(super_audit.mode == AuditMode::kExhaustive);
    CHECK_FALSE(super_audit.witness_found);
}

TEST_CASE("clean fixtures") {
    SUBCASE("exact blow-up keeps everything outside bucket one") {
        const auto base = pal(3, {{1, 2, 3}});
        const auto p = blow_up(base, {3, 3, 3}).palette;
        const std::vector<std::vector<int>> parts{range(1, 3), range(4, 6), range(7, 9)};
        const auto result = clean(p, parts, parts, 0.1);
        CHECK(result.removed == 0);
        CHECK(result.cleaned == p);
        CHECK(result.reduced == pal(3, {{1, 2, 3}}));
    }
    SUBCASE("threshold one empties the reduced palette") {
        const auto p = pal(6, testsupport::all_patterns(6));
        const std::vector<std::vector<int>> parts{range(1, 2), range(3, 4), range(5, 6)};
        const auto result = clean(p, parts, parts, 4.5);
        CHECK(result.reduced.pattern_count() == 0);
        CHECK(result.cleaned.pattern_count() == 0);
        CHECK(result.removed == p.pattern_count());
    }
    SUBCASE("two parts force every pattern into bucket one") {
        const auto p = pal(6, testsupport::all_patterns(6));
        const std::vector<std::vector<int>> parts{range(1, 3), range(4, 6)};
        const auto result = clean(p, parts, parts, 0.5);
        CHECK(result.removed_by_bucket[0] == p.pattern_count());
        CHECK(result.cleaned.pattern_count() == 0);
    }
    SUBCASE("model set validation") {
        const auto p = pal(4, {{1, 2, 3}});
        CHECK_THROWS_AS(
            clean(p, {range(1, 2), range(3, 4)}, {range(1, 2), {}}, 0.5),
            std::invalid_argument);
        CHECK_THROWS_AS(
            clean(p, {range(1, 2), range(3, 4)}, {range(1, 2), range(1, 2)}, 0.5),
            std::invalid_argument);
    }
}

TEST_CASE("clean bucket arithmetic on a generated instance") {
    Rng rng(67);
    const int n = 24;
    const auto p = testsupport::random_palette(rng, n, 0.5);
    const std::vector<std::vector<int>> parts{range(1, 6), range(7, 12), range(13, 18),
                                              range(19, 24)};
    std::vector<std::vector<int>> models;
    for (const auto& part : parts) models.emplace_back(part.begin(), part.begin() + 3);
    const double alpha = 0.9;
    const auto result = clean(p, parts, models, alpha);
    const int t = static_cast<int>(parts.size());
    const double max_part = 6.0;

    // bucket 1: repeated-class triples, at most 3t^2 of them
    CHECK(static_cast<double>(result.removed_by_bucket[0]) <=
          3.0 * t * t * max_part * max_part * max_part);
    // bucket 2: count the measured deviating triples and bound the deletions
    long long deviating = 0;
    const double threshold = 2.0 * alpha / 9.0;
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            for (int k = 0; k < t; ++k) {
                if (i == j || j == k || i == k) continue;
                const double du = triple_density(p, models[static_cast<std::size_t>(i)],
                                                 models[static_cast<std::size_t>(j)],
                                                 models[static_cast<std::size_t>(k)]);
                const double dv = triple_density(p, parts[static_cast<std::size_t>(i)],
                                                 parts[static_cast<std::size_t>(j)],
                                                 parts[static_cast<std::size_t>(k)]);
                if (std::abs(du - dv) > threshold) ++deviating;
            }
    CHECK(static_cast<double>(result.removed_by_bucket[1]) <=
          static_cast<double>(deviating) * max_part * max_part * max_part);
    // bucket 3: triples passing (2) but failing (3) have class density at
    // most 4 alpha / 9
    CHECK(static_cast<double>(result.removed_by_bucket[2]) <=
          4.0 * alpha / 9.0 * n * n * n + 1e-9);
    CHECK(result.removed ==
          result.removed_by_bucket[0] + result.removed_by_bucket[1] + result.removed_by_bucket[2]);

    // the cleaned palette is contained in a blow-up of the reduced palette
    std::vector<int> class_of(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (int v : parts[i]) class_of[static_cast<std::size_t>(v - 1)] = static_cast<int>(i) + 1;
    }
    CHECK(is_homomorphism(result.cleaned, result.reduced, class_of));
}

TEST_CASE("sample_model_sets") {
    SUBCASE("a single cell per part is returned verbatim") {
        Rng rng(68);
        const auto p = testsupport::random_palette(rng, 12, 0.5);
        const std::vector<std::vector<int>> coarse{range(1, 4), range(5, 8), range(9, 12)};
        std::vector<std::vector<std::vector<int>>> cells;
        for (const auto& part : coarse) cells.push_back({part});
        const auto sample = sample_model_sets(p, coarse, cells, 0.5, 5, 1);
        CHECK(sample.sets == coarse);
        CHECK(sample.min_fraction == doctest::Approx(4.0 / 12.0));
    }
    SUBCASE("seeds reproduce selections") {
        Rng rng(69);
        const auto p = testsupport::random_palette(rng, 12, 0.5);
        const std::vector<std::vector<int>> coarse{range(1, 6), range(7, 12)};
        std::vector<std::vector<std::vector<int>>> cells;
        for (const auto& part : coarse) {
            cells.push_back({{part[0], part[1], part[2]}, {part[3], part[4], part[5]}});
        }
        const auto a = sample_model_sets(p, coarse, cells, 0.4, 8, 42);
        const auto b = sample_model_sets(p, coarse, cells, 0.4, 8, 42);
        CHECK(a.sets == b.sets);
        CHECK(a.retries_used == b.retries_used);
    }
    SUBCASE("a regularize output admits a passing sample") {
        // density well above 1/2: the minimum qualifying sub-boxes have only
        // ceil(eps|U|) = 3 colors per side and concentrate only away from 1/2
        Rng rng(70);
        const auto p = testsupport::random_palette(rng, 60, 0.92);
        const auto cert = regularize(p, 0.3, 3, 17);
        REQUIRE(cert.complete);
        std::vector<std::vector<std::vector<int>>> cells;
        for (const auto& part : cert.partition.parts()) {
            const auto half = part.size() / 2;
            std::vector<int> left(part.begin(), part.begin() + static_cast<std::ptrdiff_t>(half));
            std::vector<int> right(part.begin() + static_cast<std::ptrdiff_t>(half), part.end());
            cells.push_back({left, right});
        }
        const auto sample =
            sample_model_sets(p, cert.partition.parts(), cells, 0.3, 20, 23);
        CHECK(sample.passed);
        CHECK(sample.retries_used <= 100);
        CHECK(sample.min_fraction > 0.0);
    }
}

TEST_CASE("the iteration cap flags an incomplete certificate") {
    const auto p = planted_half_split();
    RegularizeOptions options;
    options.samples = 15;
    options.max_rounds = 1;  // the planted cut needs at least one refinement
    const auto cert = regularize(p, 0.25, 3, 5, options);
    CHECK_FALSE(cert.complete);
    CHECK(cert.rounds == 1);
    // the certificate still reports a valid partition and a final audit
    CHECK(cert.partition.universe() == 60);
}

TEST_CASE("certificate witnesses re-verify against the delivered partition") {
    const auto p = planted_half_split();
    RegularizeOptions options;
    options.samples = 15;
    options.max_rounds = 1;
    const auto cert = regularize(p, 0.25, 3, 5, options);
    REQUIRE(!cert.irregular.empty());
    for (const auto& w : cert.irregular) {
        const auto& parts = cert.partition.parts();
        CHECK(verify_witness(p, parts[static_cast<std::size_t>(w.triple[0] - 1)],
                             parts[static_cast<std::size_t>(w.triple[1] - 1)],
                             parts[static_cast<std::size_t>(w.triple[2] - 1)], w, 0.25));
    }
}
