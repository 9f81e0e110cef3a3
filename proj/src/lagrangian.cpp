#include "paltk/lagrangian.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>

#include "paltk/rng.hpp"

namespace paltk {

double lambda_eval(const Palette& p, std::span<const double> x) {
    if (static_cast<int>(x.size()) != p.color_count()) {
        throw std::invalid_argument("lambda_eval: weighting dimension mismatch");
    }
    double sum = 0.0;
    for (const auto& q : p.patterns()) {
        sum += x[static_cast<std::size_t>(q[0] - 1)] * x[static_cast<std::size_t>(q[1] - 1)] *
               x[static_cast<std::size_t>(q[2] - 1)];
    }
    return sum;
}

double lambda_eval(const Palette& p, const WeightVector& x) {
    return lambda_eval(p, std::span<const double>(x.values()));
}

std::vector<double> lambda_grad(const Palette& p, std::span<const double> x) {
    if (static_cast<int>(x.size()) != p.color_count()) {
        throw std::invalid_argument("lambda_grad: weighting dimension mismatch");
    }
    std::vector<double> g(x.size(), 0.0);
    for (const auto& q : p.patterns()) {
        const auto i = static_cast<std::size_t>(q[0] - 1);
        const auto j = static_cast<std::size_t>(q[1] - 1);
        const auto k = static_cast<std::size_t>(q[2] - 1);
        g[i] += x[j] * x[k];
        g[j] += x[i] * x[k];
        g[k] += x[i] * x[j];
    }
    return g;
}

std::vector<double> project_to_simplex(std::span<const double> v) {
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double running = 0.0;
    double tau = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        running += u[j];
        const double candidate = (running - 1.0) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) tau = candidate;
    }
    std::vector<double> x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) x[i] = std::max(v[i] - tau, 0.0);
    return x;
}

namespace {

void renormalize(std::vector<double>& x) {
    double sum = 0.0;
    for (double xi : x) sum += xi;
    if (sum > 0.0) {
        for (double& xi : x) xi /= sum;
    }
}

struct AscentOutcome {
    double value = 0.0;
    std::vector<double> point;
    bool converged = false;
};

AscentOutcome ascend(const Palette& p, std::vector<double> x, int iters, double tol) {
    double fx = lambda_eval(p, x);
    bool converged = false;
    for (int it = 0; it < iters; ++it) {
        const auto g = lambda_grad(p, x);
        std::vector<double> trial(x.size());
        // residual of the fixed-point map x -> proj(x + g)
        for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + g[i];
        auto moved = project_to_simplex(trial);
        double residual = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            residual = std::max(residual, std::abs(moved[i] - x[i]));
        }
        if (residual < tol) {
            converged = true;
            break;
        }
        double step = 1.0;
        bool accepted = false;
        while (step > 1e-14) {
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * g[i];
            auto y = project_to_simplex(trial);
            double dir = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dir += g[i] * (y[i] - x[i]);
            const double fy = lambda_eval(p, y);
            if (fy >= fx + 1e-4 * dir && fy > fx) {
                x = std::move(y);
                fx = fy;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            converged = true;  // no ascent direction left at machine precision
            break;
        }
    }
    renormalize(x);
    return {lambda_eval(p, x), std::move(x), converged};
}

std::vector<double> rounded(const std::vector<double>& x) {
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::round(x[i] * 1e9);
    return r;
}

}  // namespace

LagrangianResult maximize_lagrangian(const Palette& p, int restarts, int iters, double tol,
                                     std::uint64_t seed, int threads) {
    if (restarts < 1) throw std::invalid_argument("maximize_lagrangian: restarts must be >= 1");
    const int c = p.color_count();
    if (c == 0) throw std::invalid_argument("maximize_lagrangian: palette has no colors");

    std::vector<std::vector<double>> starts;
    for (int i = 0; i < c; ++i) {
        std::vector<double> vertex(static_cast<std::size_t>(c), 0.0);
        vertex[static_cast<std::size_t>(i)] = 1.0;
        starts.push_back(std::move(vertex));
    }
    starts.push_back(std::vector<double>(static_cast<std::size_t>(c), 1.0 / c));
    Rng rng(seed);
    for (int r = 0; r < restarts; ++r) starts.push_back(rng.split(101, r).dirichlet1(c));

    std::vector<AscentOutcome> outcomes(starts.size());
    const int workers = std::max(1, threads);
    if (workers == 1) {
        for (std::size_t i = 0; i < starts.size(); ++i) {
            outcomes[i] = ascend(p, starts[i], iters, tol);
        }
    } else {
        std::vector<std::future<void>> futures;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [&]() {
                for (std::size_t i = next.fetch_add(1); i < starts.size();
                     i = next.fetch_add(1)) {
                    outcomes[i] = ascend(p, starts[i], iters, tol);
                }
            }));
        }
        for (auto& f : futures) f.get();
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i) {
        if (outcomes[i].value > outcomes[best].value ||
            (outcomes[i].value == outcomes[best].value &&
             rounded(outcomes[i].point) < rounded(outcomes[best].point))) {
            best = i;
        }
    }
    LagrangianResult result;
    result.value = outcomes[best].value;
    result.argmax = outcomes[best].point;
    result.restarts_used = restarts;
    result.converged = outcomes[best].converged;
    return result;
}

namespace {

long long composition_count(int m, int c) {
    // C(m + c - 1, c - 1), saturating at the guard threshold
    long long result = 1;
    for (int i = 1; i < c; ++i) {
        result = result * (m + i) / i;
        if (result > 100'000'000) return result;
    }
    return result;
}

double grid_search(const Palette& p, std::vector<double>& x, std::vector<int>& parts, int index,
                   int remaining, int m) {
    const int c = p.color_count();
    if (index == c - 1) {
        parts[static_cast<std::size_t>(index)] = remaining;
        for (int i = 0; i < c; ++i) {
            x[static_cast<std::size_t>(i)] =
                static_cast<double>(parts[static_cast<std::size_t>(i)]) / m;
        }
        return lambda_eval(p, x);
    }
    double best = 0.0;
    for (int k = 0; k <= remaining; ++k) {
        parts[static_cast<std::size_t>(index)] = k;
        best = std::max(best, grid_search(p, x, parts, index + 1, remaining - k, m));
    }
    return best;
}

}  // namespace

double grid_oracle(const Palette& p, int resolution) {
    if (resolution < 1) throw std::invalid_argument("grid_oracle: resolution must be >= 1");
    const int c = p.color_count();
    if (c == 0) throw std::invalid_argument("grid_oracle: palette has no colors");
    if (composition_count(resolution, c) > 10'000'000) {
        throw std::invalid_argument("grid_oracle: enumeration too large");
    }
    std::vector<double> x(static_cast<std::size_t>(c), 0.0);
    std::vector<int> parts(static_cast<std::size_t>(c), 0);
    return grid_search(p, x, parts, 0, resolution, resolution);
}

ReducednessReport is_reduced(const Palette& p, double tol, int restarts, int iters,
                             std::uint64_t seed) {
    if (p.pattern_count() < 1) {
        throw std::invalid_argument("is_reduced: palette has no patterns");
    }
    constexpr double kEqualityEps = 1e-9;
    // a grid floor sharpens the per-palette lower bounds when cheap
    const int grid_resolution = p.color_count() <= 3 ? 36 : (p.color_count() <= 4 ? 20 : 0);
    auto lower_bound_of = [&](const Palette& q) {
        double value = maximize_lagrangian(q, restarts, iters, 1e-10, seed).value;
        if (grid_resolution > 0) value = std::max(value, grid_oracle(q, grid_resolution));
        return value;
    };
    ReducednessReport report;
    const auto full = maximize_lagrangian(p, restarts, iters, 1e-10, seed);
    report.lambda = std::max(
        full.value, grid_resolution > 0 ? grid_oracle(p, grid_resolution) : full.value);
    double min_margin = report.lambda;  // deleting the last pattern leaves Lambda = 0
    for (int skip = 0; skip < p.pattern_count(); ++skip) {
        std::vector<Pattern> rest;
        for (int i = 0; i < p.pattern_count(); ++i) {
            if (i != skip) rest.push_back(p.patterns()[static_cast<std::size_t>(i)]);
        }
        double sub = 0.0;
        if (!rest.empty()) {
            const Palette q(p.color_count(), std::move(rest));
            // the full argmax is feasible for the subpalette and catches
            // deletions that do not move the maximum at all
            sub = std::max(lower_bound_of(q), lambda_eval(q, full.argmax));
        }
        min_margin = std::min(min_margin, report.lambda - sub);
    }
    report.min_margin = min_margin;
    if (min_margin > tol) {
        report.verdict = ReducedVerdict::kReduced;
    } else if (min_margin <= kEqualityEps) {
        report.verdict = ReducedVerdict::kNotReduced;
    } else {
        report.verdict = ReducedVerdict::kInconclusive;
    }
    return report;
}

double min_part_fraction(std::span<const int> sizes) {
    if (sizes.empty()) throw std::invalid_argument("min_part_fraction: empty partition");
    long long total = 0;
    int min_size = sizes[0];
    for (int s : sizes) {
        if (s < 0) throw std::invalid_argument("min_part_fraction: negative size");
        total += s;
        min_size = std::min(min_size, s);
    }
    if (total == 0) throw std::invalid_argument("min_part_fraction: empty color set");
    return static_cast<double>(min_size) / static_cast<double>(total);
}

}  // namespace paltk
