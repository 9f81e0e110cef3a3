#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paltk/core.hpp"

namespace paltk {

/// Value of the Lagrange polynomial sum over patterns of x_i x_j x_k.
/// Degenerate patterns contribute squared/cubed terms as the monomial
/// dictates.
double lambda_eval(const Palette& p, std::span<const double> x);

double lambda_eval(const Palette& p, const WeightVector& x);

/// Gradient of the Lagrange polynomial; repeated variables accumulate their
/// multiplicity.
std::vector<double> lambda_grad(const Palette& p, std::span<const double> x);

/// Euclidean projection onto the standard simplex (sort-and-threshold).
std::vector<double> project_to_simplex(std::span<const double> v);

struct LagrangianResult {
    double value = 0.0;
    std::vector<double> argmax;
    int restarts_used = 0;
    bool converged = false;
};

/// Best local maximum of the Lagrange polynomial over the simplex found by
/// multi-start projected gradient ascent with Armijo backtracking. Starts:
/// every simplex vertex, the barycenter, and `restarts` Dirichlet(1)
/// samples. The value is a certified lower bound on the Lagrangian (it is
/// attained at the returned feasible point); `converged` reports whether the
/// best run drove the projected-gradient residual below tol. Ties between
/// runs break toward the lexicographically least argmax rounded to 1e-9.
/// Deterministic for fixed inputs and seed, regardless of `threads`.
LagrangianResult maximize_lagrangian(const Palette& p, int restarts = 16, int iters = 1000,
                                     double tol = 1e-9, std::uint64_t seed = 2024,
                                     int threads = 1);

/// Max of the Lagrange polynomial over simplex points with denominator m; a
/// lower bound on the Lagrangian within O(1/m) of it. Guards the composition
/// count at 10^7.
double grid_oracle(const Palette& p, int resolution);

enum class ReducedVerdict { kReduced, kNotReduced, kInconclusive };

struct ReducednessReport {
    ReducedVerdict verdict = ReducedVerdict::kInconclusive;
    double lambda = 0.0;      // estimate for the full palette
    double min_margin = 0.0;  // min over one-pattern deletions of the Lagrangian drop
};

/// A palette is reduced when every proper subpalette has strictly smaller
/// Lagrangian; one-pattern deletions suffice by monotonicity. Margins of at
/// most 1e-9 count as numerically equal (not reduced); margins inside
/// (1e-9, tol] are inconclusive.
ReducednessReport is_reduced(const Palette& p, double tol = 1e-7, int restarts = 16,
                             int iters = 1000, std::uint64_t seed = 2024);

/// min_i sizes[i] / sum(sizes); audits near-extremal blow-ups.
double min_part_fraction(std::span<const int> sizes);

}  // namespace paltk
