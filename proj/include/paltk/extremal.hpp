#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paltk/core.hpp"
#include "paltk/painting.hpp"

namespace paltk {

struct ExtremalReport {
    int n = 0;
    std::vector<ThreeGraph> family;
    long long ex_value = -1;  // -1: no deficient palette exists (family has an edgeless member)
    std::vector<Palette> extremal_palettes;  // canonical forms, deduplicated
    long long nodes_searched = 0;
    bool exact = false;  // exhaustive search completed within budget
};

struct ExtremalOptions {
    bool nondegenerate = false;  // restrict to patterns with three distinct colors
    bool exhaustive = true;      // heuristic mode reports a lower bound with exact=false
    long long budget = 100'000'000;
    long long painting_budget = kDefaultBudget;
    std::uint64_t seed = 2024;  // heuristic mode restarts
};

/// Maximum pattern count of a family-deficient palette on n colors,
/// depth-first over patterns in canonical order with branch-and-bound,
/// pairwise-conflict prefiltering, and a deficiency cache keyed by canonical
/// form. Exhaustive mode requires n <= 4 and family members with at most 6
/// vertices.
ExtremalReport ex_pal(int n, std::span<const ThreeGraph> family, const ExtremalOptions& options = {});

/// The non-degenerate variant g(n, family): same search over patterns with
/// three distinct colors.
ExtremalReport g_nondegenerate(int n, std::span<const ThreeGraph> family,
                               const ExtremalOptions& options = {});

/// |P \ Q| + |Q \ P|; both palettes must share a color count.
int edit_distance(const Palette& p, const Palette& q);

struct MissingBad {
    std::vector<Pattern> missing;  // A = S \ Q
    std::vector<Pattern> bad;      // B = Q \ S
    int max_bad_degree = 0;        // Delta(B): patterns counted once per color
};

/// Missing and bad patterns of q against the blow-up of p with the given
/// class sizes (sizes sum to c(q)).
MissingBad missing_bad(const Palette& q, const Palette& p, std::span<const int> sizes);

struct BlowupFit {
    std::vector<int> assignment;  // color of q (1-based index) -> class of p
    long long bad_count = 0;
    bool exhaustive = false;  // false: local-search optimum
};

/// Class assignment of the colors of q minimizing the number of bad patterns
/// |q \ S|. Exhaustive over all t^n assignments when that count is at most
/// 10^7; otherwise single-color relocation local search from 10 random
/// starts.
BlowupFit best_blowup_fit(const Palette& q, const Palette& p, bool exhaustive = true,
                          std::uint64_t seed = 2024);

}  // namespace paltk
