#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "paltk/core.hpp"

namespace paltk {

/// Three-valued search outcome. Budget exhaustion is kUnknown and is never
/// conflated with a definitive no.
enum class Verdict { kNo, kYes, kUnknown };

inline Verdict negate(Verdict v) {
    if (v == Verdict::kYes) return Verdict::kNo;
    if (v == Verdict::kNo) return Verdict::kYes;
    return Verdict::kUnknown;
}

inline constexpr long long kDefaultBudget = 10'000'000;

/// Witness that a palette paints a 3-graph: a total vertex order (listed
/// smallest first) and a coloring of the shadow pairs.
struct Painting {
    std::vector<int> order;
    std::map<VertexPair, int> pair_coloring;
};

/// Checks the painting conditions from scratch: order is a bijection on the
/// vertex set, the coloring is total on the shadow, and every edge's ordered
/// pair colors form a pattern.
bool is_painting(const Palette& p, const ThreeGraph& f, const Painting& painting);

struct PaintingSearchResult {
    Verdict verdict = Verdict::kUnknown;
    std::optional<Painting> witness;
    long long nodes = 0;
};

/// Backtracking search for a painting: vertex orderings are enumerated
/// lazily while pair-color constraints propagate edge by edge; a branch dies
/// the moment some pair's candidate color set empties. Vertices outside the
/// shadow are appended to the returned ordering after the search. Supports
/// color_count <= 64.
PaintingSearchResult find_painting(const Palette& p, const ThreeGraph& f,
                                   long long budget = kDefaultBudget);

Verdict paints(const Palette& p, const ThreeGraph& f, long long budget = kDefaultBudget);
Verdict is_deficient(const Palette& p, const ThreeGraph& f, long long budget = kDefaultBudget);
Verdict is_family_deficient(const Palette& p, std::span<const ThreeGraph> family,
                            long long budget = kDefaultBudget);

struct PaintingCount {
    bool exact = false;  // false when the budget ran out
    long long count = 0;
    long long nodes = 0;
};

/// Number of maps phi from the shadow of f to the colors for which some
/// total ordering makes (ordering, phi) a painting. Counts maps, not
/// (ordering, map) pairs.
PaintingCount count_paintings(const Palette& p, const ThreeGraph& f,
                              long long budget = kDefaultBudget);

/// The linear 3-graph on vertex set shadow(f) (pairs indexed in sorted
/// order) whose edges are {uv, uw, vw} for each edge uvw of f. The output is
/// checked to be linear before returning.
ThreeGraph shadow_linear(const ThreeGraph& f);

}  // namespace paltk
