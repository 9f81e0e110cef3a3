#pragma once

#include <optional>
#include <vector>

#include "paltk/core.hpp"
#include "paltk/painting.hpp"

namespace paltk {

struct HomSearchResult {
    Verdict verdict = Verdict::kUnknown;
    std::optional<std::vector<int>> map;  // map[a-1] = image of color a of the source
    long long nodes = 0;
};

/// Checks that map sends every pattern of source to a pattern of target.
bool is_homomorphism(const Palette& source, const Palette& target, const std::vector<int>& map);

/// Searches for a color map psi with psi(q) in target for every pattern q of
/// the source. Colors are assigned in descending pattern-degree order with
/// forward checking.
HomSearchResult find_homomorphism(const Palette& source, const Palette& target,
                                  long long budget = kDefaultBudget);

/// Same search restricted to injective maps ("source is a subpalette of
/// target" when it succeeds).
HomSearchResult find_embedding(const Palette& source, const Palette& target,
                               long long budget = kDefaultBudget);

/// inner is contained in a blow-up of outer iff there is a homomorphism
/// from inner to outer.
Verdict contained_in_blowup(const Palette& inner, const Palette& outer,
                            long long budget = kDefaultBudget);

/// Canonical-form equality; both palettes must have at most 8 colors.
bool is_isomorphic(const Palette& p, const Palette& q);

Verdict embedding_exists(const Palette& p, const Palette& q, long long budget = kDefaultBudget);

/// Color b dominates a when substituting b for a at any nonempty subset of
/// the occurrences of a maps every pattern of p into p.
bool dominates(const Palette& p, int a, int b);

}  // namespace paltk
