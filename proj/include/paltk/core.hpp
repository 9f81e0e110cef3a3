#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "paltk/rational.hpp"

namespace paltk {

/// Ordered triple of colors, 1-based. Degenerate patterns (fewer than three
/// distinct colors) are legal everywhere unless an operation says otherwise.
using Pattern = std::array<int, 3>;

/// Unordered vertex triple, stored sorted ascending, 1-based.
using Edge3 = std::array<int, 3>;

using VertexPair = std::pair<int, int>;  // stored with first < second

inline int distinct_colors(const Pattern& p) {
    int d = 1;
    if (p[1] != p[0]) ++d;
    if (p[2] != p[0] && p[2] != p[1]) ++d;
    return d;
}
inline bool is_degenerate(const Pattern& p) { return distinct_colors(p) < 3; }

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// A set of colors [1..c] together with a set of ordered color triples
/// (patterns). Immutable value; patterns are kept sorted lexicographically
/// and deduplicated, so equal palettes compare equal structurally. Colors
/// that appear in no pattern are legal and preserved.
class Palette {
public:
    Palette() = default;  // empty palette on 0 colors
    Palette(int color_count, std::vector<Pattern> patterns);

    int color_count() const { return color_count_; }
    const std::vector<Pattern>& patterns() const { return patterns_; }
    int pattern_count() const { return static_cast<int>(patterns_.size()); }
    bool contains(const Pattern& p) const;
    bool is_nondegenerate() const;

    friend bool operator==(const Palette& a, const Palette& b) {
        return a.color_count_ == b.color_count_ && a.patterns_ == b.patterns_;
    }
    friend bool operator!=(const Palette& a, const Palette& b) { return !(a == b); }
    friend bool operator<(const Palette& a, const Palette& b) {
        if (a.color_count_ != b.color_count_) return a.color_count_ < b.color_count_;
        return a.patterns_ < b.patterns_;
    }

private:
    int color_count_ = 0;
    std::vector<Pattern> patterns_;
};

/// A 3-uniform hypergraph on vertices [1..n]; edges are 3-element subsets.
class ThreeGraph {
public:
    ThreeGraph() = default;
    ThreeGraph(int vertex_count, std::vector<Edge3> edges);

    int vertex_count() const { return vertex_count_; }
    const std::vector<Edge3>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool contains(const Edge3& e) const;

    friend bool operator==(const ThreeGraph& a, const ThreeGraph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
    }
    friend bool operator!=(const ThreeGraph& a, const ThreeGraph& b) { return !(a == b); }

private:
    int vertex_count_ = 0;
    std::vector<Edge3> edges_;  // each sorted ascending; list sorted, unique
};

/// Point of the standard simplex: one weight per color, entries in [0,1]
/// summing to 1 within 1e-12.
class WeightVector {
public:
    static constexpr double kSumTolerance = 1e-12;

    explicit WeightVector(std::vector<double> weights);

    const std::vector<double>& values() const { return weights_; }
    int size() const { return static_cast<int>(weights_.size()); }
    double operator[](int i) const { return weights_[static_cast<std::size_t>(i)]; }

    static WeightVector uniform(int color_count);

private:
    std::vector<double> weights_;
};

/// Labeled partition of the colors [1..universe] into near-equal parts
/// V_1..V_t plus an optional exceptional part V_0. Parts and the exceptional
/// set are disjoint and cover the universe; any two non-exceptional parts
/// differ in size by at most one.
class Equipartition {
public:
    Equipartition(int universe, std::vector<std::vector<int>> parts,
                  std::vector<int> exceptional = {});

    int universe() const { return universe_; }
    const std::vector<std::vector<int>>& parts() const { return parts_; }
    const std::vector<int>& exceptional() const { return exceptional_; }
    int part_count() const { return static_cast<int>(parts_.size()); }

    /// Parts plus one singleton per exceptional color; the partition the
    /// energy functional works over.
    std::vector<std::vector<int>> expanded() const;

private:
    int universe_ = 0;
    std::vector<std::vector<int>> parts_;
    std::vector<int> exceptional_;
};

// --- palette algebra ------------------------------------------------------

/// e(P) / c(P)^3, exact. Throws on a palette with no colors.
Rational density(const Palette& p);

/// Entrywise-reversed pattern set on the same colors.
Palette reverse(const Palette& p);

/// Induced subpalette on the color set u (relabeled to [1..|u|] preserving
/// numeric order).
Palette induced(const Palette& p, const std::vector<int>& u);

struct BlowUp {
    Palette palette;
    std::vector<int> origin;  // origin[q-1] = color of p the new color q came from
};

/// Replace color i by sizes[i-1] copies; patterns lift classwise. A size of
/// zero deletes the class.
BlowUp blow_up(const Palette& p, const std::vector<int>& sizes);

/// Lexicographically least pattern set over all color permutations. Two
/// palettes are isomorphic iff their canonical forms are equal. Full
/// permutation search; refuses color_count > 8.
Palette canonical_form(const Palette& p);

/// All vertex pairs covered by an edge, sorted.
std::vector<VertexPair> shadow(const ThreeGraph& f);

// --- text formats ---------------------------------------------------------
//
// Palette:      line 1 "palette <c>", then one "<a> <b> <c>" line per
//               pattern. ThreeGraph: line 1 "graph3 <n>", then one
//               "<u> <v> <w>" line per edge. '#' starts a comment; blank
//               lines are ignored. serialize(parse(text)) is byte-identical
//               to text once text lists its rows canonically sorted.

Palette parse_palette(const std::string& text);
std::string serialize(const Palette& p);

ThreeGraph parse_three_graph(const std::string& text);
std::string serialize(const ThreeGraph& f);

}  // namespace paltk
