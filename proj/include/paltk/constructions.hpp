#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "paltk/core.hpp"
#include "paltk/painting.hpp"

namespace paltk {

struct PaletteConstruction {
    ThreeGraph graph;
    std::vector<int> pair_colors;  // indexed by pair_index(a, b, n)
};

/// Flat index of the pair a < b inside [1..n]^(2), row-major.
std::size_t pair_index(int a, int b, int n);

/// The lower-bound construction: color every pair of [1..n] independently
/// with P(color = i) = x_i (per-pair substreams of the seed, so the coloring
/// is reproducible in any evaluation order) and keep the triples a < b < c
/// whose ordered pair colors form a pattern.
PaletteConstruction palette_construction(const Palette& p, const WeightVector& x, int n,
                                         std::uint64_t seed);

/// The explicit painting witness of a constructed graph: natural order plus
/// the auxiliary coloring restricted to the shadow.
Painting construction_painting(const PaletteConstruction& construction);

struct DensityAuditResult {
    bool dense = false;
    double worst_margin = 0.0;       // min over checked X of e(X) - d C(|X|,3) + eta n^3
    std::vector<int> worst_subset;
    long long subsets_checked = 0;
    bool exhaustive = false;
};

enum class DensityAuditMode { kAuto, kSampled };

/// Checks e(X) >= d C(|X|,3) - eta n^3. Exhaustive over all vertex subsets
/// for n <= 18 (unless kSampled forces the heuristic path); otherwise
/// samples random subsets across a size grid and runs a greedy low-density
/// descent, so a pass is evidence rather than proof. Any violation is
/// re-verified by an exact recount.
DensityAuditResult d_eta_density_audit(const ThreeGraph& h, double d, double eta,
                                       int samples = 1000, std::uint64_t seed = 2024,
                                       DensityAuditMode mode = DensityAuditMode::kAuto);

/// Index set [1..t], disjoint pair vertex sets P^{ij}, and for each index
/// triple a 3-partite constituent on (P^{ij}, P^{ik}, P^{jk}).
class Reduced3Graph {
public:
    struct Constituent {
        std::array<int, 3> indices;              // i < j < k
        std::vector<std::array<int, 3>> edges;   // (p, q, r) in P^{ij} x P^{ik} x P^{jk}
    };

    Reduced3Graph(int index_count, std::map<VertexPair, std::vector<int>> pair_sets,
                  std::vector<Constituent> constituents);

    int index_count() const { return t_; }
    const std::vector<int>& pair_set(int i, int j) const;
    const std::vector<Constituent>& constituents() const { return constituents_; }
    const Constituent& constituent(int i, int j, int k) const;

private:
    int t_;
    std::map<VertexPair, std::vector<int>> pair_sets_;
    std::vector<Constituent> constituents_;
};

/// e(A^{ijk}) >= d |P^{ij}||P^{ik}||P^{jk}| for every index triple.
bool is_uniformly_dense_reduced(const Reduced3Graph& a, double d);

struct ReducedMap {
    std::vector<int> index_of_vertex;          // lambda, 1-based indices
    std::map<VertexPair, int> pair_image;      // phi, shadow pair -> pair-set vertex
};

struct ReducedMapResult {
    Verdict verdict = Verdict::kUnknown;
    std::optional<ReducedMap> map;
    long long nodes = 0;
};

bool is_reduced_map(const ThreeGraph& f, const Reduced3Graph& a, const ReducedMap& map);

/// Searches for a reduced map of f into a: lambda separates shadow-adjacent
/// vertices, phi sends each shadow pair into the matching pair set, and
/// every edge lands in its constituent. Absence within budget certifies
/// that a is f-free.
ReducedMapResult reduced_map_exists(const ThreeGraph& f, const Reduced3Graph& a,
                                    long long budget = kDefaultBudget);

class SliceDisagreement : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads off the common palette slice: per-pair identifications send s
/// chosen vertices of each P^{ij} to [s]; every index triple of `indices`
/// must induce the same subset of [s]^3, which is returned as a palette.
/// Throws SliceDisagreement when two triples disagree.
Palette palette_from_slice(const Reduced3Graph& a, const std::vector<int>& indices,
                           const std::map<VertexPair, std::vector<int>>& identification);

/// Assembles the reduced 3-graph whose every constituent is the palette g
/// transported along per-pair vertex lists (the inverse of
/// palette_from_slice on those lists).
Reduced3Graph slice_assembly(const Palette& g, int index_count,
                             const std::map<VertexPair, std::vector<int>>& pair_vertices);

}  // namespace paltk
