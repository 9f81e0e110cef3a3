#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "paltk/core.hpp"
#include "paltk/painting.hpp"

namespace paltk {

/// Ordered graph on [1..vertex_count] with the natural base order; edges may
/// carry color labels (the triangle-system encoding uses them).
struct OrderedGraph {
    int vertex_count = 0;
    std::vector<VertexPair> edges;            // sorted, unique
    std::map<VertexPair, int> edge_labels;    // when present, total on edges

    bool has_edge(VertexPair e) const;
};

/// An ordered k-edge realizes permutation sigma relative to a total order
/// when x_i comes before x_j in the order exactly if sigma(i) < sigma(j).
/// `edge` lists the vertices ascending in the base order; `order_rank` maps
/// each vertex to its rank in the candidate order.
bool sigma_compatible(const std::vector<int>& edge, const std::vector<int>& sigma,
                      const std::vector<int>& order_rank);

std::vector<int> identity_perm(int k);
std::vector<int> reversal_perm(int k);

/// Linear k-graph on 3k-3 vertices; three edges pairwise meeting in one
/// vertex with labels increasing along each edge and the shared vertices
/// satisfying x_a = z_c, x_b = y_a, y_b = z_d.
struct GSigma {
    int k = 0;
    std::vector<int> sigma;
    std::array<int, 4> abcd = {0, 0, 0, 0};
    std::array<std::vector<int>, 3> edges;  // e1, e2, e3, each ascending
    int vertex_count = 0;
};

/// Builds G_sigma for sigma outside {id, rev}, k >= 3. The tuple
/// (a,b,c,d) defaults to the lexicographically least one with a < b, c < d,
/// sigma(a) < sigma(b), sigma(c) > sigma(d); a specific admissible tuple may
/// be supplied instead. The construction is re-checked against the three
/// shared-vertex identities and linearity before returning.
GSigma build_g_sigma(const std::vector<int>& sigma,
                     std::optional<std::array<int, 4>> abcd_override = std::nullopt);

struct GSigmaClaim {
    bool holds = false;
    bool complete = false;  // false when the budget cut the enumeration short
    long long orders_checked = 0;
    std::optional<std::vector<int>> counterexample_order;  // ranks per vertex
};

/// Exhaustively checks that no total order of V(G_sigma) makes all three
/// edges sigma-compatible. (3k-3)! orders; the budget caps the enumeration.
GSigmaClaim verify_gsigma_claim(const GSigma& g, long long budget = 500'000'000);

/// Disjoint triangles T_j on {3j-2, 3j-1, 3j}, one per pattern of q, each
/// pair labeled by the matching pattern coordinate. The label classes
/// partition the edge set.
OrderedGraph build_triangle_system(const Palette& q);

/// The 3-graph whose edges are the labeled triangles x < y < z of `a` whose
/// ordered label triple is a pattern of q.
ThreeGraph hypergraph_from_colored_graph(const OrderedGraph& a, const Palette& q);

/// The explicit painting of hypergraph_from_colored_graph(a, q): natural
/// order plus the labels extended by color 1 off the labeled pairs.
Painting painting_from_labels(const OrderedGraph& a, const ThreeGraph& f);

}  // namespace paltk
