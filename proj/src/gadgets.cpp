#include "paltk/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace paltk {

bool OrderedGraph::has_edge(VertexPair e) const {
    if (e.first > e.second) std::swap(e.first, e.second);
    return std::binary_search(edges.begin(), edges.end(), e);
}

namespace {

void check_permutation(const std::vector<int>& sigma, const char* what) {
    std::vector<char> seen(sigma.size() + 1, 0);
    for (int s : sigma) {
        if (s < 1 || s > static_cast<int>(sigma.size()) || seen[static_cast<std::size_t>(s)]) {
            throw std::invalid_argument(std::string(what) + ": not a permutation");
        }
        seen[static_cast<std::size_t>(s)] = 1;
    }
}

}  // namespace

bool sigma_compatible(const std::vector<int>& edge, const std::vector<int>& sigma,
                      const std::vector<int>& order_rank) {
    if (edge.size() != sigma.size()) {
        throw std::invalid_argument("sigma_compatible: edge arity does not match sigma");
    }
    check_permutation(sigma, "sigma_compatible");
    for (std::size_t i = 0; i < edge.size(); ++i) {
        const int v = edge[i];
        if (v < 1 || v > static_cast<int>(order_rank.size())) {
            throw std::invalid_argument("sigma_compatible: vertex outside the order");
        }
        if (i + 1 < edge.size() && edge[i] >= edge[i + 1]) {
            throw std::invalid_argument("sigma_compatible: edge vertices must be ascending");
        }
    }
    for (std::size_t i = 0; i < edge.size(); ++i) {
        for (std::size_t j = i + 1; j < edge.size(); ++j) {
            const bool before = order_rank[static_cast<std::size_t>(edge[i] - 1)] <
                                order_rank[static_cast<std::size_t>(edge[j] - 1)];
            if (before != (sigma[i] < sigma[j])) return false;
        }
    }
    return true;
}

std::vector<int> identity_perm(int k) {
    std::vector<int> p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 1);
    return p;
}

std::vector<int> reversal_perm(int k) {
    std::vector<int> p(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = k - i;
    return p;
}

GSigma build_g_sigma(const std::vector<int>& sigma,
                     std::optional<std::array<int, 4>> abcd_override) {
    const int k = static_cast<int>(sigma.size());
    if (k < 3) throw std::invalid_argument("build_g_sigma: need k >= 3");
    check_permutation(sigma, "build_g_sigma");
    if (sigma == identity_perm(k) || sigma == reversal_perm(k)) {
        throw std::invalid_argument("build_g_sigma: sigma must differ from id and rev");
    }
    auto at = [&](int i) { return sigma[static_cast<std::size_t>(i - 1)]; };

    std::array<int, 4> abcd;
    if (abcd_override) {
        abcd = *abcd_override;
        const auto [a, b, c, d] = abcd;
        if (!(a >= 1 && a < b && b <= k && c >= 1 && c < d && d <= k && at(a) < at(b) &&
              at(c) > at(d))) {
            throw std::invalid_argument("build_g_sigma: tuple violates the ascent/descent rule");
        }
    } else {
        bool found = false;
        for (int a = 1; a <= k && !found; ++a)
            for (int b = a + 1; b <= k && !found; ++b) {
                if (at(a) >= at(b)) continue;
                for (int c = 1; c <= k && !found; ++c)
                    for (int d = c + 1; d <= k && !found; ++d) {
                        if (at(c) > at(d)) {
                            abcd = {a, b, c, d};
                            found = true;
                        }
                    }
            }
        if (!found) throw std::logic_error("build_g_sigma: no ascent/descent tuple");
    }
    const auto [a, b, c, d] = abcd;

    // slot (edge, rank) -> vertex label; shared slots first, as early as
    // their within-edge predecessors allow, then the tails edge by edge
    std::array<std::vector<int>, 3> label;
    for (auto& l : label) l.assign(static_cast<std::size_t>(k) + 1, 0);
    int next = 0;
    auto place = [&](int edge, int rank) {
        label[static_cast<std::size_t>(edge)][static_cast<std::size_t>(rank)] = ++next;
    };
    auto share = [&](int edge_from, int rank_from, int edge_to, int rank_to) {
        label[static_cast<std::size_t>(edge_to)][static_cast<std::size_t>(rank_to)] =
            label[static_cast<std::size_t>(edge_from)][static_cast<std::size_t>(rank_from)];
    };
    for (int r = 1; r < a; ++r) place(0, r);
    for (int r = 1; r < c; ++r) place(2, r);
    place(0, a);      // s1 = x_a
    share(0, a, 2, c);  //    = z_c
    for (int r = a + 1; r < b; ++r) place(0, r);
    for (int r = 1; r < a; ++r) place(1, r);
    place(0, b);      // s2 = x_b
    share(0, b, 1, a);  //    = y_a
    for (int r = a + 1; r < b; ++r) place(1, r);
    for (int r = c + 1; r < d; ++r) place(2, r);
    place(1, b);      // s3 = y_b
    share(1, b, 2, d);  //    = z_d
    for (int r = b + 1; r <= k; ++r) place(0, r);
    for (int r = b + 1; r <= k; ++r) place(1, r);
    for (int r = d + 1; r <= k; ++r) place(2, r);

    GSigma g;
    g.k = k;
    g.sigma = sigma;
    g.abcd = abcd;
    g.vertex_count = next;
    for (int e = 0; e < 3; ++e) {
        g.edges[static_cast<std::size_t>(e)].assign(
            label[static_cast<std::size_t>(e)].begin() + 1,
            label[static_cast<std::size_t>(e)].end());
    }

    // re-check the construction before handing it out
    if (g.vertex_count != 3 * k - 3) throw std::logic_error("build_g_sigma: wrong vertex count");
    const auto& x = g.edges[0];
    const auto& y = g.edges[1];
    const auto& z = g.edges[2];
    for (const auto& e : g.edges) {
        if (!std::is_sorted(e.begin(), e.end()) ||
            std::adjacent_find(e.begin(), e.end()) != e.end()) {
            throw std::logic_error("build_g_sigma: edge labels not increasing");
        }
    }
    if (x[static_cast<std::size_t>(a - 1)] != z[static_cast<std::size_t>(c - 1)] ||
        x[static_cast<std::size_t>(b - 1)] != y[static_cast<std::size_t>(a - 1)] ||
        y[static_cast<std::size_t>(b - 1)] != z[static_cast<std::size_t>(d - 1)]) {
        throw std::logic_error("build_g_sigma: shared-vertex identities violated");
    }
    std::set<int> shared;
    for (int e1 = 0; e1 < 3; ++e1) {
        for (int e2 = e1 + 1; e2 < 3; ++e2) {
            std::vector<int> common;
            std::set_intersection(g.edges[static_cast<std::size_t>(e1)].begin(),
                                  g.edges[static_cast<std::size_t>(e1)].end(),
                                  g.edges[static_cast<std::size_t>(e2)].begin(),
                                  g.edges[static_cast<std::size_t>(e2)].end(),
                                  std::back_inserter(common));
            if (common.size() != 1) throw std::logic_error("build_g_sigma: not linear");
            shared.insert(common.front());
        }
    }
    if (shared.size() != 3) throw std::logic_error("build_g_sigma: shared vertices collide");
    return g;
}

GSigmaClaim verify_gsigma_claim(const GSigma& g, long long budget) {
    GSigmaClaim claim;
    std::vector<int> rank(static_cast<std::size_t>(g.vertex_count));
    std::iota(rank.begin(), rank.end(), 0);
    do {
        if (++claim.orders_checked > budget) {
            claim.orders_checked = budget;
            return claim;  // complete stays false
        }
        bool all_compatible = true;
        for (const auto& e : g.edges) {
            if (!sigma_compatible(e, g.sigma, rank)) {
                all_compatible = false;
                break;
            }
        }
        if (all_compatible) {
            claim.counterexample_order = rank;
            claim.complete = true;
            return claim;
        }
    } while (std::next_permutation(rank.begin(), rank.end()));
    claim.holds = true;
    claim.complete = true;
    return claim;
}

OrderedGraph build_triangle_system(const Palette& q) {
    if (q.pattern_count() < 1) {
        throw std::invalid_argument("build_triangle_system: palette has no patterns");
    }
    OrderedGraph g;
    g.vertex_count = 3 * q.pattern_count();
    for (int j = 1; j <= q.pattern_count(); ++j) {
        const auto& pat = q.patterns()[static_cast<std::size_t>(j - 1)];
        const VertexPair lo{3 * j - 2, 3 * j - 1};
        const VertexPair mid{3 * j - 2, 3 * j};
        const VertexPair hi{3 * j - 1, 3 * j};
        g.edges.push_back(lo);
        g.edges.push_back(mid);
        g.edges.push_back(hi);
        g.edge_labels[lo] = pat[0];
        g.edge_labels[mid] = pat[1];
        g.edge_labels[hi] = pat[2];
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

ThreeGraph hypergraph_from_colored_graph(const OrderedGraph& a, const Palette& q) {
    for (const auto& e : a.edges) {
        const auto it = a.edge_labels.find(e);
        if (it == a.edge_labels.end()) {
            throw std::invalid_argument("hypergraph_from_colored_graph: unlabeled edge");
        }
        if (it->second < 1 || it->second > q.color_count()) {
            throw std::invalid_argument(
                "hypergraph_from_colored_graph: label outside the palette colors");
        }
    }
    std::vector<std::vector<int>> above(static_cast<std::size_t>(a.vertex_count) + 1);
    for (const auto& [u, v] : a.edges) above[static_cast<std::size_t>(u)].push_back(v);
    auto label = [&](int u, int v) { return a.edge_labels.at({u, v}); };
    std::vector<Edge3> edges;
    for (int x = 1; x <= a.vertex_count; ++x) {
        const auto& nx = above[static_cast<std::size_t>(x)];
        for (std::size_t i = 0; i < nx.size(); ++i) {
            for (std::size_t j = i + 1; j < nx.size(); ++j) {
                const int y = std::min(nx[i], nx[j]);
                const int z = std::max(nx[i], nx[j]);
                if (!a.has_edge({y, z})) continue;
                if (q.contains({label(x, y), label(x, z), label(y, z)})) {
                    edges.push_back({x, y, z});
                }
            }
        }
    }
    return {a.vertex_count, std::move(edges)};
}

Painting painting_from_labels(const OrderedGraph& a, const ThreeGraph& f) {
    Painting w;
    for (int v = 1; v <= f.vertex_count(); ++v) w.order.push_back(v);
    for (const auto& pr : shadow(f)) {
        const auto it = a.edge_labels.find(pr);
        w.pair_coloring[pr] = it == a.edge_labels.end() ? 1 : it->second;
    }
    return w;
}

}  // namespace paltk
