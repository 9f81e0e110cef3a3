#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "paltk/core.hpp"
#include "paltk/painting.hpp"
#include "paltk/rng.hpp"

namespace testsupport {

using paltk::Edge3;
using paltk::Palette;
using paltk::Pattern;
using paltk::Rng;
using paltk::ThreeGraph;
using paltk::VertexPair;

inline Palette pal(int colors, std::vector<Pattern> patterns) {
    return {colors, std::move(patterns)};
}

inline ThreeGraph graph(int n, std::vector<Edge3> edges) { return {n, std::move(edges)}; }

inline std::vector<Pattern> all_patterns(int c) {
    std::vector<Pattern> out;
    for (int a = 1; a <= c; ++a)
        for (int b = 1; b <= c; ++b)
            for (int d = 1; d <= c; ++d) out.push_back({a, b, d});
    return out;
}

inline Palette random_palette(Rng& rng, int colors, double pattern_prob) {
    std::vector<Pattern> patterns;
    for (const auto& p : all_patterns(colors)) {
        if (rng.bernoulli(pattern_prob)) patterns.push_back(p);
    }
    return {colors, std::move(patterns)};
}

inline bool all_colors_used(const Palette& p) {
    std::vector<char> used(static_cast<std::size_t>(p.color_count()) + 1, 0);
    for (const auto& q : p.patterns()) {
        for (int c : q) used[static_cast<std::size_t>(c)] = 1;
    }
    for (int c = 1; c <= p.color_count(); ++c) {
        if (!used[static_cast<std::size_t>(c)]) return false;
    }
    return true;
}

inline ThreeGraph random_graph(Rng& rng, int n, double edge_prob) {
    std::vector<Edge3> edges;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c) {
                if (rng.bernoulli(edge_prob)) edges.push_back({a, b, c});
            }
    return {n, std::move(edges)};
}

/// Independent painting oracle: full enumeration over vertex orderings and
/// shadow colorings. Exponential; intended for n <= 5 and small palettes.
inline bool paints_oracle(const Palette& p, const ThreeGraph& f) {
    if (f.edge_count() == 0) return true;
    if (p.pattern_count() == 0) return false;
    const auto pairs = paltk::shadow(f);
    const int c = p.color_count();
    std::vector<int> order(static_cast<std::size_t>(f.vertex_count()));
    std::iota(order.begin(), order.end(), 1);
    auto pair_id = [&](int a, int b) {
        const VertexPair pr{std::min(a, b), std::max(a, b)};
        return static_cast<std::size_t>(std::lower_bound(pairs.begin(), pairs.end(), pr) -
                                        pairs.begin());
    };
    do {
        std::vector<int> rank(static_cast<std::size_t>(f.vertex_count()) + 1, 0);
        for (std::size_t i = 0; i < order.size(); ++i) {
            rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        }
        std::vector<int> coloring(pairs.size(), 1);
        while (true) {
            bool ok = true;
            for (const auto& e : f.edges()) {
                std::array<int, 3> v = e;
                std::sort(v.begin(), v.end(), [&](int x, int y) {
                    return rank[static_cast<std::size_t>(x)] < rank[static_cast<std::size_t>(y)];
                });
                if (!p.contains({coloring[pair_id(v[0], v[1])], coloring[pair_id(v[0], v[2])],
                                 coloring[pair_id(v[1], v[2])]})) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
            std::size_t i = 0;
            while (i < coloring.size() && coloring[i] == c) {
                coloring[i] = 1;
                ++i;
            }
            if (i == coloring.size()) break;
            ++coloring[i];
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
}

/// Counting oracle per the painting-count definition: colorings of the
/// shadow admitting at least one compatible ordering.
inline long long count_paintings_oracle(const Palette& p, const ThreeGraph& f) {
    if (f.edge_count() == 0) return 1;
    if (p.pattern_count() == 0 || p.color_count() == 0) return 0;
    const auto pairs = paltk::shadow(f);
    const int c = p.color_count();
    auto pair_id = [&](int a, int b) {
        const VertexPair pr{std::min(a, b), std::max(a, b)};
        return static_cast<std::size_t>(std::lower_bound(pairs.begin(), pairs.end(), pr) -
                                        pairs.begin());
    };
    long long count = 0;
    std::vector<int> coloring(pairs.size(), 1);
    while (true) {
        std::vector<int> order(static_cast<std::size_t>(f.vertex_count()));
        std::iota(order.begin(), order.end(), 1);
        bool any_order = false;
        do {
            std::vector<int> rank(static_cast<std::size_t>(f.vertex_count()) + 1, 0);
            for (std::size_t i = 0; i < order.size(); ++i) {
                rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
            }
            bool ok = true;
            for (const auto& e : f.edges()) {
                std::array<int, 3> v = e;
                std::sort(v.begin(), v.end(), [&](int x, int y) {
                    return rank[static_cast<std::size_t>(x)] < rank[static_cast<std::size_t>(y)];
                });
                if (!p.contains({coloring[pair_id(v[0], v[1])], coloring[pair_id(v[0], v[2])],
                                 coloring[pair_id(v[1], v[2])]})) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                any_order = true;
                break;
            }
        } while (std::next_permutation(order.begin(), order.end()));
        if (any_order) ++count;
        std::size_t i = 0;
        while (i < coloring.size() && coloring[i] == c) {
            coloring[i] = 1;
            ++i;
        }
        if (i == coloring.size()) break;
        ++coloring[i];
    }
    return count;
}

/// Exhaustive isomorphism oracle over all color bijections.
inline bool iso_oracle(const Palette& p, const Palette& q) {
    if (p.color_count() != q.color_count() || p.pattern_count() != q.pattern_count())
        return false;
    std::vector<int> perm(static_cast<std::size_t>(p.color_count()));
    std::iota(perm.begin(), perm.end(), 1);
    do {
        bool match = true;
        for (const auto& pat : p.patterns()) {
            if (!q.contains({perm[static_cast<std::size_t>(pat[0] - 1)],
                             perm[static_cast<std::size_t>(pat[1] - 1)],
                             perm[static_cast<std::size_t>(pat[2] - 1)]})) {
                match = false;
                break;
            }
        }
        if (match) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// All 3-graphs on exactly n labeled vertices, one representative per
/// isomorphism class (canonical = least sorted edge list over vertex
/// permutations).
inline std::vector<ThreeGraph> graphs_up_to_iso(int n) {
    std::vector<Edge3> triples;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c) triples.push_back({a, b, c});
    std::set<std::vector<Edge3>> canonical;
    std::vector<ThreeGraph> out;
    for (std::uint32_t mask = 0; mask < (1u << triples.size()); ++mask) {
        std::vector<Edge3> edges;
        for (std::size_t i = 0; i < triples.size(); ++i) {
            if (mask & (1u << i)) edges.push_back(triples[i]);
        }
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        std::vector<Edge3> best;
        bool first = true;
        do {
            std::vector<Edge3> image;
            for (const auto& e : edges) {
                Edge3 m{perm[static_cast<std::size_t>(e[0] - 1)],
                        perm[static_cast<std::size_t>(e[1] - 1)],
                        perm[static_cast<std::size_t>(e[2] - 1)]};
                std::sort(m.begin(), m.end());
                image.push_back(m);
            }
            std::sort(image.begin(), image.end());
            if (first || image < best) best = image;
            first = false;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (canonical.insert(best).second) out.emplace_back(n, best);
    }
    return out;
}

}  // namespace testsupport
