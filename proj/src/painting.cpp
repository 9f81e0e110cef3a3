#include "paltk/painting.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace paltk {

namespace {

constexpr int kMaxColors = 64;

std::uint64_t full_mask(int colors) {
    return colors >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << colors) - 1;
}

/// Shared search state. Pairs carry candidate color masks; edges become
/// active once the relative order of their three vertices is fixed, at which
/// point they constrain their pair triple through the pattern set.
struct PaintingSearch {
    const Palette& pal;
    const ThreeGraph& graph;
    long long budget;

    std::vector<int> verts;                 // shadow vertices, ascending
    std::vector<VertexPair> pairs;          // shadow pairs, ascending
    std::vector<std::uint64_t> cand;        // candidate colors per pair
    std::vector<int> rank;                  // vertex -> rank in the order, -1 if unplaced
    std::vector<int> placed;                // ranks -> vertex
    struct EdgeState {
        std::array<int, 3> v;               // vertices ascending
        std::array<int, 3> pair_id;         // ids of {v0v1, v0v2, v1v2}
        std::array<int, 3> role = {-1, -1, -1};  // pair ids in pattern position order
        int unplaced = 3;
        bool active = false;
    };
    std::vector<EdgeState> edges;
    std::vector<std::vector<int>> edges_at_pair;   // pair id -> edge indices
    std::vector<std::vector<int>> edges_at_vertex; // vertex -> edge indices

    long long nodes = 0;
    bool budget_hit = false;

    PaintingSearch(const Palette& p, const ThreeGraph& f, long long b)
        : pal(p), graph(f), budget(b) {
        pairs = shadow(f);
        for (const auto& pr : pairs) {
            if (std::find(verts.begin(), verts.end(), pr.first) == verts.end())
                verts.push_back(pr.first);
            if (std::find(verts.begin(), verts.end(), pr.second) == verts.end())
                verts.push_back(pr.second);
        }
        std::sort(verts.begin(), verts.end());
        cand.assign(pairs.size(), full_mask(pal.color_count()));
        rank.assign(static_cast<std::size_t>(f.vertex_count()) + 1, -1);
        edges_at_pair.resize(pairs.size());
        edges_at_vertex.resize(static_cast<std::size_t>(f.vertex_count()) + 1);
        for (const auto& e : f.edges()) {
            EdgeState es;
            es.v = e;
            es.pair_id = {pair_id({e[0], e[1]}), pair_id({e[0], e[2]}), pair_id({e[1], e[2]})};
            const int idx = static_cast<int>(edges.size());
            edges.push_back(es);
            for (int pid : es.pair_id) {
                edges_at_pair[static_cast<std::size_t>(pid)].push_back(idx);
            }
            for (int v : e) edges_at_vertex[static_cast<std::size_t>(v)].push_back(idx);
        }
    }

    int pair_id(VertexPair pr) const {
        const auto it = std::lower_bound(pairs.begin(), pairs.end(), pr);
        return static_cast<int>(it - pairs.begin());
    }

    bool charge_node() {
        if (++nodes > budget) {
            budget_hit = true;
            return false;
        }
        return true;
    }

    /// Recomputes the roles of an edge whose three vertices are all ranked:
    /// with x < y < z in the order, the pattern positions are xy, xz, yz.
    void assign_roles(EdgeState& e) {
        std::array<int, 3> by_rank = e.v;
        std::sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
            return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
        });
        auto id_of = [&](int a, int b) {
            return pair_id({std::min(a, b), std::max(a, b)});
        };
        e.role = {id_of(by_rank[0], by_rank[1]), id_of(by_rank[0], by_rank[2]),
                  id_of(by_rank[1], by_rank[2])};
    }

    /// One arc-consistency pass over an active edge. Returns false on a
    /// wiped-out pair; `touched` collects pairs whose mask shrank.
    bool revise(const EdgeState& e, std::vector<int>& touched) {
        std::uint64_t acc0 = 0, acc1 = 0, acc2 = 0;
        const std::uint64_t m0 = cand[static_cast<std::size_t>(e.role[0])];
        const std::uint64_t m1 = cand[static_cast<std::size_t>(e.role[1])];
        const std::uint64_t m2 = cand[static_cast<std::size_t>(e.role[2])];
        for (const auto& q : pal.patterns()) {
            const std::uint64_t b0 = std::uint64_t{1} << (q[0] - 1);
            const std::uint64_t b1 = std::uint64_t{1} << (q[1] - 1);
            const std::uint64_t b2 = std::uint64_t{1} << (q[2] - 1);
            if ((m0 & b0) && (m1 & b1) && (m2 & b2)) {
                acc0 |= b0;
                acc1 |= b1;
                acc2 |= b2;
            }
        }
        const std::array<std::uint64_t, 3> next = {m0 & acc0, m1 & acc1, m2 & acc2};
        for (int i = 0; i < 3; ++i) {
            const auto pid = static_cast<std::size_t>(e.role[static_cast<std::size_t>(i)]);
            if (next[static_cast<std::size_t>(i)] != cand[pid]) {
                cand[pid] = next[static_cast<std::size_t>(i)];
                if (cand[pid] == 0) return false;
                touched.push_back(static_cast<int>(pid));
            }
        }
        return true;
    }

    bool propagate(std::vector<int> queue) {
        std::vector<int> touched;
        while (!queue.empty()) {
            const int ei = queue.back();
            queue.pop_back();
            touched.clear();
            if (!revise(edges[static_cast<std::size_t>(ei)], touched)) return false;
            for (int pid : touched) {
                for (int other : edges_at_pair[static_cast<std::size_t>(pid)]) {
                    if (edges[static_cast<std::size_t>(other)].active) queue.push_back(other);
                }
            }
        }
        return true;
    }

    /// Phase 1: extend the order one vertex at a time, activating edges as
    /// their last vertex is placed.
    bool search_order(std::size_t depth) {
        if (depth == verts.size()) return search_colors();
        for (int v : verts) {
            if (rank[static_cast<std::size_t>(v)] >= 0) continue;
            if (!charge_node()) return false;
            rank[static_cast<std::size_t>(v)] = static_cast<int>(depth);
            placed.push_back(v);
            const auto saved = cand;
            std::vector<int> activated;
            for (int ei : edges_at_vertex[static_cast<std::size_t>(v)]) {
                auto& e = edges[static_cast<std::size_t>(ei)];
                if (--e.unplaced == 0) {
                    assign_roles(e);
                    e.active = true;
                    activated.push_back(ei);
                }
            }
            if (propagate(activated)) {
                if (search_order(depth + 1)) return true;
                if (budget_hit) return false;
            }
            cand = saved;
            for (int ei : edges_at_vertex[static_cast<std::size_t>(v)]) {
                auto& e = edges[static_cast<std::size_t>(ei)];
                if (e.unplaced++ == 0) e.active = false;
            }
            placed.pop_back();
            rank[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    }

    /// Phase 2: all edges active; assign concrete colors, most constrained
    /// pair first, propagating after each assignment.
    bool search_colors() {
        int best = -1;
        int best_count = kMaxColors + 1;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            const int count = std::popcount(cand[i]);
            if (count > 1 && count < best_count) {
                best_count = count;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) return true;  // all pairs decided; constraints hold by propagation
        std::uint64_t remaining = cand[static_cast<std::size_t>(best)];
        while (remaining) {
            const std::uint64_t bit = remaining & (~remaining + 1);
            remaining ^= bit;
            if (!charge_node()) return false;
            const auto saved = cand;
            cand[static_cast<std::size_t>(best)] = bit;
            std::vector<int> queue;
            for (int ei : edges_at_pair[static_cast<std::size_t>(best)]) queue.push_back(ei);
            if (propagate(std::move(queue))) {
                if (search_colors()) return true;
                if (budget_hit) return false;
            }
            cand = saved;
        }
        return false;
    }

    Painting extract_witness() const {
        Painting w;
        w.order = placed;
        std::vector<char> in_order(static_cast<std::size_t>(graph.vertex_count()) + 1, 0);
        for (int v : placed) in_order[static_cast<std::size_t>(v)] = 1;
        for (int v = 1; v <= graph.vertex_count(); ++v) {
            if (!in_order[static_cast<std::size_t>(v)]) w.order.push_back(v);
        }
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            w.pair_coloring[pairs[i]] = std::countr_zero(cand[i]) + 1;
        }
        return w;
    }
};

}  // namespace

bool is_painting(const Palette& p, const ThreeGraph& f, const Painting& painting) {
    const int n = f.vertex_count();
    if (static_cast<int>(painting.order.size()) != n) return false;
    std::vector<int> rank(static_cast<std::size_t>(n) + 1, -1);
    for (std::size_t i = 0; i < painting.order.size(); ++i) {
        const int v = painting.order[i];
        if (v < 1 || v > n || rank[static_cast<std::size_t>(v)] >= 0) return false;
        rank[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    auto color = [&](int a, int b) -> int {
        const auto it = painting.pair_coloring.find({std::min(a, b), std::max(a, b)});
        return it == painting.pair_coloring.end() ? 0 : it->second;
    };
    for (const auto& pr : shadow(f)) {
        const int c = color(pr.first, pr.second);
        if (c < 1 || c > p.color_count()) return false;
    }
    for (const auto& e : f.edges()) {
        std::array<int, 3> v = e;
        std::sort(v.begin(), v.end(), [&](int a, int b) {
            return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
        });
        if (!p.contains({color(v[0], v[1]), color(v[0], v[2]), color(v[1], v[2])})) return false;
    }
    return true;
}

PaintingSearchResult find_painting(const Palette& p, const ThreeGraph& f, long long budget) {
    if (p.color_count() > kMaxColors) {
        throw std::invalid_argument("find_painting: supports at most 64 colors");
    }
    PaintingSearchResult result;
    if (f.edge_count() == 0) {
        Painting w;
        for (int v = 1; v <= f.vertex_count(); ++v) w.order.push_back(v);
        result.verdict = Verdict::kYes;
        result.witness = std::move(w);
        return result;
    }
    if (p.pattern_count() == 0) {
        result.verdict = Verdict::kNo;
        return result;
    }
    PaintingSearch search(p, f, budget);
    const bool found = search.search_order(0);
    result.nodes = search.nodes;
    if (found) {
        result.verdict = Verdict::kYes;
        result.witness = search.extract_witness();
        if (!is_painting(p, f, *result.witness)) {
            throw std::logic_error("find_painting: witness failed re-verification");
        }
    } else {
        result.verdict = search.budget_hit ? Verdict::kUnknown : Verdict::kNo;
    }
    return result;
}

Verdict paints(const Palette& p, const ThreeGraph& f, long long budget) {
    return find_painting(p, f, budget).verdict;
}

Verdict is_deficient(const Palette& p, const ThreeGraph& f, long long budget) {
    return negate(paints(p, f, budget));
}

Verdict is_family_deficient(const Palette& p, std::span<const ThreeGraph> family,
                            long long budget) {
    bool unknown = false;
    for (const auto& f : family) {
        switch (paints(p, f, budget)) {
            case Verdict::kYes:
                return Verdict::kNo;  // paints a member, so not deficient
            case Verdict::kUnknown:
                unknown = true;
                break;
            case Verdict::kNo:
                break;
        }
    }
    return unknown ? Verdict::kUnknown : Verdict::kYes;
}

namespace {

/// Is there a total ordering compatible with the fixed pair coloring?
/// Backtracks over placements, checking each edge as its last vertex lands.
struct OrderingSearch {
    const Palette& pal;
    const std::vector<int>& verts;
    const std::vector<VertexPair>& pairs;
    const std::vector<int>& coloring;  // color per pair id
    const std::vector<PaintingSearch::EdgeState>& edges;
    const std::vector<std::vector<int>>& edges_at_vertex;
    std::vector<int>& rank;
    long long& nodes;
    long long budget;
    bool budget_hit = false;

    int pair_color(int a, int b) const {
        const VertexPair pr{std::min(a, b), std::max(a, b)};
        const auto it = std::lower_bound(pairs.begin(), pairs.end(), pr);
        return coloring[static_cast<std::size_t>(it - pairs.begin())];
    }

    bool run(std::size_t depth, std::vector<int>& unplaced_count) {
        if (depth == verts.size()) return true;
        for (int v : verts) {
            if (rank[static_cast<std::size_t>(v)] >= 0) continue;
            if (++nodes > budget) {
                budget_hit = true;
                return false;
            }
            rank[static_cast<std::size_t>(v)] = static_cast<int>(depth);
            bool ok = true;
            for (int ei : edges_at_vertex[static_cast<std::size_t>(v)]) {
                if (--unplaced_count[static_cast<std::size_t>(ei)] == 0 && ok) {
                    std::array<int, 3> by_rank = edges[static_cast<std::size_t>(ei)].v;
                    std::sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
                        return rank[static_cast<std::size_t>(a)] <
                               rank[static_cast<std::size_t>(b)];
                    });
                    ok = pal.contains({pair_color(by_rank[0], by_rank[1]),
                                       pair_color(by_rank[0], by_rank[2]),
                                       pair_color(by_rank[1], by_rank[2])});
                }
            }
            if (ok && run(depth + 1, unplaced_count)) return true;
            for (int ei : edges_at_vertex[static_cast<std::size_t>(v)]) {
                ++unplaced_count[static_cast<std::size_t>(ei)];
            }
            rank[static_cast<std::size_t>(v)] = -1;
            if (budget_hit) return false;
        }
        return false;
    }
};

}  // namespace

PaintingCount count_paintings(const Palette& p, const ThreeGraph& f, long long budget) {
    if (p.color_count() > kMaxColors) {
        throw std::invalid_argument("count_paintings: supports at most 64 colors");
    }
    PaintingCount out;
    if (f.edge_count() == 0) {
        out.exact = true;
        out.count = 1;  // the empty map
        return out;
    }
    if (p.pattern_count() == 0 || p.color_count() == 0) {
        out.exact = true;
        return out;
    }
    PaintingSearch scaffold(p, f, budget);  // reuse the shadow/edge indexing
    const auto s = scaffold.pairs.size();
    std::vector<int> coloring(s, 1);
    std::vector<int> rank(static_cast<std::size_t>(f.vertex_count()) + 1, -1);
    const int c = p.color_count();
    while (true) {
        if (++out.nodes > budget) return out;  // exact stays false
        std::vector<int> unplaced(scaffold.edges.size(), 3);
        std::fill(rank.begin(), rank.end(), -1);
        OrderingSearch ordering{p,    scaffold.verts, scaffold.pairs,          coloring,
                                scaffold.edges,       scaffold.edges_at_vertex, rank,
                                out.nodes,            budget};
        if (ordering.run(0, unplaced)) ++out.count;
        if (ordering.budget_hit) return out;
        // next coloring, odometer order
        std::size_t i = 0;
        while (i < s && coloring[i] == c) {
            coloring[i] = 1;
            ++i;
        }
        if (i == s) break;
        ++coloring[i];
    }
    out.exact = true;
    return out;
}

ThreeGraph shadow_linear(const ThreeGraph& f) {
    const auto pairs = shadow(f);
    auto index_of = [&](int a, int b) {
        const VertexPair pr{std::min(a, b), std::max(a, b)};
        return static_cast<int>(std::lower_bound(pairs.begin(), pairs.end(), pr) -
                                pairs.begin()) +
               1;
    };
    std::vector<Edge3> edges;
    edges.reserve(f.edges().size());
    for (const auto& e : f.edges()) {
        edges.push_back({index_of(e[0], e[1]), index_of(e[0], e[2]), index_of(e[1], e[2])});
    }
    ThreeGraph out(static_cast<int>(pairs.size()), std::move(edges));
    for (std::size_t i = 0; i < out.edges().size(); ++i) {
        for (std::size_t j = i + 1; j < out.edges().size(); ++j) {
            const auto& a = out.edges()[i];
            const auto& b = out.edges()[j];
            int common = 0;
            for (int x : a) common += static_cast<int>(std::count(b.begin(), b.end(), x));
            if (common > 1) throw std::logic_error("shadow_linear: output is not linear");
        }
    }
    if (out.edge_count() != f.edge_count()) {
        throw std::logic_error("shadow_linear: edge count not preserved");
    }
    return out;
}

}  // namespace paltk
