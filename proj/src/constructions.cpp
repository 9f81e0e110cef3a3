#include "paltk/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "paltk/rng.hpp"

namespace paltk {

std::size_t pair_index(int a, int b, int n) {
    if (a > b) std::swap(a, b);
    return static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(2 * n - a) / 2 +
           static_cast<std::size_t>(b - a - 1);
}

PaletteConstruction palette_construction(const Palette& p, const WeightVector& x, int n,
                                         std::uint64_t seed) {
    if (x.size() != p.color_count()) {
        throw std::invalid_argument("palette_construction: weighting dimension mismatch");
    }
    if (n < 3) throw std::invalid_argument("palette_construction: need n >= 3");
    const Rng base(seed);
    std::vector<int> chi(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2, 0);
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            Rng stream = base.split(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
            chi[pair_index(a, b, n)] = stream.discrete(x.values()) + 1;
        }
    }
    // dense membership cube for the triple scan
    const int c = p.color_count();
    std::vector<char> cube(static_cast<std::size_t>(c) * c * c, 0);
    for (const auto& q : p.patterns()) {
        cube[(static_cast<std::size_t>(q[0] - 1) * c + static_cast<std::size_t>(q[1] - 1)) * c +
             static_cast<std::size_t>(q[2] - 1)] = 1;
    }
    std::vector<Edge3> edges;
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            const int ab = chi[pair_index(a, b, n)];
            for (int d = b + 1; d <= n; ++d) {
                const int ad = chi[pair_index(a, d, n)];
                const int bd = chi[pair_index(b, d, n)];
                if (cube[(static_cast<std::size_t>(ab - 1) * c +
                          static_cast<std::size_t>(ad - 1)) *
                             c +
                         static_cast<std::size_t>(bd - 1)]) {
                    edges.push_back({a, b, d});
                }
            }
        }
    }
    return {ThreeGraph(n, std::move(edges)), std::move(chi)};
}

Painting construction_painting(const PaletteConstruction& construction) {
    Painting w;
    const int n = construction.graph.vertex_count();
    for (int v = 1; v <= n; ++v) w.order.push_back(v);
    for (const auto& pr : shadow(construction.graph)) {
        w.pair_coloring[pr] = construction.pair_colors[pair_index(pr.first, pr.second, n)];
    }
    return w;
}

namespace {

double margin_of(long long edges_inside, int subset_size, double d, double eta, int n) {
    const double size = subset_size;
    const double triples = size * (size - 1.0) * (size - 2.0) / 6.0;
    return static_cast<double>(edges_inside) - d * triples +
           eta * static_cast<double>(n) * n * n;
}

long long count_edges_inside(const ThreeGraph& h, const std::vector<char>& in_subset) {
    long long count = 0;
    for (const auto& e : h.edges()) {
        if (in_subset[static_cast<std::size_t>(e[0])] &&
            in_subset[static_cast<std::size_t>(e[1])] &&
            in_subset[static_cast<std::size_t>(e[2])]) {
            ++count;
        }
    }
    return count;
}

}  // namespace

DensityAuditResult d_eta_density_audit(const ThreeGraph& h, double d, double eta, int samples,
                                       std::uint64_t seed, DensityAuditMode mode) {
    const int n = h.vertex_count();
    DensityAuditResult out;
    bool first = true;
    auto consider = [&](const std::vector<int>& subset, long long edges_inside) {
        ++out.subsets_checked;
        const double margin = margin_of(edges_inside, static_cast<int>(subset.size()), d, eta, n);
        if (first || margin < out.worst_margin) {
            first = false;
            out.worst_margin = margin;
            out.worst_subset = subset;
        }
    };

    if (n <= 18 && mode == DensityAuditMode::kAuto) {
        out.exhaustive = true;
        std::vector<std::uint32_t> edge_masks;
        edge_masks.reserve(h.edges().size());
        for (const auto& e : h.edges()) {
            edge_masks.push_back((1u << (e[0] - 1)) | (1u << (e[1] - 1)) | (1u << (e[2] - 1)));
        }
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            long long inside = 0;
            for (const auto em : edge_masks) {
                if ((mask & em) == em) ++inside;
            }
            const int size = std::popcount(mask);
            ++out.subsets_checked;
            const double margin = margin_of(inside, size, d, eta, n);
            if (first || margin < out.worst_margin) {
                first = false;
                out.worst_margin = margin;
                out.worst_subset.clear();
                for (int v = 1; v <= n; ++v) {
                    if (mask & (1u << (v - 1))) out.worst_subset.push_back(v);
                }
            }
        }
        out.dense = out.worst_margin >= 0.0;
        return out;
    }

    // sampled mode: random subsets over a size grid
    Rng rng(seed);
    std::vector<int> grid;
    for (int k = 1; k <= 10; ++k) grid.push_back(std::min(n, (n + 9) / 10 * k));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const int per_size = std::max(1, samples / static_cast<int>(grid.size()));
    std::vector<char> in_subset(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        for (int s = 0; s < per_size; ++s) {
            Rng stream = rng.split(gi, static_cast<std::size_t>(s));
            const auto picks = stream.sample_without_replacement(n, grid[gi]);
            std::fill(in_subset.begin(), in_subset.end(), 0);
            std::vector<int> subset;
            subset.reserve(picks.size());
            for (int i : picks) {
                subset.push_back(i + 1);
                in_subset[static_cast<std::size_t>(i) + 1] = 1;
            }
            consider(subset, count_edges_inside(h, in_subset));
        }
    }

    // greedy low-density descent: repeatedly drop the highest-degree vertex
    std::vector<long long> degree(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(n) + 1);
    std::vector<char> edge_alive(h.edges().size(), 1);
    std::vector<char> alive(static_cast<std::size_t>(n) + 1, 1);
    alive[0] = 0;
    for (std::size_t ei = 0; ei < h.edges().size(); ++ei) {
        for (int v : h.edges()[ei]) {
            ++degree[static_cast<std::size_t>(v)];
            incident[static_cast<std::size_t>(v)].push_back(static_cast<int>(ei));
        }
    }
    long long inside = h.edge_count();
    int size = n;
    std::vector<int> subset;
    for (int v = 1; v <= n; ++v) subset.push_back(v);
    consider(subset, inside);
    while (size > 3) {
        int drop = 0;
        for (int v = 1; v <= n; ++v) {
            if (alive[static_cast<std::size_t>(v)] &&
                (drop == 0 ||
                 degree[static_cast<std::size_t>(v)] > degree[static_cast<std::size_t>(drop)])) {
                drop = v;
            }
        }
        alive[static_cast<std::size_t>(drop)] = 0;
        for (int ei : incident[static_cast<std::size_t>(drop)]) {
            if (!edge_alive[static_cast<std::size_t>(ei)]) continue;
            edge_alive[static_cast<std::size_t>(ei)] = 0;
            --inside;
            for (int u : h.edges()[static_cast<std::size_t>(ei)]) {
                --degree[static_cast<std::size_t>(u)];
            }
        }
        --size;
        subset.clear();
        for (int v = 1; v <= n; ++v) {
            if (alive[static_cast<std::size_t>(v)]) subset.push_back(v);
        }
        consider(subset, inside);
    }

    // re-verify the worst subset by exact recount before reporting
    if (!out.worst_subset.empty() || !first) {
        std::fill(in_subset.begin(), in_subset.end(), 0);
        for (int v : out.worst_subset) in_subset[static_cast<std::size_t>(v)] = 1;
        const long long recount = count_edges_inside(h, in_subset);
        out.worst_margin =
            margin_of(recount, static_cast<int>(out.worst_subset.size()), d, eta, n);
    }
    out.dense = out.worst_margin >= 0.0;
    return out;
}

Reduced3Graph::Reduced3Graph(int index_count, std::map<VertexPair, std::vector<int>> pair_sets,
                             std::vector<Constituent> constituents)
    : t_(index_count), pair_sets_(std::move(pair_sets)), constituents_(std::move(constituents)) {
    if (t_ < 1) throw std::invalid_argument("Reduced3Graph: need at least one index");
    std::set<int> seen;
    for (auto& [key, set] : pair_sets_) {
        if (key.first >= key.second || key.first < 1 || key.second > t_) {
            throw std::invalid_argument("Reduced3Graph: bad pair-set key");
        }
        std::sort(set.begin(), set.end());
        for (int v : set) {
            if (!seen.insert(v).second) {
                throw std::invalid_argument("Reduced3Graph: pair sets are not disjoint");
            }
        }
    }
    for (auto& con : constituents_) {
        auto [i, j, k] = con.indices;
        if (!(1 <= i && i < j && j < k && k <= t_)) {
            throw std::invalid_argument("Reduced3Graph: bad constituent index triple");
        }
        const auto& pij = pair_set(i, j);
        const auto& pik = pair_set(i, k);
        const auto& pjk = pair_set(j, k);
        for (const auto& e : con.edges) {
            if (!std::binary_search(pij.begin(), pij.end(), e[0]) ||
                !std::binary_search(pik.begin(), pik.end(), e[1]) ||
                !std::binary_search(pjk.begin(), pjk.end(), e[2])) {
                throw std::invalid_argument(
                    "Reduced3Graph: constituent edge escapes its pair sets");
            }
        }
        std::sort(con.edges.begin(), con.edges.end());
        con.edges.erase(std::unique(con.edges.begin(), con.edges.end()), con.edges.end());
    }
}

const std::vector<int>& Reduced3Graph::pair_set(int i, int j) const {
    if (i > j) std::swap(i, j);
    const auto it = pair_sets_.find({i, j});
    if (it == pair_sets_.end()) {
        throw std::invalid_argument("Reduced3Graph: missing pair set");
    }
    return it->second;
}

const Reduced3Graph::Constituent& Reduced3Graph::constituent(int i, int j, int k) const {
    std::array<int, 3> key{i, j, k};
    std::sort(key.begin(), key.end());
    for (const auto& con : constituents_) {
        if (con.indices == key) return con;
    }
    static const Constituent kEmpty{{0, 0, 0}, {}};
    return kEmpty;
}

bool is_uniformly_dense_reduced(const Reduced3Graph& a, double d) {
    for (int i = 1; i <= a.index_count(); ++i) {
        for (int j = i + 1; j <= a.index_count(); ++j) {
            for (int k = j + 1; k <= a.index_count(); ++k) {
                const auto sij = a.pair_set(i, j).size();
                const auto sik = a.pair_set(i, k).size();
                const auto sjk = a.pair_set(j, k).size();
                if (sij == 0 || sik == 0 || sjk == 0) {
                    throw std::invalid_argument("is_uniformly_dense_reduced: empty pair set");
                }
                const auto edges = a.constituent(i, j, k).edges.size();
                if (static_cast<double>(edges) <
                    d * static_cast<double>(sij) * static_cast<double>(sik) *
                        static_cast<double>(sjk)) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_reduced_map(const ThreeGraph& f, const Reduced3Graph& a, const ReducedMap& map) {
    if (static_cast<int>(map.index_of_vertex.size()) != f.vertex_count()) return false;
    const auto pairs = shadow(f);
    auto lambda = [&](int v) { return map.index_of_vertex[static_cast<std::size_t>(v - 1)]; };
    for (const auto& pr : pairs) {
        const int iu = lambda(pr.first);
        const int iv = lambda(pr.second);
        if (iu == iv || iu < 1 || iv < 1 || iu > a.index_count() || iv > a.index_count()) {
            return false;
        }
        const auto it = map.pair_image.find(pr);
        if (it == map.pair_image.end()) return false;
        const auto& ps = a.pair_set(std::min(iu, iv), std::max(iu, iv));
        if (!std::binary_search(ps.begin(), ps.end(), it->second)) return false;
    }
    auto phi = [&](int u, int v) {
        return map.pair_image.at({std::min(u, v), std::max(u, v)});
    };
    for (const auto& e : f.edges()) {
        std::array<std::pair<int, int>, 3> slots = {
            std::pair{lambda(e[0]), lambda(e[1])},
            std::pair{lambda(e[0]), lambda(e[2])},
            std::pair{lambda(e[1]), lambda(e[2])}};
        std::array<int, 3> values = {phi(e[0], e[1]), phi(e[0], e[2]), phi(e[1], e[2])};
        // order the three pair images by their index pairs to match the
        // constituent's class layout
        std::array<int, 3> idx{lambda(e[0]), lambda(e[1]), lambda(e[2])};
        std::sort(idx.begin(), idx.end());
        std::array<int, 3> arranged{0, 0, 0};
        for (int s = 0; s < 3; ++s) {
            std::pair<int, int> key = slots[static_cast<std::size_t>(s)];
            if (key.first > key.second) std::swap(key.first, key.second);
            if (key == std::pair{idx[0], idx[1]}) {
                arranged[0] = values[static_cast<std::size_t>(s)];
            } else if (key == std::pair{idx[0], idx[2]}) {
                arranged[1] = values[static_cast<std::size_t>(s)];
            } else {
                arranged[2] = values[static_cast<std::size_t>(s)];
            }
        }
        const auto& con = a.constituent(idx[0], idx[1], idx[2]);
        if (!std::binary_search(con.edges.begin(), con.edges.end(), arranged)) return false;
    }
    return true;
}

namespace {

struct ReducedMapSearch {
    const ThreeGraph& f;
    const Reduced3Graph& a;
    long long budget;

    std::vector<int> verts;            // shadow vertices, by descending shadow degree
    std::vector<VertexPair> pairs;
    std::vector<int> lambda;           // per graph vertex, 0 = unassigned
    long long nodes = 0;
    bool budget_hit = false;

    ReducedMapSearch(const ThreeGraph& f_, const Reduced3Graph& a_, long long b)
        : f(f_), a(a_), budget(b) {
        pairs = shadow(f);
        std::vector<int> degree(static_cast<std::size_t>(f.vertex_count()) + 1, 0);
        for (const auto& pr : pairs) {
            ++degree[static_cast<std::size_t>(pr.first)];
            ++degree[static_cast<std::size_t>(pr.second)];
        }
        for (int v = 1; v <= f.vertex_count(); ++v) {
            if (degree[static_cast<std::size_t>(v)] > 0) verts.push_back(v);
        }
        std::stable_sort(verts.begin(), verts.end(), [&](int x, int y) {
            return degree[static_cast<std::size_t>(x)] > degree[static_cast<std::size_t>(y)];
        });
        lambda.assign(static_cast<std::size_t>(f.vertex_count()) + 1, 0);
    }

    bool adjacent(int u, int v) const {
        const VertexPair pr{std::min(u, v), std::max(u, v)};
        return std::binary_search(pairs.begin(), pairs.end(), pr);
    }

    bool assign_lambda(std::size_t depth, ReducedMap& out) {
        if (depth == verts.size()) return assign_phi(out);
        const int v = verts[depth];
        for (int idx = 1; idx <= a.index_count(); ++idx) {
            if (++nodes > budget) {
                budget_hit = true;
                return false;
            }
            bool ok = true;
            for (std::size_t d = 0; d < depth; ++d) {
                if (adjacent(verts[d], v) && lambda[static_cast<std::size_t>(verts[d])] == idx) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                lambda[static_cast<std::size_t>(v)] = idx;
                if (assign_lambda(depth + 1, out)) return true;
                lambda[static_cast<std::size_t>(v)] = 0;
                if (budget_hit) return false;
            }
        }
        return false;
    }

    bool assign_phi(ReducedMap& out) {
        std::vector<int> image(pairs.size(), 0);
        if (phi_backtrack(0, image)) {
            out.index_of_vertex.assign(lambda.begin() + 1, lambda.end());
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                out.pair_image[pairs[i]] = image[i];
            }
            return true;
        }
        return false;
    }

    bool edges_consistent(const std::vector<int>& image) const {
        for (const auto& e : f.edges()) {
            std::array<int, 3> idx{lambda[static_cast<std::size_t>(e[0])],
                                   lambda[static_cast<std::size_t>(e[1])],
                                   lambda[static_cast<std::size_t>(e[2])]};
            std::array<int, 3> sorted_idx = idx;
            std::sort(sorted_idx.begin(), sorted_idx.end());
            std::array<int, 3> arranged{0, 0, 0};
            bool complete = true;
            std::array<std::pair<int, int>, 3> vpairs = {
                std::pair{e[0], e[1]}, std::pair{e[0], e[2]}, std::pair{e[1], e[2]}};
            for (const auto& [u, v] : vpairs) {
                const VertexPair pr{std::min(u, v), std::max(u, v)};
                const auto pid = static_cast<std::size_t>(
                    std::lower_bound(pairs.begin(), pairs.end(), pr) - pairs.begin());
                const int val = image[pid];
                if (val == 0) {
                    complete = false;
                    continue;
                }
                std::pair<int, int> key{lambda[static_cast<std::size_t>(u)],
                                        lambda[static_cast<std::size_t>(v)]};
                if (key.first > key.second) std::swap(key.first, key.second);
                if (key == std::pair{sorted_idx[0], sorted_idx[1]}) {
                    arranged[0] = val;
                } else if (key == std::pair{sorted_idx[0], sorted_idx[2]}) {
                    arranged[1] = val;
                } else {
                    arranged[2] = val;
                }
            }
            const auto& con = a.constituent(sorted_idx[0], sorted_idx[1], sorted_idx[2]);
            if (complete) {
                if (!std::binary_search(con.edges.begin(), con.edges.end(), arranged)) {
                    return false;
                }
            } else {
                // partial: some constituent edge must agree on the set slots
                bool possible = false;
                for (const auto& ce : con.edges) {
                    if ((arranged[0] == 0 || arranged[0] == ce[0]) &&
                        (arranged[1] == 0 || arranged[1] == ce[1]) &&
                        (arranged[2] == 0 || arranged[2] == ce[2])) {
                        possible = true;
                        break;
                    }
                }
                if (!possible) return false;
            }
        }
        return true;
    }

    bool phi_backtrack(std::size_t pid, std::vector<int>& image) {
        if (pid == pairs.size()) return edges_consistent(image);
        const auto [u, v] = pairs[pid];
        const int iu = lambda[static_cast<std::size_t>(u)];
        const int iv = lambda[static_cast<std::size_t>(v)];
        const auto& candidates = a.pair_set(std::min(iu, iv), std::max(iu, iv));
        for (int vertex : candidates) {
            if (++nodes > budget) {
                budget_hit = true;
                return false;
            }
            image[pid] = vertex;
            if (edges_consistent(image) && phi_backtrack(pid + 1, image)) return true;
            image[pid] = 0;
            if (budget_hit) return false;
        }
        return false;
    }
};

}  // namespace

ReducedMapResult reduced_map_exists(const ThreeGraph& f, const Reduced3Graph& a,
                                    long long budget) {
    ReducedMapResult result;
    ReducedMapSearch search(f, a, budget);
    ReducedMap map;
    map.index_of_vertex.assign(static_cast<std::size_t>(f.vertex_count()), 1);
    if (search.verts.empty()) {
        // edgeless: any index assignment and the empty phi satisfy the rules
        result.verdict = Verdict::kYes;
        result.map = map;
        return result;
    }
    const bool found = search.assign_lambda(0, map);
    result.nodes = search.nodes;
    if (found) {
        // vertices outside the shadow keep index 1
        for (int v = 1; v <= f.vertex_count(); ++v) {
            if (map.index_of_vertex[static_cast<std::size_t>(v - 1)] == 0) {
                map.index_of_vertex[static_cast<std::size_t>(v - 1)] = 1;
            }
        }
        if (!is_reduced_map(f, a, map)) {
            throw std::logic_error("reduced_map_exists: map failed re-verification");
        }
        result.verdict = Verdict::kYes;
        result.map = std::move(map);
    } else {
        result.verdict = search.budget_hit ? Verdict::kUnknown : Verdict::kNo;
    }
    return result;
}

Palette palette_from_slice(const Reduced3Graph& a, const std::vector<int>& indices,
                           const std::map<VertexPair, std::vector<int>>& identification) {
    std::vector<int> u = indices;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    if (u.size() < 3) {
        throw std::invalid_argument("palette_from_slice: need at least three indices");
    }
    std::size_t s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            const auto it = identification.find({u[i], u[j]});
            if (it == identification.end()) {
                throw std::invalid_argument("palette_from_slice: missing identification");
            }
            if (s == 0) s = it->second.size();
            if (it->second.size() != s || s == 0) {
                throw std::invalid_argument(
                    "palette_from_slice: identifications must share one size s >= 1");
            }
        }
    }
    auto label_of = [&](const std::vector<int>& ident, int vertex) -> int {
        for (std::size_t pos = 0; pos < ident.size(); ++pos) {
            if (ident[pos] == vertex) return static_cast<int>(pos) + 1;
        }
        return 0;
    };
    bool have_reference = false;
    std::vector<Pattern> reference;
    std::array<int, 3> reference_triple{0, 0, 0};
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            for (std::size_t k = j + 1; k < u.size(); ++k) {
                const auto& ij = identification.at({u[i], u[j]});
                const auto& ik = identification.at({u[i], u[k]});
                const auto& jk = identification.at({u[j], u[k]});
                std::vector<Pattern> slice;
                for (const auto& e : a.constituent(u[i], u[j], u[k]).edges) {
                    const int la = label_of(ij, e[0]);
                    const int lb = label_of(ik, e[1]);
                    const int lc = label_of(jk, e[2]);
                    if (la && lb && lc) slice.push_back({la, lb, lc});
                }
                std::sort(slice.begin(), slice.end());
                slice.erase(std::unique(slice.begin(), slice.end()), slice.end());
                if (!have_reference) {
                    reference = std::move(slice);
                    reference_triple = {u[i], u[j], u[k]};
                    have_reference = true;
                } else if (slice != reference) {
                    throw SliceDisagreement(
                        "palette_from_slice: triple (" + std::to_string(u[i]) + "," +
                        std::to_string(u[j]) + "," + std::to_string(u[k]) +
                        ") induces a different slice than (" +
                        std::to_string(reference_triple[0]) + "," +
                        std::to_string(reference_triple[1]) + "," +
                        std::to_string(reference_triple[2]) + ")");
                }
            }
        }
    }
    return {static_cast<int>(s), std::move(reference)};
}

Reduced3Graph slice_assembly(const Palette& g, int index_count,
                             const std::map<VertexPair, std::vector<int>>& pair_vertices) {
    const int s = g.color_count();
    for (int i = 1; i <= index_count; ++i) {
        for (int j = i + 1; j <= index_count; ++j) {
            const auto it = pair_vertices.find({i, j});
            if (it == pair_vertices.end() || static_cast<int>(it->second.size()) != s) {
                throw std::invalid_argument(
                    "slice_assembly: need s vertices per index pair");
            }
        }
    }
    std::vector<Reduced3Graph::Constituent> constituents;
    for (int i = 1; i <= index_count; ++i) {
        for (int j = i + 1; j <= index_count; ++j) {
            for (int k = j + 1; k <= index_count; ++k) {
                Reduced3Graph::Constituent con;
                con.indices = {i, j, k};
                const auto& ij = pair_vertices.at({i, j});
                const auto& ik = pair_vertices.at({i, k});
                const auto& jk = pair_vertices.at({j, k});
                for (const auto& q : g.patterns()) {
                    con.edges.push_back({ij[static_cast<std::size_t>(q[0] - 1)],
                                         ik[static_cast<std::size_t>(q[1] - 1)],
                                         jk[static_cast<std::size_t>(q[2] - 1)]});
                }
                constituents.push_back(std::move(con));
            }
        }
    }
    return {index_count, pair_vertices, std::move(constituents)};
}

}  // namespace paltk
