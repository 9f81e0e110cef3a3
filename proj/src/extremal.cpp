#include "paltk/extremal.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

#include "paltk/rng.hpp"

namespace paltk {

namespace {

std::vector<Pattern> pattern_universe(int n, bool nondegenerate) {
    std::vector<Pattern> all;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c) {
                const Pattern p{a, b, c};
                if (nondegenerate && is_degenerate(p)) continue;
                all.push_back(p);
            }
    return all;
}

struct ExPalSearch {
    int n;
    std::span<const ThreeGraph> family;
    const ExtremalOptions& options;
    bool canonical_keys;

    struct PatternsHash {
        std::size_t operator()(const std::vector<Pattern>& patterns) const {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (const auto& q : patterns) {
                for (int c : q) {
                    h ^= static_cast<std::uint64_t>(c);
                    h *= 0x100000001b3ULL;
                }
            }
            return static_cast<std::size_t>(h);
        }
    };

    std::vector<Pattern> ground;
    std::vector<std::vector<std::uint64_t>> conflict;  // bitmask rows over the ground set
    int words = 1;
    std::unordered_map<std::vector<Pattern>, bool, PatternsHash> paint_cache;

    long long best = -1;
    std::set<std::vector<Pattern>> extremal;
    long long nodes = 0;
    bool budget_hit = false;
    bool painting_unknown = false;

    ExPalSearch(int n_, std::span<const ThreeGraph> fam, const ExtremalOptions& opt)
        : n(n_), family(fam), options(opt), canonical_keys(n_ <= 8) {}

    std::vector<Pattern> key_of(const Palette& pal) const {
        return canonical_keys ? canonical_form(pal).patterns() : pal.patterns();
    }

    /// True when the palette paints some family member (treats a
    /// budget-exceeded painting search as painting, flagged for the report).
    bool paints_family(const Palette& pal) {
        const auto key = key_of(pal);
        if (const auto it = paint_cache.find(key); it != paint_cache.end()) return it->second;
        bool result = false;
        for (const auto& f : family) {
            const Verdict v = paints(pal, f, options.painting_budget);
            if (v == Verdict::kYes) {
                result = true;
                break;
            }
            if (v == Verdict::kUnknown) {
                painting_unknown = true;
                result = true;
                break;
            }
        }
        paint_cache.emplace(key, result);
        return result;
    }

    void prepare_ground() {
        for (const auto& p : pattern_universe(n, options.nondegenerate)) {
            if (!paints_family(Palette(n, {p}))) ground.push_back(p);
        }
        words = std::max<int>(1, static_cast<int>((ground.size() + 63) / 64));
        conflict.assign(ground.size(),
                        std::vector<std::uint64_t>(static_cast<std::size_t>(words), 0));
        for (std::size_t i = 0; i < ground.size(); ++i) {
            for (std::size_t j = i + 1; j < ground.size(); ++j) {
                if (paints_family(Palette(n, {ground[i], ground[j]}))) {
                    conflict[i][j / 64] |= std::uint64_t{1} << (j % 64);
                    conflict[j][i / 64] |= std::uint64_t{1} << (i % 64);
                }
            }
        }
    }

    void record(const std::vector<Pattern>& current) {
        const auto size = static_cast<long long>(current.size());
        if (size > best) {
            best = size;
            extremal.clear();
        }
        if (size == best) extremal.insert(key_of(Palette(n, current)));
    }

    /// `allowed` holds the ground patterns at index >= idx that conflict
    /// with nothing chosen so far; its popcount is the branch-and-bound
    /// upper bound on further growth.
    void dfs(std::size_t idx, std::vector<Pattern>& current,
             std::vector<std::uint64_t>& allowed) {
        if (budget_hit) return;
        if (++nodes > options.budget) {
            budget_hit = true;
            return;
        }
        long long slack = 0;
        for (const auto word : allowed) slack += std::popcount(word);
        if (static_cast<long long>(current.size()) + slack < best) return;
        if (idx == ground.size()) {
            record(current);
            return;
        }
        const bool include_ok = (allowed[idx / 64] >> (idx % 64)) & 1;
        if (include_ok) {
            current.push_back(ground[idx]);
            if (!paints_family(Palette(n, current))) {
                auto next_allowed = allowed;
                next_allowed[idx / 64] &= ~(std::uint64_t{1} << (idx % 64));
                for (int w = 0; w < words; ++w) {
                    next_allowed[static_cast<std::size_t>(w)] &=
                        ~conflict[idx][static_cast<std::size_t>(w)];
                }
                dfs(idx + 1, current, next_allowed);
            }
            current.pop_back();
        }
        allowed[idx / 64] &= ~(std::uint64_t{1} << (idx % 64));
        dfs(idx + 1, current, allowed);
    }

    void run_exhaustive() {
        prepare_ground();
        // quick feasibility probe: the empty palette
        if (paints_family(Palette(n, {}))) {
            best = -1;  // family contains an edgeless graph; nothing is deficient
            return;
        }
        best = 0;
        std::vector<Pattern> current;
        std::vector<std::uint64_t> allowed(static_cast<std::size_t>(words), 0);
        for (std::size_t i = 0; i < ground.size(); ++i) {
            allowed[i / 64] |= std::uint64_t{1} << (i % 64);
        }
        dfs(0, current, allowed);
    }

    void run_heuristic() {
        if (paints_family(Palette(n, {}))) {
            best = -1;
            return;
        }
        best = 0;
        Rng rng(options.seed);
        const auto universe = pattern_universe(n, options.nondegenerate);
        for (int restart = 0; restart < 10; ++restart) {
            auto order = universe;
            Rng stream = rng.split(restart);
            stream.shuffle(order);
            std::vector<Pattern> current;
            for (const auto& p : order) {
                if (++nodes > options.budget) {
                    budget_hit = true;
                    return;
                }
                current.push_back(p);
                if (paints_family(Palette(n, current))) current.pop_back();
            }
            record(current);
        }
    }
};

ExtremalReport run_search(int n, std::span<const ThreeGraph> family,
                          const ExtremalOptions& options) {
    if (n < 0) throw std::invalid_argument("ex_pal: negative color count");
    if (options.exhaustive) {
        if (n > 4) {
            throw std::invalid_argument(
                "ex_pal: exhaustive mode requires n <= 4 (pass heuristic mode beyond)");
        }
        for (const auto& f : family) {
            if (f.vertex_count() > 6) {
                throw std::invalid_argument(
                    "ex_pal: exhaustive mode caps family members at 6 vertices");
            }
        }
    }
    ExPalSearch search(n, family, options);
    if (options.exhaustive) {
        search.run_exhaustive();
    } else {
        search.run_heuristic();
    }
    ExtremalReport report;
    report.n = n;
    report.family.assign(family.begin(), family.end());
    report.ex_value = search.best;
    report.nodes_searched = search.nodes;
    report.exact = options.exhaustive && !search.budget_hit && !search.painting_unknown;
    for (const auto& pats : search.extremal) {
        report.extremal_palettes.emplace_back(n, pats);
    }
    return report;
}

}  // namespace

ExtremalReport ex_pal(int n, std::span<const ThreeGraph> family, const ExtremalOptions& options) {
    return run_search(n, family, options);
}

ExtremalReport g_nondegenerate(int n, std::span<const ThreeGraph> family,
                               const ExtremalOptions& options) {
    ExtremalOptions opt = options;
    opt.nondegenerate = true;
    return run_search(n, family, opt);
}

int edit_distance(const Palette& p, const Palette& q) {
    if (p.color_count() != q.color_count()) {
        throw std::invalid_argument("edit_distance: color counts differ");
    }
    std::vector<Pattern> diff;
    std::set_symmetric_difference(p.patterns().begin(), p.patterns().end(),
                                  q.patterns().begin(), q.patterns().end(),
                                  std::back_inserter(diff));
    return static_cast<int>(diff.size());
}

MissingBad missing_bad(const Palette& q, const Palette& p, std::span<const int> sizes) {
    long long total = 0;
    for (int s : sizes) total += s;
    if (total != q.color_count() || static_cast<int>(sizes.size()) != p.color_count()) {
        throw std::invalid_argument("missing_bad: sizes do not describe a blow-up onto c(Q)");
    }
    const Palette s = blow_up(p, std::vector<int>(sizes.begin(), sizes.end())).palette;
    MissingBad out;
    std::set_difference(s.patterns().begin(), s.patterns().end(), q.patterns().begin(),
                        q.patterns().end(), std::back_inserter(out.missing));
    std::set_difference(q.patterns().begin(), q.patterns().end(), s.patterns().begin(),
                        s.patterns().end(), std::back_inserter(out.bad));
    std::vector<int> degree(static_cast<std::size_t>(q.color_count()) + 1, 0);
    for (const auto& b : out.bad) {
        std::vector<int> colors{b[0], b[1], b[2]};
        std::sort(colors.begin(), colors.end());
        colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
        for (int c : colors) ++degree[static_cast<std::size_t>(c)];
    }
    out.max_bad_degree = *std::max_element(degree.begin(), degree.end());
    return out;
}

namespace {

long long count_bad(const Palette& q, const Palette& p, const std::vector<int>& assignment) {
    long long bad = 0;
    for (const auto& pat : q.patterns()) {
        if (!p.contains({assignment[static_cast<std::size_t>(pat[0] - 1)],
                         assignment[static_cast<std::size_t>(pat[1] - 1)],
                         assignment[static_cast<std::size_t>(pat[2] - 1)]})) {
            ++bad;
        }
    }
    return bad;
}

}  // namespace

BlowupFit best_blowup_fit(const Palette& q, const Palette& p, bool exhaustive,
                          std::uint64_t seed) {
    const int t = p.color_count();
    const int nq = q.color_count();
    if (t < 1) throw std::invalid_argument("best_blowup_fit: target palette has no colors");
    BlowupFit fit;
    if (nq == 0) {
        fit.exhaustive = true;
        return fit;
    }
    if (exhaustive) {
        double combos = 1.0;
        for (int i = 0; i < nq; ++i) combos *= t;
        if (combos > 1e7) {
            throw std::invalid_argument("best_blowup_fit: t^n exceeds the exhaustive limit");
        }
        std::vector<int> assignment(static_cast<std::size_t>(nq), 1);
        fit.assignment = assignment;
        fit.bad_count = count_bad(q, p, assignment);
        while (true) {
            int i = 0;
            while (i < nq && assignment[static_cast<std::size_t>(i)] == t) {
                assignment[static_cast<std::size_t>(i)] = 1;
                ++i;
            }
            if (i == nq) break;
            ++assignment[static_cast<std::size_t>(i)];
            const long long bad = count_bad(q, p, assignment);
            if (bad < fit.bad_count) {
                fit.bad_count = bad;
                fit.assignment = assignment;
            }
        }
        fit.exhaustive = true;
        return fit;
    }
    // single-color relocation local search from 10 random starts; a bounded
    // number of sideways moves walks plateaus between strict improvements
    Rng rng(seed);
    bool first = true;
    for (int restart = 0; restart < 10; ++restart) {
        Rng stream = rng.split(restart);
        std::vector<int> assignment(static_cast<std::size_t>(nq));
        for (auto& a : assignment) a = stream.uniform_int(1, t);
        long long bad = count_bad(q, p, assignment);
        int sideways_left = 4 * nq;
        while (true) {
            long long best_delta = 0;
            std::vector<std::pair<int, int>> moves;  // best strict or plateau moves
            for (int x = 0; x < nq; ++x) {
                const int old = assignment[static_cast<std::size_t>(x)];
                for (int k = 1; k <= t; ++k) {
                    if (k == old) continue;
                    assignment[static_cast<std::size_t>(x)] = k;
                    const long long delta = count_bad(q, p, assignment) - bad;
                    assignment[static_cast<std::size_t>(x)] = old;
                    if (delta < best_delta) {
                        best_delta = delta;
                        moves.clear();
                    }
                    if (delta == best_delta) moves.emplace_back(x, k);
                }
            }
            if (moves.empty()) break;
            if (best_delta == 0 && --sideways_left < 0) break;
            if (best_delta < 0) sideways_left = 4 * nq;
            // random choice among the equally best moves diversifies starts
            const auto& [x, k] = moves[stream.uniform_below(moves.size())];
            assignment[static_cast<std::size_t>(x)] = k;
            bad += best_delta;
        }
        if (first || bad < fit.bad_count) {
            fit.bad_count = bad;
            fit.assignment = assignment;
            first = false;
        }
    }
    fit.exhaustive = false;
    return fit;
}

}  // namespace paltk
