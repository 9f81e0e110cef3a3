#include "paltk/hom.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace paltk {

bool is_homomorphism(const Palette& source, const Palette& target, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != source.color_count()) return false;
    for (int image : map) {
        if (image < 1 || image > target.color_count()) return false;
    }
    for (const auto& q : source.patterns()) {
        if (!target.contains({map[static_cast<std::size_t>(q[0] - 1)],
                              map[static_cast<std::size_t>(q[1] - 1)],
                              map[static_cast<std::size_t>(q[2] - 1)]})) {
            return false;
        }
    }
    return true;
}

namespace {

struct HomSearch {
    const Palette& source;
    const Palette& target;
    bool injective;
    long long budget;

    std::vector<int> order;      // source colors, descending pattern degree
    std::vector<int> image;      // 0 = unassigned
    std::vector<char> used;      // target colors taken (injective mode)
    long long nodes = 0;
    bool budget_hit = false;

    HomSearch(const Palette& s, const Palette& t, bool inj, long long b)
        : source(s), target(t), injective(inj), budget(b) {
        std::vector<int> degree(static_cast<std::size_t>(s.color_count()), 0);
        for (const auto& q : s.patterns()) {
            for (int c : {q[0], q[1], q[2]}) ++degree[static_cast<std::size_t>(c - 1)];
        }
        order.resize(static_cast<std::size_t>(s.color_count()));
        std::iota(order.begin(), order.end(), 1);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b2) {
            return degree[static_cast<std::size_t>(a - 1)] >
                   degree[static_cast<std::size_t>(b2 - 1)];
        });
        image.assign(static_cast<std::size_t>(s.color_count()), 0);
        used.assign(static_cast<std::size_t>(t.color_count()) + 1, 0);
    }

    /// Every source pattern must still be completable: fully mapped patterns
    /// must land in the target, and partially mapped ones must match some
    /// target pattern with wildcards at the unassigned slots.
    bool consistent() const {
        for (const auto& q : source.patterns()) {
            const int a = image[static_cast<std::size_t>(q[0] - 1)];
            const int b = image[static_cast<std::size_t>(q[1] - 1)];
            const int c = image[static_cast<std::size_t>(q[2] - 1)];
            if (a && b && c) {
                if (!target.contains({a, b, c})) return false;
                continue;
            }
            bool matched = false;
            for (const auto& t : target.patterns()) {
                if ((a == 0 || a == t[0]) && (b == 0 || b == t[1]) && (c == 0 || c == t[2])) {
                    matched = true;
                    break;
                }
            }
            if (!matched) return false;
        }
        return true;
    }

    bool run(std::size_t depth) {
        if (depth == order.size()) return true;
        const auto color = static_cast<std::size_t>(order[depth] - 1);
        for (int t = 1; t <= target.color_count(); ++t) {
            if (injective && used[static_cast<std::size_t>(t)]) continue;
            if (++nodes > budget) {
                budget_hit = true;
                return false;
            }
            image[color] = t;
            used[static_cast<std::size_t>(t)] = 1;
            if (consistent() && run(depth + 1)) return true;
            image[color] = 0;
            used[static_cast<std::size_t>(t)] = 0;
            if (budget_hit) return false;
        }
        return false;
    }
};

HomSearchResult run_hom_search(const Palette& source, const Palette& target, bool injective,
                               long long budget) {
    HomSearchResult result;
    if (source.color_count() == 0) {
        result.verdict = Verdict::kYes;
        result.map = std::vector<int>{};
        return result;
    }
    if (target.color_count() == 0 ||
        (injective && source.color_count() > target.color_count())) {
        result.verdict = Verdict::kNo;
        return result;
    }
    HomSearch search(source, target, injective, budget);
    const bool found = search.run(0);
    result.nodes = search.nodes;
    if (found) {
        result.verdict = Verdict::kYes;
        result.map = search.image;
        if (!is_homomorphism(source, target, *result.map)) {
            throw std::logic_error("find_homomorphism: map failed re-verification");
        }
    } else {
        result.verdict = search.budget_hit ? Verdict::kUnknown : Verdict::kNo;
    }
    return result;
}

}  // namespace

HomSearchResult find_homomorphism(const Palette& source, const Palette& target,
                                  long long budget) {
    return run_hom_search(source, target, false, budget);
}

HomSearchResult find_embedding(const Palette& source, const Palette& target, long long budget) {
    return run_hom_search(source, target, true, budget);
}

Verdict contained_in_blowup(const Palette& inner, const Palette& outer, long long budget) {
    return find_homomorphism(inner, outer, budget).verdict;
}

bool is_isomorphic(const Palette& p, const Palette& q) {
    if (p.color_count() != q.color_count() || p.pattern_count() != q.pattern_count())
        return false;
    return canonical_form(p) == canonical_form(q);
}

Verdict embedding_exists(const Palette& p, const Palette& q, long long budget) {
    return find_embedding(p, q, budget).verdict;
}

bool dominates(const Palette& p, int a, int b) {
    if (a == b) throw std::invalid_argument("dominates: colors must be distinct");
    for (int c : {a, b}) {
        if (c < 1 || c > p.color_count()) {
            throw std::invalid_argument("dominates: color out of range");
        }
    }
    for (const auto& q : p.patterns()) {
        std::vector<int> positions;
        for (int i = 0; i < 3; ++i) {
            if (q[static_cast<std::size_t>(i)] == a) positions.push_back(i);
        }
        if (positions.empty()) continue;
        const int subsets = 1 << positions.size();
        for (int mask = 1; mask < subsets; ++mask) {
            Pattern subst = q;
            for (std::size_t i = 0; i < positions.size(); ++i) {
                if (mask & (1 << i)) subst[static_cast<std::size_t>(positions[i])] = b;
            }
            if (!p.contains(subst)) return false;
        }
    }
    return true;
}

}  // namespace paltk
