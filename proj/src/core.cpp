#include "paltk/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace paltk {

namespace {

void check_color(int color, int color_count, const char* what) {
    if (color < 1 || color > color_count) {
        throw std::invalid_argument(std::string(what) + ": color " + std::to_string(color) +
                                    " outside [1.." + std::to_string(color_count) + "]");
    }
}

}  // namespace

Palette::Palette(int color_count, std::vector<Pattern> patterns)
    : color_count_(color_count), patterns_(std::move(patterns)) {
    if (color_count_ < 0) throw std::invalid_argument("Palette: negative color count");
    for (const auto& p : patterns_) {
        for (int c : p) check_color(c, color_count_, "Palette");
    }
    std::sort(patterns_.begin(), patterns_.end());
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
}

bool Palette::contains(const Pattern& p) const {
    return std::binary_search(patterns_.begin(), patterns_.end(), p);
}

bool Palette::is_nondegenerate() const {
    return std::none_of(patterns_.begin(), patterns_.end(),
                        [](const Pattern& p) { return is_degenerate(p); });
}

ThreeGraph::ThreeGraph(int vertex_count, std::vector<Edge3> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 0) throw std::invalid_argument("ThreeGraph: negative vertex count");
    for (auto& e : edges_) {
        std::sort(e.begin(), e.end());
        if (e[0] == e[1] || e[1] == e[2]) {
            throw std::invalid_argument("ThreeGraph: edge with repeated vertex");
        }
        for (int v : e) check_color(v, vertex_count_, "ThreeGraph");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool ThreeGraph::contains(const Edge3& e) const {
    Edge3 s = e;
    std::sort(s.begin(), s.end());
    return std::binary_search(edges_.begin(), edges_.end(), s);
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw std::invalid_argument("WeightVector: entry outside [0,1]");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw std::invalid_argument("WeightVector: entries sum to " + std::to_string(sum));
    }
}

WeightVector WeightVector::uniform(int color_count) {
    if (color_count < 1) throw std::invalid_argument("WeightVector: need at least one color");
    return WeightVector(
        std::vector<double>(static_cast<std::size_t>(color_count), 1.0 / color_count));
}

Equipartition::Equipartition(int universe, std::vector<std::vector<int>> parts,
                             std::vector<int> exceptional)
    : universe_(universe), parts_(std::move(parts)), exceptional_(std::move(exceptional)) {
    std::vector<char> seen(static_cast<std::size_t>(universe_) + 1, 0);
    auto visit = [&](int color) {
        check_color(color, universe_, "Equipartition");
        if (seen[static_cast<std::size_t>(color)]) {
            throw std::invalid_argument("Equipartition: color " + std::to_string(color) +
                                        " appears twice");
        }
        seen[static_cast<std::size_t>(color)] = 1;
    };
    std::size_t min_size = parts_.empty() ? 0 : parts_.front().size();
    std::size_t max_size = min_size;
    for (auto& part : parts_) {
        std::sort(part.begin(), part.end());
        for (int c : part) visit(c);
        min_size = std::min(min_size, part.size());
        max_size = std::max(max_size, part.size());
    }
    std::sort(exceptional_.begin(), exceptional_.end());
    for (int c : exceptional_) visit(c);
    if (std::count(seen.begin() + 1, seen.end(), 1) != universe_) {
        throw std::invalid_argument("Equipartition: parts do not cover the universe");
    }
    if (!parts_.empty() && max_size - min_size > 1) {
        throw std::invalid_argument("Equipartition: part sizes differ by more than one");
    }
}

std::vector<std::vector<int>> Equipartition::expanded() const {
    std::vector<std::vector<int>> out = parts_;
    for (int c : exceptional_) out.push_back({c});
    return out;
}

Rational density(const Palette& p) {
    if (p.color_count() == 0) {
        throw std::invalid_argument("density: palette has no colors");
    }
    const auto c = static_cast<std::int64_t>(p.color_count());
    return {p.pattern_count(), c * c * c};
}

Palette reverse(const Palette& p) {
    std::vector<Pattern> rev;
    rev.reserve(p.patterns().size());
    for (const auto& q : p.patterns()) rev.push_back({q[2], q[1], q[0]});
    return {p.color_count(), std::move(rev)};
}

Palette induced(const Palette& p, const std::vector<int>& u) {
    std::vector<int> colors = u;
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
    std::vector<int> relabel(static_cast<std::size_t>(p.color_count()) + 1, 0);
    for (std::size_t i = 0; i < colors.size(); ++i) {
        check_color(colors[i], p.color_count(), "induced");
        relabel[static_cast<std::size_t>(colors[i])] = static_cast<int>(i) + 1;
    }
    std::vector<Pattern> kept;
    for (const auto& q : p.patterns()) {
        const int a = relabel[static_cast<std::size_t>(q[0])];
        const int b = relabel[static_cast<std::size_t>(q[1])];
        const int c = relabel[static_cast<std::size_t>(q[2])];
        if (a && b && c) kept.push_back({a, b, c});
    }
    return {static_cast<int>(colors.size()), std::move(kept)};
}

BlowUp blow_up(const Palette& p, const std::vector<int>& sizes) {
    if (static_cast<int>(sizes.size()) != p.color_count()) {
        throw std::invalid_argument("blow_up: need one size per color");
    }
    std::vector<int> first(sizes.size() + 1, 1);  // first new color of each class
    std::vector<int> origin;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 0) throw std::invalid_argument("blow_up: negative class size");
        first[i + 1] = first[i] + sizes[i];
        for (int k = 0; k < sizes[i]; ++k) origin.push_back(static_cast<int>(i) + 1);
    }
    const int total = first.back() - 1;
    std::vector<Pattern> lifted;
    for (const auto& q : p.patterns()) {
        const auto i = static_cast<std::size_t>(q[0] - 1);
        const auto j = static_cast<std::size_t>(q[1] - 1);
        const auto k = static_cast<std::size_t>(q[2] - 1);
        for (int x = first[i]; x < first[i] + sizes[i]; ++x)
            for (int y = first[j]; y < first[j] + sizes[j]; ++y)
                for (int z = first[k]; z < first[k] + sizes[k]; ++z)
                    lifted.push_back({x, y, z});
    }
    return {Palette(total, std::move(lifted)), std::move(origin)};
}

Palette canonical_form(const Palette& p) {
    const int c = p.color_count();
    if (c > 8) {
        throw std::invalid_argument("canonical_form: color count " + std::to_string(c) +
                                    " exceeds the exhaustive-search limit of 8");
    }
    std::vector<int> perm(static_cast<std::size_t>(c));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<Pattern> best = p.patterns();
    std::sort(best.begin(), best.end());
    std::vector<Pattern> relabeled(p.patterns().size());
    bool first = true;
    do {
        for (std::size_t i = 0; i < p.patterns().size(); ++i) {
            const auto& q = p.patterns()[i];
            relabeled[i] = {perm[static_cast<std::size_t>(q[0] - 1)],
                            perm[static_cast<std::size_t>(q[1] - 1)],
                            perm[static_cast<std::size_t>(q[2] - 1)]};
        }
        std::sort(relabeled.begin(), relabeled.end());
        if (first || relabeled < best) best = relabeled;
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {c, std::move(best)};
}

std::vector<VertexPair> shadow(const ThreeGraph& f) {
    std::vector<VertexPair> pairs;
    for (const auto& e : f.edges()) {
        pairs.emplace_back(e[0], e[1]);
        pairs.emplace_back(e[0], e[2]);
        pairs.emplace_back(e[1], e[2]);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

namespace {

struct Row {
    std::vector<long long> fields;
    int line;
};

/// Shared reader for the two text formats: a header keyword with one
/// integer, then rows of three integers, '#' comments, blank lines ignored.
std::pair<long long, std::vector<Row>> read_table(const std::string& text,
                                                  const std::string& keyword) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    long long header_value = 0;
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        if (!header_seen) {
            std::string word;
            if (!(fields >> word)) continue;  // blank line before header
            if (word != keyword) {
                throw ParseError("expected header '" + keyword + " <n>', got '" + word + "'",
                                 lineno);
            }
            if (!(fields >> header_value)) throw ParseError("missing count after header", lineno);
            std::string extra;
            if (fields >> extra) throw ParseError("trailing text after header", lineno);
            header_seen = true;
            continue;
        }
        Row row{{}, lineno};
        long long v = 0;
        while (fields >> v) row.fields.push_back(v);
        if (!fields.eof()) throw ParseError("malformed integer", lineno);
        if (row.fields.empty()) continue;
        if (row.fields.size() != 3) throw ParseError("expected three integers", lineno);
        rows.push_back(std::move(row));
    }
    if (!header_seen) throw ParseError("missing '" + keyword + "' header", lineno);
    return {header_value, std::move(rows)};
}

int narrow(long long v, int lo, long long hi, const char* what, int lineno) {
    if (v < lo || v > hi) {
        throw ParseError(std::string(what) + " " + std::to_string(v) + " outside [" +
                             std::to_string(lo) + ".." + std::to_string(hi) + "]",
                         lineno);
    }
    return static_cast<int>(v);
}

}  // namespace

Palette parse_palette(const std::string& text) {
    const auto [count, rows] = read_table(text, "palette");
    const int c = narrow(count, 0, 100000, "color count", 1);
    std::vector<Pattern> patterns;
    patterns.reserve(rows.size());
    for (const auto& row : rows) {
        Pattern p;
        for (int i = 0; i < 3; ++i) {
            p[static_cast<std::size_t>(i)] = narrow(row.fields[static_cast<std::size_t>(i)], 1,
                                                    c, "color", row.line);
        }
        patterns.push_back(p);
    }
    return {c, std::move(patterns)};
}

std::string serialize(const Palette& p) {
    std::ostringstream out;
    out << "palette " << p.color_count() << "\n";
    for (const auto& q : p.patterns()) out << q[0] << " " << q[1] << " " << q[2] << "\n";
    return out.str();
}

ThreeGraph parse_three_graph(const std::string& text) {
    const auto [count, rows] = read_table(text, "graph3");
    const int n = narrow(count, 0, 100000, "vertex count", 1);
    std::vector<Edge3> edges;
    edges.reserve(rows.size());
    for (const auto& row : rows) {
        Edge3 e;
        for (int i = 0; i < 3; ++i) {
            e[static_cast<std::size_t>(i)] = narrow(row.fields[static_cast<std::size_t>(i)], 1,
                                                    n, "vertex", row.line);
        }
        if (e[0] == e[1] || e[1] == e[2] || e[0] == e[2]) {
            throw ParseError("edge with repeated vertex", row.line);
        }
        edges.push_back(e);
    }
    return {n, std::move(edges)};
}

std::string serialize(const ThreeGraph& f) {
    std::ostringstream out;
    out << "graph3 " << f.vertex_count() << "\n";
    for (const auto& e : f.edges()) out << e[0] << " " << e[1] << " " << e[2] << "\n";
    return out.str();
}

}  // namespace paltk
