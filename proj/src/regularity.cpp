#include "paltk/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "paltk/rng.hpp"

namespace paltk {

namespace {

/// Pattern membership as bit rows: row (a,b) holds the set of colors z with
/// (a,b,z) a pattern. Triple counts reduce to masked popcounts.
class PatternTensor {
public:
    explicit PatternTensor(const Palette& p)
        : c_(p.color_count()), words_(std::max(1, (p.color_count() + 63) / 64)) {
        rows_.assign(static_cast<std::size_t>(c_) * static_cast<std::size_t>(c_) *
                         static_cast<std::size_t>(words_),
                     0);
        for (const auto& q : p.patterns()) {
            auto* row = row_of(q[0], q[1]);
            row[static_cast<std::size_t>((q[2] - 1) / 64)] |= std::uint64_t{1}
                                                             << ((q[2] - 1) % 64);
        }
    }

    int color_count() const { return c_; }
    int words() const { return words_; }

    const std::uint64_t* row_of(int a, int b) const {
        return rows_.data() + (static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(c_) +
                               static_cast<std::size_t>(b - 1)) *
                                  static_cast<std::size_t>(words_);
    }
    std::uint64_t* row_of(int a, int b) {
        return rows_.data() + (static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(c_) +
                               static_cast<std::size_t>(b - 1)) *
                                  static_cast<std::size_t>(words_);
    }

    std::vector<std::uint64_t> mask_of(const std::vector<int>& colors) const {
        std::vector<std::uint64_t> mask(static_cast<std::size_t>(words_), 0);
        for (int z : colors) {
            mask[static_cast<std::size_t>((z - 1) / 64)] |= std::uint64_t{1} << ((z - 1) % 64);
        }
        return mask;
    }

    long long count(const std::vector<int>& w1, const std::vector<int>& w2,
                    const std::vector<std::uint64_t>& mask3) const {
        long long total = 0;
        for (int a : w1) {
            for (int b : w2) {
                const auto* row = row_of(a, b);
                for (int w = 0; w < words_; ++w) {
                    total += std::popcount(row[static_cast<std::size_t>(w)] &
                                           mask3[static_cast<std::size_t>(w)]);
                }
            }
        }
        return total;
    }

    long long count(const std::vector<int>& w1, const std::vector<int>& w2,
                    const std::vector<int>& w3) const {
        return count(w1, w2, mask_of(w3));
    }

    double density(const std::vector<int>& w1, const std::vector<int>& w2,
                   const std::vector<int>& w3) const {
        const auto denom = static_cast<double>(w1.size()) * static_cast<double>(w2.size()) *
                           static_cast<double>(w3.size());
        return static_cast<double>(count(w1, w2, w3)) / denom;
    }

private:
    int c_;
    int words_;
    std::vector<std::uint64_t> rows_;
};

void check_color_set(const std::vector<int>& set, int color_count, const char* what) {
    if (set.empty()) throw std::invalid_argument(std::string(what) + ": empty color set");
    for (int z : set) {
        if (z < 1 || z > color_count) {
            throw std::invalid_argument(std::string(what) + ": color out of range");
        }
    }
}

int witness_size(double eps, std::size_t part_size) {
    // the slack keeps eps * size from overshooting an exact integer product
    const int k = static_cast<int>(std::ceil(eps * static_cast<double>(part_size) - 1e-9));
    return std::max(1, std::min<int>(k, static_cast<int>(part_size)));
}

}  // namespace

double triple_density(const Palette& p, const std::vector<int>& w1, const std::vector<int>& w2,
                      const std::vector<int>& w3) {
    check_color_set(w1, p.color_count(), "triple_density");
    check_color_set(w2, p.color_count(), "triple_density");
    check_color_set(w3, p.color_count(), "triple_density");
    const PatternTensor tensor(p);
    return tensor.density(w1, w2, w3);
}

bool verify_witness(const Palette& p, const std::vector<int>& v1, const std::vector<int>& v2,
                    const std::vector<int>& v3, const IrregularityWitness& w, double eps) {
    const std::array<const std::vector<int>*, 3> parts = {&v1, &v2, &v3};
    for (int i = 0; i < 3; ++i) {
        const auto& sub = w.witness_sets[static_cast<std::size_t>(i)];
        const auto& part = *parts[static_cast<std::size_t>(i)];
        if (sub.empty()) return false;
        if (static_cast<double>(sub.size()) + 1e-12 < eps * static_cast<double>(part.size())) {
            return false;
        }
        for (int z : sub) {
            if (std::find(part.begin(), part.end(), z) == part.end()) return false;
        }
    }
    const PatternTensor tensor(p);
    const double base = tensor.density(v1, v2, v3);
    const double dev = tensor.density(w.witness_sets[0], w.witness_sets[1], w.witness_sets[2]);
    return std::abs(dev - base) > eps;
}

namespace {

struct AuditContext {
    const PatternTensor& tensor;
    const std::vector<int>& v1;
    const std::vector<int>& v2;
    const std::vector<int>& v3;
    double eps;
    double base;
    long long checked = 0;

    bool try_witness(const std::vector<int>& w1, const std::vector<int>& w2,
                     const std::vector<int>& w3, AuditResult& out) {
        ++checked;
        if (w1.empty() || w2.empty() || w3.empty()) return false;
        const double d = tensor.density(w1, w2, w3);
        if (std::abs(d - base) <= eps) return false;
        out.witness_found = true;
        out.witness.witness_sets = {w1, w2, w3};
        out.witness.base_density = base;
        out.witness.witness_density = d;
        return true;
    }
};

/// Degrees of the colors of side toward (other two sides as fixed sets);
/// used both for prefix sweeps and the exhaustive reduction of the W1 side.
std::vector<long long> side_degrees(const PatternTensor& tensor, int position,
                                    const std::vector<int>& v1, const std::vector<int>& v2,
                                    const std::vector<int>& v3) {
    const std::vector<int>& side = position == 0 ? v1 : (position == 1 ? v2 : v3);
    std::vector<long long> deg(side.size(), 0);
    for (std::size_t i = 0; i < side.size(); ++i) {
        const std::vector<int> single{side[i]};
        if (position == 0) {
            deg[i] = tensor.count(single, v2, v3);
        } else if (position == 1) {
            deg[i] = tensor.count(v1, single, v3);
        } else {
            deg[i] = tensor.count(v1, v2, single);
        }
    }
    return deg;
}

/// Exhaustive audit: subsets of V2 and V3 enumerate explicitly; for each
/// pair the best and worst qualifying W1 are prefixes of the degree-sorted
/// order, so checking the prefix averages is exact.
AuditResult exhaustive_audit(const PatternTensor& tensor, const std::vector<int>& v1,
                             const std::vector<int>& v2, const std::vector<int>& v3,
                             double eps) {
    AuditResult out;
    out.mode = AuditMode::kExhaustive;
    AuditContext ctx{tensor, v1, v2, v3, eps, tensor.density(v1, v2, v3)};
    const auto n1 = v1.size();
    const auto n2 = v2.size();
    const auto n3 = v3.size();
    const int k1 = witness_size(eps, n1);
    const int k2 = witness_size(eps, n2);
    const int k3 = witness_size(eps, n3);
    const long long full = tensor.count(v1, v2, v3);
    if (full == 0 || full == static_cast<long long>(n1 * n2 * n3)) {
        // every sub-density equals the base density; nothing can deviate
        out.combinations_checked = 1;
        return out;
    }

    std::vector<std::vector<long long>> pair_count(n1, std::vector<long long>(n2, 0));
    std::vector<long long> deg(n1, 0);
    std::vector<long long> sorted_deg(n1, 0);
    for (std::uint32_t mask3 = 1; mask3 < (1u << n3); ++mask3) {
        if (static_cast<int>(std::popcount(mask3)) < k3) continue;
        std::vector<int> w3;
        for (std::size_t z = 0; z < n3; ++z) {
            if (mask3 & (1u << z)) w3.push_back(v3[z]);
        }
        const auto w3mask = tensor.mask_of(w3);
        for (std::size_t a = 0; a < n1; ++a) {
            for (std::size_t b = 0; b < n2; ++b) {
                pair_count[a][b] = tensor.count({v1[a]}, {v2[b]}, w3mask);
            }
        }
        for (std::uint32_t mask2 = 1; mask2 < (1u << n2); ++mask2) {
            const int size2 = static_cast<int>(std::popcount(mask2));
            if (size2 < k2) continue;
            ++ctx.checked;
            std::fill(deg.begin(), deg.end(), 0);
            for (std::size_t b = 0; b < n2; ++b) {
                if (!(mask2 & (1u << b))) continue;
                for (std::size_t a = 0; a < n1; ++a) deg[a] += pair_count[a][b];
            }
            sorted_deg = deg;
            std::sort(sorted_deg.begin(), sorted_deg.end(), std::greater<>());
            const double cell = static_cast<double>(size2) * static_cast<double>(w3.size());
            // scan prefix averages from the top (maxima) and bottom (minima)
            for (int pass = 0; pass < 2; ++pass) {
                long long sum = 0;
                for (std::size_t i = 0; i < n1; ++i) {
                    sum += sorted_deg[pass == 0 ? i : n1 - 1 - i];
                    const auto size1 = static_cast<int>(i) + 1;
                    if (size1 < k1) continue;
                    const double d = static_cast<double>(sum) / (size1 * cell);
                    if (std::abs(d - ctx.base) > eps) {
                        // materialize the prefix as the W1 witness
                        std::vector<std::size_t> idx(n1);
                        std::iota(idx.begin(), idx.end(), 0);
                        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
                            return pass == 0 ? deg[x] > deg[y] : deg[x] < deg[y];
                        });
                        std::vector<int> w1;
                        for (int j = 0; j < size1; ++j) w1.push_back(v1[idx[static_cast<std::size_t>(j)]]);
                        std::vector<int> w2;
                        for (std::size_t b = 0; b < n2; ++b) {
                            if (mask2 & (1u << b)) w2.push_back(v2[b]);
                        }
                        AuditResult found;
                        AuditContext probe{tensor, v1, v2, v3, eps, ctx.base};
                        if (probe.try_witness(w1, w2, w3, found)) {
                            found.mode = AuditMode::kExhaustive;
                            found.combinations_checked = ctx.checked;
                            found.witness.base_density = ctx.base;
                            return found;
                        }
                    }
                }
            }
        }
    }
    out.combinations_checked = ctx.checked;
    return out;
}

AuditResult sampled_audit(const PatternTensor& tensor, const std::vector<int>& v1,
                          const std::vector<int>& v2, const std::vector<int>& v3, double eps,
                          int samples, std::uint64_t seed) {
    AuditResult out;
    out.mode = AuditMode::kSampled;
    AuditContext ctx{tensor, v1, v2, v3, eps, tensor.density(v1, v2, v3)};
    const std::array<const std::vector<int>*, 3> parts = {&v1, &v2, &v3};

    // deterministic sweep: degree-sorted prefixes (top and bottom) at a few
    // qualifying sizes per side, all combinations
    std::array<std::vector<std::vector<int>>, 3> candidates;
    for (int pos = 0; pos < 3; ++pos) {
        const auto& part = *parts[static_cast<std::size_t>(pos)];
        const auto deg = side_degrees(tensor, pos, v1, v2, v3);
        std::vector<std::size_t> idx(part.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t x, std::size_t y) { return deg[x] > deg[y]; });
        const int k = witness_size(eps, part.size());
        std::vector<int> sizes{k, (k + static_cast<int>(part.size())) / 2,
                               static_cast<int>(part.size())};
        std::sort(sizes.begin(), sizes.end());
        sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
        auto& list = candidates[static_cast<std::size_t>(pos)];
        for (int size : sizes) {
            std::vector<int> top, bottom;
            for (int j = 0; j < size; ++j) {
                top.push_back(part[idx[static_cast<std::size_t>(j)]]);
                bottom.push_back(part[idx[part.size() - 1 - static_cast<std::size_t>(j)]]);
            }
            std::sort(top.begin(), top.end());
            std::sort(bottom.begin(), bottom.end());
            list.push_back(std::move(top));
            if (size < static_cast<int>(part.size())) list.push_back(std::move(bottom));
        }
    }
    for (const auto& w1 : candidates[0]) {
        for (const auto& w2 : candidates[1]) {
            for (const auto& w3 : candidates[2]) {
                if (ctx.try_witness(w1, w2, w3, out)) {
                    out.combinations_checked = ctx.checked;
                    return out;
                }
            }
        }
    }

    // random draws of the minimum qualifying size
    Rng rng = Rng(seed);
    for (int s = 0; s < samples; ++s) {
        std::array<std::vector<int>, 3> draw;
        for (int pos = 0; pos < 3; ++pos) {
            const auto& part = *parts[static_cast<std::size_t>(pos)];
            const int k = witness_size(eps, part.size());
            Rng stream = rng.split(s, pos);
            const auto picks = stream.sample_without_replacement(static_cast<int>(part.size()), k);
            for (int i : picks) draw[static_cast<std::size_t>(pos)].push_back(
                part[static_cast<std::size_t>(i)]);
        }
        if (ctx.try_witness(draw[0], draw[1], draw[2], out)) {
            out.combinations_checked = ctx.checked;
            return out;
        }
    }
    out.combinations_checked = ctx.checked;
    return out;
}

}  // namespace

AuditResult eps_regular_audit(const Palette& p, const std::vector<int>& v1,
                              const std::vector<int>& v2, const std::vector<int>& v3,
                              double eps, int samples, std::uint64_t seed,
                              bool allow_exhaustive) {
    check_color_set(v1, p.color_count(), "eps_regular_audit");
    check_color_set(v2, p.color_count(), "eps_regular_audit");
    check_color_set(v3, p.color_count(), "eps_regular_audit");
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("eps_regular_audit: eps must lie in (0,1]");
    }
    const PatternTensor tensor(p);
    AuditResult result;
    if (allow_exhaustive && v1.size() <= 12 && v2.size() <= 12 && v3.size() <= 12) {
        result = exhaustive_audit(tensor, v1, v2, v3, eps);
    } else {
        result = sampled_audit(tensor, v1, v2, v3, eps, samples, seed);
    }
    if (result.witness_found && !verify_witness(p, v1, v2, v3, result.witness, eps)) {
        throw std::logic_error("eps_regular_audit: witness failed re-verification");
    }
    return result;
}

namespace {

void check_partition(const std::vector<std::vector<int>>& partition, int universe,
                     const char* what) {
    std::vector<char> seen(static_cast<std::size_t>(universe) + 1, 0);
    for (const auto& cell : partition) {
        for (int z : cell) {
            if (z < 1 || z > universe || seen[static_cast<std::size_t>(z)]) {
                throw std::invalid_argument(std::string(what) +
                                            ": not a partition of the color universe");
            }
            seen[static_cast<std::size_t>(z)] = 1;
        }
    }
    for (int z = 1; z <= universe; ++z) {
        if (!seen[static_cast<std::size_t>(z)]) {
            throw std::invalid_argument(std::string(what) +
                                        ": not a partition of the color universe");
        }
    }
}

double tri_energy_impl(const PatternTensor& tensor, const std::vector<std::vector<int>>& a1,
                       const std::vector<std::vector<int>>& a2,
                       const std::vector<std::vector<int>>& a3) {
    const double n = tensor.color_count();
    double q = 0.0;
    std::vector<std::vector<std::uint64_t>> masks3;
    masks3.reserve(a3.size());
    for (const auto& cell : a3) masks3.push_back(tensor.mask_of(cell));
    for (const auto& c1 : a1) {
        if (c1.empty()) continue;
        for (const auto& c2 : a2) {
            if (c2.empty()) continue;
            for (std::size_t k = 0; k < a3.size(); ++k) {
                const auto& c3 = a3[k];
                if (c3.empty()) continue;
                const double cell = static_cast<double>(c1.size()) *
                                    static_cast<double>(c2.size()) *
                                    static_cast<double>(c3.size());
                const double d = static_cast<double>(tensor.count(c1, c2, masks3[k])) / cell;
                q += cell / (n * n * n) * d * d;
            }
        }
    }
    return q;
}

}  // namespace

double tri_energy(const Palette& p, const std::vector<std::vector<int>>& a1,
                  const std::vector<std::vector<int>>& a2,
                  const std::vector<std::vector<int>>& a3) {
    check_partition(a1, p.color_count(), "tri_energy");
    check_partition(a2, p.color_count(), "tri_energy");
    check_partition(a3, p.color_count(), "tri_energy");
    const PatternTensor tensor(p);
    return tri_energy_impl(tensor, a1, a2, a3);
}

double energy(const Palette& p, const std::vector<std::vector<int>>& partition) {
    check_partition(partition, p.color_count(), "energy");
    const PatternTensor tensor(p);
    return tri_energy_impl(tensor, partition, partition, partition);
}

namespace {

/// q restricted to one ordered triple of color sets, each carved into cells.
double q_of_triple(const PatternTensor& tensor, const std::vector<std::vector<int>>& cells1,
                   const std::vector<std::vector<int>>& cells2,
                   const std::vector<std::vector<int>>& cells3) {
    return tri_energy_impl(tensor, cells1, cells2, cells3);
}

struct RoundAudit {
    std::vector<std::pair<std::array<int, 3>, IrregularityWitness>> witnessed;
    long long combinations = 0;
};

RoundAudit audit_all_triples(const PatternTensor& tensor,
                             const std::vector<std::vector<int>>& parts, double eps,
                             int samples, std::uint64_t seed, std::uint64_t round_key) {
    RoundAudit audit;
    const int t = static_cast<int>(parts.size());
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < t; ++j) {
            for (int k = 0; k < t; ++k) {
                const std::uint64_t stream =
                    mix64(seed ^ mix64(round_key ^ mix64((static_cast<std::uint64_t>(i) << 40) |
                                                         (static_cast<std::uint64_t>(j) << 20) |
                                                         static_cast<std::uint64_t>(k))));
                auto result = sampled_audit(tensor, parts[static_cast<std::size_t>(i)],
                                            parts[static_cast<std::size_t>(j)],
                                            parts[static_cast<std::size_t>(k)], eps, samples,
                                            stream);
                audit.combinations += result.combinations_checked;
                if (result.witness_found) {
                    result.witness.triple = {i + 1, j + 1, k + 1};
                    audit.witnessed.emplace_back(result.witness.triple, result.witness);
                }
            }
        }
    }
    return audit;
}

/// Splits every cell of `pieces` along `cut` (intersection / rest).
void apply_cut(std::vector<std::vector<int>>& pieces, const std::vector<int>& cut) {
    std::vector<std::vector<int>> next;
    for (const auto& piece : pieces) {
        std::vector<int> inside, outside;
        for (int z : piece) {
            if (std::binary_search(cut.begin(), cut.end(), z)) {
                inside.push_back(z);
            } else {
                outside.push_back(z);
            }
        }
        if (!inside.empty()) next.push_back(std::move(inside));
        if (!outside.empty()) next.push_back(std::move(outside));
    }
    pieces = std::move(next);
}

}  // namespace

RegularityCertificate regularize(const Palette& p, double eps, int m, std::uint64_t seed,
                                 const RegularizeOptions& options) {
    const int n = p.color_count();
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("regularize: eps must lie in (0,1)");
    }
    if (m < 1 || m > n) throw std::invalid_argument("regularize: need c(P) >= m >= 1");
    const int max_rounds =
        options.max_rounds > 0
            ? options.max_rounds
            : static_cast<int>(std::ceil(16.0 / std::pow(eps, 6.0))) + 1;

    const PatternTensor tensor(p);

    // initial equipartition: contiguous chunks of [1..n]
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(m));
    for (int z = 1; z <= n; ++z) {
        parts[static_cast<std::size_t>((z - 1) % m)].push_back(z);
    }
    for (auto& part : parts) std::sort(part.begin(), part.end());
    std::vector<int> v0;

    auto with_singletons = [&](const std::vector<std::vector<int>>& base) {
        std::vector<std::vector<int>> out = base;
        for (int z : v0) out.push_back({z});
        return out;
    };

    RegularityCertificate cert{Equipartition(n, parts, v0), eps, {}, 0, 0.0, {}, {}, 0, true,
                               true};
    cert.energy_trace.push_back(tri_energy_impl(tensor, with_singletons(parts),
                                                with_singletons(parts), with_singletons(parts)));

    int round = 0;
    while (true) {
        ++round;
        const int t = static_cast<int>(parts.size());
        auto audit = audit_all_triples(tensor, parts, eps, options.samples, seed,
                                       static_cast<std::uint64_t>(round));
        cert.audited_samples += audit.combinations;
        if (static_cast<double>(audit.witnessed.size()) <= eps * t * t * t) {
            cert.complete = true;
            break;
        }
        if (round >= max_rounds) {
            cert.complete = false;
            break;
        }

        // pick witness cuts: distinct-index triples only, strongest
        // deviation first, at most four cuts per part
        auto witnessed = audit.witnessed;
        std::stable_sort(witnessed.begin(), witnessed.end(), [](const auto& a, const auto& b) {
            const double da = std::abs(a.second.witness_density - a.second.base_density);
            const double db = std::abs(b.second.witness_density - b.second.base_density);
            return da > db;
        });
        std::vector<std::vector<std::vector<int>>> cuts(static_cast<std::size_t>(t));
        std::vector<std::array<int, 3>> applied;
        constexpr std::size_t kMaxCutsPerPart = 4;
        for (const auto& [triple, witness] : witnessed) {
            const int i = triple[0] - 1;
            const int j = triple[1] - 1;
            const int k = triple[2] - 1;
            if (i == j || j == k || i == k) continue;
            const bool room = cuts[static_cast<std::size_t>(i)].size() < kMaxCutsPerPart &&
                              cuts[static_cast<std::size_t>(j)].size() < kMaxCutsPerPart &&
                              cuts[static_cast<std::size_t>(k)].size() < kMaxCutsPerPart;
            if (!room) continue;
            for (int pos = 0; pos < 3; ++pos) {
                auto cut = witness.witness_sets[static_cast<std::size_t>(pos)];
                std::sort(cut.begin(), cut.end());
                cuts[static_cast<std::size_t>(triple[static_cast<std::size_t>(pos)] - 1)]
                    .push_back(std::move(cut));
            }
            applied.push_back(triple);
        }
        if (applied.empty()) {
            cert.complete = false;  // only repeated-index triples were witnessed
            break;
        }

        std::vector<std::vector<std::vector<int>>> pieces(static_cast<std::size_t>(t));
        for (int i = 0; i < t; ++i) {
            auto& part_cuts = cuts[static_cast<std::size_t>(i)];
            std::sort(part_cuts.begin(), part_cuts.end());
            part_cuts.erase(std::unique(part_cuts.begin(), part_cuts.end()), part_cuts.end());
            pieces[static_cast<std::size_t>(i)] = {parts[static_cast<std::size_t>(i)]};
            for (const auto& cut : part_cuts) {
                apply_cut(pieces[static_cast<std::size_t>(i)], cut);
            }
        }

        for (const auto& triple : applied) {
            RefinementIncrement inc;
            inc.triple = triple;
            const auto& c1 = pieces[static_cast<std::size_t>(triple[0] - 1)];
            const auto& c2 = pieces[static_cast<std::size_t>(triple[1] - 1)];
            const auto& c3 = pieces[static_cast<std::size_t>(triple[2] - 1)];
            const auto& u1 = parts[static_cast<std::size_t>(triple[0] - 1)];
            const auto& u2 = parts[static_cast<std::size_t>(triple[1] - 1)];
            const auto& u3 = parts[static_cast<std::size_t>(triple[2] - 1)];
            inc.before = q_of_triple(tensor, {u1}, {u2}, {u3});
            inc.after = q_of_triple(tensor, c1, c2, c3);
            inc.required = std::pow(eps, 5.0) * static_cast<double>(u1.size()) *
                           static_cast<double>(u2.size()) * static_cast<double>(u3.size()) /
                           (static_cast<double>(n) * n * n);
            cert.increments.push_back(inc);
        }

        // rebalance: chunk every piece into equal blocks, leftovers to V0
        std::size_t total_pieces = 0;
        for (const auto& per_part : pieces) total_pieces += per_part.size();
        const int t_target = std::min<int>(
            options.max_parts,
            std::max(t + 1, static_cast<int>(total_pieces)));
        int block = std::max(1, n / t_target);
        block = std::max(block, (n + options.max_parts - 1) / options.max_parts);
        std::vector<std::vector<int>> new_parts;
        std::vector<int> new_v0 = v0;
        for (const auto& per_part : pieces) {
            for (const auto& piece : per_part) {
                std::size_t pos = 0;
                while (piece.size() - pos >= static_cast<std::size_t>(block)) {
                    new_parts.emplace_back(piece.begin() + static_cast<std::ptrdiff_t>(pos),
                                           piece.begin() +
                                               static_cast<std::ptrdiff_t>(pos + block));
                    pos += static_cast<std::size_t>(block);
                }
                for (; pos < piece.size(); ++pos) new_v0.push_back(piece[pos]);
            }
        }
        if (new_parts.empty()) {
            cert.complete = false;  // refinement degenerated; stop rather than loop
            break;
        }
        parts = std::move(new_parts);
        v0 = std::move(new_v0);
        std::sort(v0.begin(), v0.end());
        cert.energy_trace.push_back(tri_energy_impl(tensor, with_singletons(parts),
                                                    with_singletons(parts),
                                                    with_singletons(parts)));
    }
    cert.rounds = round;

    // redistribute V0 round-robin, then audit the delivered partition
    for (std::size_t i = 0; i < v0.size(); ++i) {
        parts[i % parts.size()].push_back(v0[i]);
    }
    v0.clear();
    for (auto& part : parts) std::sort(part.begin(), part.end());
    std::stable_sort(parts.begin(), parts.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    cert.partition = Equipartition(n, parts, {});

    const int t = static_cast<int>(parts.size());
    auto final_audit =
        audit_all_triples(tensor, parts, eps, options.samples, seed, 0xf1a7u);
    cert.audited_samples += final_audit.combinations;
    for (auto& [triple, witness] : final_audit.witnessed) cert.irregular.push_back(witness);
    cert.meets_triple_bound =
        static_cast<double>(cert.irregular.size()) <= eps * t * t * t;
    cert.energy = tri_energy_impl(tensor, parts, parts, parts);
    return cert;
}

CleanResult clean(const Palette& p, const std::vector<std::vector<int>>& input_parts,
                  const std::vector<std::vector<int>>& models, double alpha) {
    auto parts = input_parts;  // membership checks below want sorted parts
    for (auto& part : parts) std::sort(part.begin(), part.end());
    check_partition(parts, p.color_count(), "clean");
    if (models.size() != parts.size()) {
        throw std::invalid_argument("clean: need one model set per part");
    }
    const int t = static_cast<int>(parts.size());
    for (int i = 0; i < t; ++i) {
        const auto& u = models[static_cast<std::size_t>(i)];
        if (u.empty()) throw std::invalid_argument("clean: empty model set");
        for (int z : u) {
            if (!std::binary_search(parts[static_cast<std::size_t>(i)].begin(),
                                    parts[static_cast<std::size_t>(i)].end(), z)) {
                throw std::invalid_argument("clean: model set not inside its part");
            }
        }
    }
    const double threshold = 2.0 * alpha / 9.0;
    const PatternTensor tensor(p);

    std::vector<int> class_of(static_cast<std::size_t>(p.color_count()) + 1, 0);
    for (int i = 0; i < t; ++i) {
        for (int z : parts[static_cast<std::size_t>(i)]) {
            class_of[static_cast<std::size_t>(z)] = i + 1;
        }
    }

    // R-membership per distinct index triple
    std::vector<Pattern> r_patterns;
    auto in_r = [&](int i, int j, int k) {
        const double du = tensor.density(models[static_cast<std::size_t>(i - 1)],
                                         models[static_cast<std::size_t>(j - 1)],
                                         models[static_cast<std::size_t>(k - 1)]);
        const double dv = tensor.density(parts[static_cast<std::size_t>(i - 1)],
                                         parts[static_cast<std::size_t>(j - 1)],
                                         parts[static_cast<std::size_t>(k - 1)]);
        return std::abs(du - dv) <= threshold && du > threshold;
    };
    std::vector<std::vector<std::vector<int>>> verdict(
        static_cast<std::size_t>(t),
        std::vector<std::vector<int>>(static_cast<std::size_t>(t),
                                      std::vector<int>(static_cast<std::size_t>(t), -1)));
    auto verdict_of = [&](int i, int j, int k) {
        auto& v = verdict[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]
                         [static_cast<std::size_t>(k - 1)];
        if (v < 0) v = in_r(i, j, k) ? 1 : 0;
        return v == 1;
    };
    for (int i = 1; i <= t; ++i)
        for (int j = 1; j <= t; ++j)
            for (int k = 1; k <= t; ++k) {
                if (i == j || j == k || i == k) continue;
                if (verdict_of(i, j, k)) r_patterns.push_back({i, j, k});
            }

    CleanResult out{Palette(t, r_patterns), Palette(), 0, {0, 0, 0}};
    std::vector<Pattern> kept;
    for (const auto& q : p.patterns()) {
        const int i = class_of[static_cast<std::size_t>(q[0])];
        const int j = class_of[static_cast<std::size_t>(q[1])];
        const int k = class_of[static_cast<std::size_t>(q[2])];
        if (i == j || j == k || i == k) {
            ++out.removed_by_bucket[0];
            continue;
        }
        if (out.reduced.contains({i, j, k})) {
            kept.push_back(q);
            continue;
        }
        const double du = tensor.density(models[static_cast<std::size_t>(i - 1)],
                                         models[static_cast<std::size_t>(j - 1)],
                                         models[static_cast<std::size_t>(k - 1)]);
        const double dv = tensor.density(parts[static_cast<std::size_t>(i - 1)],
                                         parts[static_cast<std::size_t>(j - 1)],
                                         parts[static_cast<std::size_t>(k - 1)]);
        if (std::abs(du - dv) > threshold) {
            ++out.removed_by_bucket[1];
        } else {
            ++out.removed_by_bucket[2];  // du <= threshold
        }
    }
    out.cleaned = Palette(p.color_count(), std::move(kept));
    out.removed = p.pattern_count() - out.cleaned.pattern_count();
    return out;
}

ModelSetSample sample_model_sets(const Palette& p,
                                 const std::vector<std::vector<int>>& input_coarse,
                                 const std::vector<std::vector<std::vector<int>>>& cells,
                                 double eps, int audit_samples, std::uint64_t seed,
                                 int max_retries) {
    auto coarse = input_coarse;
    for (auto& part : coarse) std::sort(part.begin(), part.end());
    check_partition(coarse, p.color_count(), "sample_model_sets");
    if (cells.size() != coarse.size()) {
        throw std::invalid_argument("sample_model_sets: need one cell list per coarse part");
    }
    const int t = static_cast<int>(coarse.size());
    for (int i = 0; i < t; ++i) {
        if (cells[static_cast<std::size_t>(i)].empty()) {
            throw std::invalid_argument("sample_model_sets: part with no refined cells");
        }
        for (const auto& cell : cells[static_cast<std::size_t>(i)]) {
            for (int z : cell) {
                if (!std::binary_search(coarse[static_cast<std::size_t>(i)].begin(),
                                        coarse[static_cast<std::size_t>(i)].end(), z)) {
                    throw std::invalid_argument(
                        "sample_model_sets: refinement cell escapes its coarse part");
                }
            }
        }
    }
    const PatternTensor tensor(p);
    Rng rng(seed);
    ModelSetSample best;
    int best_score = -1;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<std::vector<int>> u(static_cast<std::size_t>(t));
        Rng stream = rng.split(attempt);
        for (int i = 0; i < t; ++i) {
            const auto& list = cells[static_cast<std::size_t>(i)];
            u[static_cast<std::size_t>(i)] =
                list[stream.uniform_below(list.size())];
        }
        // target (iii): every ordered model triple looks eps-regular
        int regular_ok = 0;
        bool all_regular = true;
        for (int i = 0; i < t && all_regular; ++i)
            for (int j = 0; j < t && all_regular; ++j)
                for (int k = 0; k < t && all_regular; ++k) {
                    auto audit = sampled_audit(tensor, u[static_cast<std::size_t>(i)],
                                               u[static_cast<std::size_t>(j)],
                                               u[static_cast<std::size_t>(k)], eps,
                                               audit_samples,
                                               mix64(seed ^ static_cast<std::uint64_t>(
                                                                attempt * 1000003 + i * 1009 +
                                                                j * 101 + k)));
                    if (audit.witness_found) {
                        all_regular = false;
                    } else {
                        ++regular_ok;
                    }
                }
        // target (iv): all but eps t^3 model triples track the coarse densities
        int deviating = 0;
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < t; ++j)
                for (int k = 0; k < t; ++k) {
                    const double du = tensor.density(u[static_cast<std::size_t>(i)],
                                                     u[static_cast<std::size_t>(j)],
                                                     u[static_cast<std::size_t>(k)]);
                    const double dv = tensor.density(coarse[static_cast<std::size_t>(i)],
                                                     coarse[static_cast<std::size_t>(j)],
                                                     coarse[static_cast<std::size_t>(k)]);
                    if (std::abs(du - dv) >= eps) ++deviating;
                }
        const bool accuracy_ok = static_cast<double>(deviating) <= eps * t * t * t;
        const int score = regular_ok + (accuracy_ok ? t * t * t : 0);
        std::size_t min_size = u[0].size();
        for (const auto& ui : u) min_size = std::min(min_size, ui.size());
        if (score > best_score) {
            best_score = score;
            best.sets = u;
            best.retries_used = attempt + 1;
            best.min_fraction =
                static_cast<double>(min_size) / static_cast<double>(p.color_count());
        }
        if (all_regular && accuracy_ok) {
            best.sets = u;
            best.passed = true;
            best.retries_used = attempt + 1;
            best.min_fraction =
                static_cast<double>(min_size) / static_cast<double>(p.color_count());
            return best;
        }
    }
    return best;
}

}  // namespace paltk
