#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "paltk/core.hpp"

namespace paltk {

/// Order-sensitive density of a palette on an ordered triple of color sets:
/// |(W1 x W2 x W3) ∩ P| / (|W1||W2||W3|). All three sets must be nonempty.
double triple_density(const Palette& p, const std::vector<int>& w1, const std::vector<int>& w2,
                      const std::vector<int>& w3);

struct IrregularityWitness {
    std::array<int, 3> triple = {0, 0, 0};  // part indices (1-based), 0 when free-standing
    std::array<std::vector<int>, 3> witness_sets;
    double base_density = 0.0;
    double witness_density = 0.0;
};

enum class AuditMode { kExhaustive, kSampled };

struct AuditResult {
    bool witness_found = false;
    IrregularityWitness witness;  // re-verified before returning
    AuditMode mode = AuditMode::kSampled;
    long long combinations_checked = 0;
};

/// Looks for subsets W_i of V_i with |W_i| >= eps|V_i| whose density
/// deviates from d(V1,V2,V3) by more than eps. Exhaustive (hence definitive
/// in both directions) when every part has at most 12 colors; otherwise
/// `samples` random subset draws of size ceil(eps|V_i|) plus a sweep of
/// degree-sorted prefix subsets, so "no witness" is only empirical evidence.
/// Any returned witness is re-verified arithmetically.
AuditResult eps_regular_audit(const Palette& p, const std::vector<int>& v1,
                              const std::vector<int>& v2, const std::vector<int>& v3,
                              double eps, int samples, std::uint64_t seed,
                              bool allow_exhaustive = true);

/// Confirms a claimed witness by recomputing both densities from scratch.
bool verify_witness(const Palette& p, const std::vector<int>& v1, const std::vector<int>& v2,
                    const std::vector<int>& v3, const IrregularityWitness& w, double eps);

/// Energy of one ordered partition triple:
/// sum over cells of (|A1||A2||A3| / n^3) d^2(A1,A2,A3). Partitions must
/// cover [1..c(P)] disjointly (pass Equipartition::expanded() to treat the
/// exceptional set as singletons).
double tri_energy(const Palette& p, const std::vector<std::vector<int>>& a1,
                  const std::vector<std::vector<int>>& a2,
                  const std::vector<std::vector<int>>& a3);

double energy(const Palette& p, const std::vector<std::vector<int>>& partition);

struct RefinementIncrement {
    std::array<int, 3> triple;
    double before = 0.0;      // q on the unrefined triple
    double after = 0.0;       // q across the refined cells of the same triple
    double required = 0.0;    // eps^5 |V1||V2||V3| / n^3
};

struct RegularityCertificate {
    Equipartition partition;  // final; exceptional colors redistributed
    double epsilon = 0.0;
    std::vector<IrregularityWitness> irregular;  // audit of the final partition
    long long audited_samples = 0;
    double energy = 0.0;
    std::vector<double> energy_trace;  // one entry per round, non-decreasing
    std::vector<RefinementIncrement> increments;  // per fully applied witness cut
    int rounds = 0;
    bool complete = true;            // false when the iteration cap was hit
    bool meets_triple_bound = true;  // final audit found <= eps * t^3 witnesses
};

struct RegularizeOptions {
    int samples = 40;    // random draws per triple audit
    int max_parts = 64;  // cap on the equipartition order
    int max_rounds = 0;  // 0: use ceil(16 / eps^6) + 1
};

/// Iterated refinement: audit all ordered part triples; while more than
/// eps t^3 carry verified witnesses, refine the witnessed parts by their
/// witness cuts, rebalance into an equipartition (leftovers to V0), and
/// re-audit. V0 is redistributed round-robin at the end and the delivered
/// partition is audited once more for the certificate.
RegularityCertificate regularize(const Palette& p, double eps, int m, std::uint64_t seed,
                                 const RegularizeOptions& options = {});

struct CleanResult {
    Palette reduced;  // R on [t]
    Palette cleaned;  // Q, a subpalette of the input contained in a blow-up of R
    long long removed = 0;
    // patterns deleted because (1) classes not pairwise distinct, (2) model
    // density far from class density, (3) model density below threshold
    std::array<long long, 3> removed_by_bucket = {0, 0, 0};
};

/// Cleaning step: R keeps the index triples with pairwise
/// distinct classes whose model densities track the class densities
/// (|d(U)-d(V)| <= 2a/9) and clear the threshold (d(U) > 2a/9); Q drops
/// every pattern whose class triple left R.
CleanResult clean(const Palette& p, const std::vector<std::vector<int>>& parts,
                  const std::vector<std::vector<int>>& models, double alpha);

struct ModelSetSample {
    std::vector<std::vector<int>> sets;  // U_i, one refined cell per coarse part
    bool passed = false;                 // audit targets met within the retry budget
    int retries_used = 0;
    double min_fraction = 0.0;           // min |U_i| / n achieved
};

/// Picks one refined cell per coarse part uniformly at random, retrying (up
/// to max_retries) until all ordered model triples look eps-regular under a
/// sampled audit and all but eps t^3 of them track the coarse densities;
/// returns the best attempt flagged when none passes.
ModelSetSample sample_model_sets(const Palette& p, const std::vector<std::vector<int>>& coarse,
                                 const std::vector<std::vector<std::vector<int>>>& cells,
                                 double eps, int audit_samples, std::uint64_t seed,
                                 int max_retries = 100);

}  // namespace paltk
