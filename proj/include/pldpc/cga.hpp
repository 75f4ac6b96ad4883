#ifndef PLDPC_CGA_HPP
#define PLDPC_CGA_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pldpc/protograph.hpp"
#include "pldpc/rng.hpp"

namespace pldpc {

struct CgaParams {
    std::uint32_t virtual_population = 255; // probability step is 1/n
    std::uint64_t max_evaluations = 200000; // total fitness budget, all restarts
    std::uint32_t restarts = 4;
    int girth_cap = 12;          // girths beyond the cap compare equal
    std::uint64_t seed = 0;
    double init_perturbation = 0.0; // keyed offset applied to the 0.5 start

    void validate() const;
};

// Lexicographic objective: girth first, fewer shortest cycles on ties.
struct Fitness {
    int girth = 0;
    std::int64_t neg_multiplicity = 0;
    auto operator<=>(const Fitness&) const = default;
};

struct EvalLogRow {
    std::uint64_t eval_index = 0;
    int girth = 0;
    std::uint64_t multiplicity = 0;
    int best_girth = 0;
};
using EvalLogger = std::function<void(const EvalLogRow&)>;

// Compact GA state over L bits. Probabilities are kept as integer
// numerators over 2n, so the 0.5 start, the [0, 1] bounds and the exact
// 1/n update step hold without rounding.
class CompactGa {
public:
    CompactGa(std::size_t bit_count, std::uint32_t virtual_population);

    void perturb(double magnitude, Rng& rng);
    void sample(std::vector<std::uint8_t>& genome, Rng& rng) const;
    void update(const std::vector<std::uint8_t>& winner, const std::vector<std::uint8_t>& loser);
    bool converged() const;

    std::size_t bit_count() const { return counts_.size(); }
    // p_i = counts()[i] / (2 * virtual_population)
    const std::vector<std::uint32_t>& counts() const { return counts_; }
    std::uint32_t denominator() const { return 2 * n_; }

private:
    std::uint32_t n_;
    std::vector<std::uint32_t> counts_;
};

// Collision-free all-zero baseline: shift k for the k-th parallel copy.
ShiftAssignment zero_seed(const ProtoMatrix& p, std::uint32_t v);

// Decode a genome (bits_per_shift bits per edge copy, values taken mod v)
// into a valid assignment; colliding parallel shifts are bumped upward.
ShiftAssignment decode_genome(const std::vector<std::uint8_t>& genome, const ProtoMatrix& p,
                              std::uint32_t v);

// Girth-maximizing search over circulant shift assignments. Deterministic
// for fixed (p, v, params); the reported fitness is the best over every
// evaluated genome, the zero baseline included.
std::pair<ShiftAssignment, Fitness> optimize_shifts(const ProtoMatrix& p, std::uint32_t v,
                                                    const CgaParams& params,
                                                    const EvalLogger& log = {});

// Keyed construction pipeline: resolve the protograph and lifting order
// from (N, R), optimize shifts from the seed, lift. Rates outside the
// appendable family go through truncate_and_reoptimize.
QcParityCheck construct(const CodeSpec& spec);
QcParityCheck construct(const CodeSpec& spec, const CgaParams& base_params,
                        const EvalLogger& log = {});

// Remove trailing transmitted columns until the rate is as close to
// target_r as whole columns allow, then re-optimize the surviving shifts
// against the truncated matrix.
QcParityCheck truncate_and_reoptimize(const QcParityCheck& h, const Rational& target_r,
                                      const CgaParams& params, const EvalLogger& log = {});

} // namespace pldpc

#endif
