#include "pldpc/cga.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "pldpc/errors.hpp"
#include "pldpc/tanner.hpp"

namespace pldpc {
namespace {

std::uint32_t bits_per_shift(std::uint32_t v) {
    return std::bit_width(v - 1u);
}

Fitness fitness_of(const GirthReport& report) {
    if (report.acyclic)
        return Fitness{std::numeric_limits<int>::max() / 2, 0};
    return Fitness{report.girth, -static_cast<std::int64_t>(report.multiplicity)};
}

struct SearchProblem {
    const ProtoMatrix& proto;
    std::uint32_t v;
    std::function<Fitness(const ShiftAssignment&)> evaluate;
};

// cGA main loop: pairwise tournaments against the probability model, best
// genome ever seen kept aside (the baseline counts as evaluation zero).
std::pair<ShiftAssignment, Fitness> run_search(const SearchProblem& prob, const CgaParams& params,
                                               const EvalLogger& log) {
    params.validate();
    for (std::size_t r = 0; r < prob.proto.rows; ++r)
        for (std::size_t c = 0; c < prob.proto.cols; ++c)
            if (prob.proto.at(r, c) > prob.v)
                throw ConstructionFailure("cell multiplicity " + std::to_string(prob.proto.at(r, c)) +
                                          " exceeds lifting order " + std::to_string(prob.v) +
                                          ": no collision-free assignment exists");

    const std::size_t genome_bits = prob.proto.edge_count() * bits_per_shift(prob.v);
    Rng rng(params.seed);
    std::uint64_t evals = 0;

    auto evaluate = [&](const ShiftAssignment& a, int best_girth) {
        Fitness f = prob.evaluate(a);
        if (log)
            log(EvalLogRow{evals, f.girth, static_cast<std::uint64_t>(-f.neg_multiplicity),
                           std::max(best_girth, f.girth)});
        ++evals;
        return f;
    };

    ShiftAssignment best = zero_seed(prob.proto, prob.v);
    Fitness best_fit = evaluate(best, 0);

    std::vector<std::uint8_t> ga(genome_bits), gb(genome_bits);
    const std::uint64_t budget = params.max_evaluations;
    const std::uint64_t per_restart = std::max<std::uint64_t>(2, budget / params.restarts);

    for (std::uint32_t restart = 0; restart < params.restarts && evals + 2 <= budget; ++restart) {
        CompactGa model(genome_bits, params.virtual_population);
        if (params.init_perturbation > 0.0)
            model.perturb(params.init_perturbation, rng);
        const std::uint64_t restart_end = std::min(budget, evals + per_restart);
        while (evals + 2 <= restart_end && !model.converged()) {
            model.sample(ga, rng);
            model.sample(gb, rng);
            ShiftAssignment sa = decode_genome(ga, prob.proto, prob.v);
            ShiftAssignment sb = decode_genome(gb, prob.proto, prob.v);
            Fitness fa = evaluate(sa, best_fit.girth);
            Fitness fb = evaluate(sb, best_fit.girth);

            if (fa > best_fit) {
                best_fit = fa;
                best = sa;
            }
            if (fb > best_fit) {
                best_fit = fb;
                best = sb;
            }
            if (fa >= fb)
                model.update(ga, gb);
            else
                model.update(gb, ga);
        }
    }
    return {best, best_fit};
}

CgaParams derived_params(const CgaParams& base, std::uint64_t salt, std::uint64_t budget) {
    CgaParams p = base;
    std::uint64_t state = base.seed ^ salt;
    p.seed = splitmix64(state);
    p.max_evaluations = budget;
    return p;
}

} // namespace

void CgaParams::validate() const {
    if (virtual_population < 2 || virtual_population > 1000000)
        throw InvalidInput("virtual population must lie in [2, 1000000]");
    if (max_evaluations < 2)
        throw InvalidInput("evaluation budget must be at least 2");
    if (restarts < 1)
        throw InvalidInput("at least one restart required");
    if (girth_cap < 4 || girth_cap % 2 != 0)
        throw InvalidInput("girth cap must be an even value >= 4");
    if (init_perturbation < 0.0 || init_perturbation >= 0.5)
        throw InvalidInput("initial perturbation must lie in [0, 0.5)");
}

CompactGa::CompactGa(std::size_t bit_count, std::uint32_t virtual_population)
    : n_(virtual_population), counts_(bit_count, virtual_population) {}

void CompactGa::perturb(double magnitude, Rng& rng) {
    const auto span = static_cast<std::int64_t>(magnitude * 2 * n_);
    for (auto& c : counts_) {
        std::int64_t offset = static_cast<std::int64_t>(rng.below(static_cast<std::uint32_t>(2 * span + 1))) - span;
        std::int64_t moved = static_cast<std::int64_t>(c) + offset;
        c = static_cast<std::uint32_t>(std::clamp<std::int64_t>(moved, 0, 2 * n_));
    }
}

void CompactGa::sample(std::vector<std::uint8_t>& genome, Rng& rng) const {
    genome.resize(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i)
        genome[i] = rng.below(2 * n_) < counts_[i] ? 1 : 0;
}

void CompactGa::update(const std::vector<std::uint8_t>& winner, const std::vector<std::uint8_t>& loser) {
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (winner[i] == loser[i])
            continue;
        if (winner[i]) {
            if (counts_[i] <= 2 * n_ - 2)
                counts_[i] += 2; // +1/n
            else
                counts_[i] = 2 * n_;
        } else {
            counts_[i] = counts_[i] >= 2 ? counts_[i] - 2 : 0;
        }
    }
}

bool CompactGa::converged() const {
    for (std::uint32_t c : counts_)
        if (c != 0 && c != 2 * n_)
            return false;
    return true;
}

ShiftAssignment zero_seed(const ProtoMatrix& p, std::uint32_t v) {
    ShiftAssignment a = ShiftAssignment::make(p.rows, p.cols, v);
    for (std::size_t r = 0; r < p.rows; ++r)
        for (std::size_t c = 0; c < p.cols; ++c)
            for (std::uint32_t k = 0; k < p.at(r, c); ++k)
                a.cell(r, c).push_back(EdgePerm::of_shift(k % v));
    return a;
}

ShiftAssignment decode_genome(const std::vector<std::uint8_t>& genome, const ProtoMatrix& p,
                              std::uint32_t v) {
    const std::uint32_t width = bits_per_shift(v);
    ShiftAssignment a = ShiftAssignment::make(p.rows, p.cols, v);
    std::size_t pos = 0;
    std::vector<bool> used(v);
    for (std::size_t r = 0; r < p.rows; ++r) {
        for (std::size_t c = 0; c < p.cols; ++c) {
            const std::uint32_t copies = p.at(r, c);
            if (copies == 0)
                continue;
            std::fill(used.begin(), used.end(), false);
            for (std::uint32_t k = 0; k < copies; ++k) {
                std::uint32_t value = 0;
                for (std::uint32_t b = 0; b < width; ++b)
                    value = (value << 1) | genome[pos++];
                value %= v;
                while (used[value])
                    value = (value + 1) % v; // bump colliding parallel edges
                used[value] = true;
                a.cell(r, c).push_back(EdgePerm::of_shift(value));
            }
        }
    }
    return a;
}

std::pair<ShiftAssignment, Fitness> optimize_shifts(const ProtoMatrix& p, std::uint32_t v,
                                                    const CgaParams& params, const EvalLogger& log) {
    if (v < 2)
        throw InvalidInput("lifting order must be at least 2 for shift optimization");
    p.validate_structure();
    SearchProblem prob{p, v,
                       [&p, v, &params](const ShiftAssignment& a) {
                           return fitness_of(qc_girth(p, a, params.girth_cap));
                       }};
    return run_search(prob, params, log);
}

QcParityCheck construct(const CodeSpec& spec) {
    return construct(spec, CgaParams{});
}

QcParityCheck construct(const CodeSpec& spec, const CgaParams& base_params, const EvalLogger& log) {
    if (spec.rate.num <= 0 || !spec.rate.less_than(Rational(1, 1)))
        throw InvalidSpec("code rate must lie in (0, 1)");
    if (spec.n == 0)
        throw InvalidSpec("block-length must be positive");

    CgaParams params = base_params;
    params.seed = spec.seed;
    if (spec.girth_target)
        params.girth_cap = std::max(params.girth_cap, *spec.girth_target);

    ProtoMatrix base = ar4ja_base();
    ExtensionTemplate ext = ar4ja_extension();

    if (rate_in_append_family(spec.rate)) {
        std::size_t n_r = additional_nodes_for_rate(spec.rate);
        ProtoMatrix proto = extend_for_rate(base, spec.rate, ext);
        LiftOrder order = lifting_order(spec.n, n_r);
        if (order.v < 2)
            throw InvalidSpec("unsupported (N, R): lifting order below 2");
        auto [shifts, fit] = optimize_shifts(proto, order.v, params, log);
        (void)fit;
        return lift(proto, shifts);
    }

    // off-family rate: build the next family rate above the target at a
    // lifting order sized so the truncated length comes out near N, then
    // cut columns down to the target rate
    std::size_t n_src = 0;
    if (!spec.rate.less_than(Rational(1, 3)))
        n_src = additional_nodes_for_rate(spec.rate) + 1;
    const std::int64_t a = spec.rate.num, b = spec.rate.den;
    // truncated length is 2*b*v/(b-a) independent of the source rate
    std::size_t v = static_cast<std::size_t>((static_cast<std::int64_t>(spec.n) * (b - a)) / (2 * b));
    if (v < 2)
        throw InvalidSpec("unsupported (N, R): lifting order below 2");

    Rational source_rate(static_cast<std::int64_t>(n_src) + 1, static_cast<std::int64_t>(n_src) + 3);
    ProtoMatrix proto = extend_for_rate(base, source_rate, ext);
    auto [shifts, fit] = optimize_shifts(proto, static_cast<std::uint32_t>(v), params, log);
    (void)fit;
    QcParityCheck source = lift(proto, shifts);

    CgaParams trunc_params =
        derived_params(params, 0x74727563ULL, std::max<std::uint64_t>(1000, params.max_evaluations / 50));
    return truncate_and_reoptimize(source, spec.rate, trunc_params, log);
}

QcParityCheck truncate_and_reoptimize(const QcParityCheck& h, const Rational& target_r,
                                      const CgaParams& params, const EvalLogger& log) {
    if (target_r.num <= 0)
        throw UnsupportedRate("target rate must be positive");
    Rational current = h.achieved_rate();
    if (current == target_r)
        return h;
    if (current.less_than(target_r))
        throw UnsupportedRate("target rate " + target_r.str() + " above source rate " + current.str());

    // rate after removing q transmitted columns is (k - q)/(n_tx - q);
    // minimize |b(k - q) - a(n_tx - q)| over whole columns
    const std::int64_t a = target_r.num, b = target_r.den;
    const auto k0 = static_cast<std::int64_t>(h.k);
    const auto ntx0 = static_cast<std::int64_t>(h.n_tx);
    const std::int64_t numer = b * k0 - a * ntx0;
    const std::int64_t denom = b - a;
    std::int64_t q_best = -1;
    std::int64_t err_best = 0;
    for (std::int64_t q : {numer / denom, numer / denom + 1}) {
        q = std::clamp<std::int64_t>(q, 0, k0 - 1);
        std::int64_t err = std::abs(b * (k0 - q) - a * (ntx0 - q));
        if (q_best < 0 || err < err_best || (err == err_best && q < q_best)) {
            q_best = q;
            err_best = err;
        }
    }
    if (q_best <= 0)
        return h;

    QcParityCheck seeded = truncate_columns(h, static_cast<std::size_t>(q_best));
    const ProtoMatrix view = seeded.proto;
    const std::size_t partial = seeded.cols_truncated;

    auto truncated_girth = [&view, partial, &params](const ShiftAssignment& shifts) {
        QcParityCheck lifted = lift(view, shifts);
        QcParityCheck cut = partial ? truncate_columns(lifted, partial) : lifted;
        return fitness_of(girth_up_to(from_parity_check(cut.h), params.girth_cap));
    };

    SearchProblem prob{view, seeded.v, truncated_girth};
    auto [shifts, fit] = run_search(prob, params, log);

    // the inherited source shifts are a strong candidate; keep them if the
    // search did not beat them
    Fitness inherited = truncated_girth(seeded.structure);
    if (inherited >= fit)
        return seeded;
    QcParityCheck out = lift(view, shifts);
    return partial ? truncate_columns(out, partial) : out;
}

} // namespace pldpc
