#include "pldpc/codec.hpp"

#include <algorithm>
#include <cmath>

#include "pldpc/errors.hpp"

namespace pldpc {
namespace {

constexpr double kLlrClip = 30.0;      // magnitude cap inside check updates
constexpr double kTanhCap = 1.0 - 1e-12;

double clip(double x) { return std::clamp(x, -kLlrClip, kLlrClip); }

} // namespace

EncoderTables build_encoder(const BitMatrix& h, std::vector<std::size_t> punctured_cols) {
    if (h.rows() == 0 || h.cols() == 0 || h.ones() == 0)
        throw InvalidInput("cannot build an encoder for an empty matrix");

    const std::size_t rows = h.rows(), cols = h.cols();
    BitMatrix work = h;
    std::vector<bool> row_used(rows, false);
    std::vector<std::int64_t> pivot_row_of_col(cols, -1);
    std::vector<std::uint32_t> pivot_rows, pivot_cols;

    // scan columns right to left; Jordan elimination leaves each pivot
    // column with a single 1
    for (std::size_t step = 0; step < cols; ++step) {
        std::size_t c = cols - 1 - step;
        std::size_t r = rows;
        for (std::size_t cand = 0; cand < rows; ++cand)
            if (!row_used[cand] && work.get(cand, c)) {
                r = cand;
                break;
            }
        if (r == rows)
            continue;
        row_used[r] = true;
        pivot_row_of_col[c] = static_cast<std::int64_t>(r);
        pivot_rows.push_back(static_cast<std::uint32_t>(r));
        pivot_cols.push_back(static_cast<std::uint32_t>(c));
        for (std::size_t other = 0; other < rows; ++other)
            if (other != r && work.get(other, c))
                work.xor_row_into(r, other);
        if (pivot_rows.size() == rows)
            break;
    }

    EncoderTables t;
    t.n_cols = cols;
    t.rank = pivot_rows.size();
    t.deficiency = rows - t.rank;
    t.punctured_cols = std::move(punctured_cols);
    for (std::size_t c = 0; c < cols; ++c)
        if (pivot_row_of_col[c] < 0)
            t.info_cols.push_back(static_cast<std::uint32_t>(c));
    t.k = t.info_cols.size();
    t.parity_cols = pivot_cols;

    t.parity_gen = BitMatrix(t.rank, t.k);
    for (std::size_t p = 0; p < t.rank; ++p)
        for (std::size_t i = 0; i < t.k; ++i)
            if (work.get(pivot_rows[p], t.info_cols[i]))
                t.parity_gen.set(p, i, true);
    return t;
}

EncoderTables build_encoder(const QcParityCheck& h) {
    return build_encoder(h.h, h.punctured_cols);
}

Codeword encode(const EncoderTables& tables, std::span<const std::uint8_t> message) {
    if (message.size() != tables.k)
        throw InvalidInput("message length " + std::to_string(message.size()) +
                           " does not match dimension " + std::to_string(tables.k));
    Codeword cw;
    cw.full.assign(tables.n_cols, 0);
    cw.message.assign(message.begin(), message.end());
    for (std::size_t i = 0; i < tables.k; ++i)
        cw.full[tables.info_cols[i]] = message[i] & 1;
    for (std::size_t p = 0; p < tables.rank; ++p)
        cw.full[tables.parity_cols[p]] =
            static_cast<std::uint8_t>(tables.parity_gen.row_dot(p, cw.message));

    cw.tx.reserve(tables.n_cols - tables.punctured_cols.size());
    std::size_t next_punct = 0;
    for (std::size_t c = 0; c < tables.n_cols; ++c) {
        if (next_punct < tables.punctured_cols.size() && tables.punctured_cols[next_punct] == c) {
            ++next_punct;
            continue;
        }
        cw.tx.push_back(cw.full[c]);
    }
    return cw;
}

double channel_llr(double r, double a, double sigma2) {
    if (sigma2 <= 0.0)
        throw InvalidInput("noise variance must be positive");
    return 2.0 * r * a / sigma2;
}

BpDecoder::BpDecoder(const BitMatrix& h) : vars_(h.cols()), checks_(h.rows()) {
    check_offset.assign(checks_ + 1, 0);
    for (std::size_t r = 0; r < checks_; ++r)
        for (std::size_t c = 0; c < vars_; ++c)
            if (h.get(r, c))
                edge_var.push_back(static_cast<std::uint32_t>(c));
    std::size_t e = 0;
    for (std::size_t r = 0; r < checks_; ++r) {
        check_offset[r] = static_cast<std::uint32_t>(e);
        e += h.row_weight(r);
    }
    check_offset[checks_] = static_cast<std::uint32_t>(edge_var.size());

    var_offset.assign(vars_ + 1, 0);
    for (std::uint32_t v : edge_var)
        ++var_offset[v + 1];
    for (std::size_t v = 0; v < vars_; ++v)
        var_offset[v + 1] += var_offset[v];
    var_edges.resize(edge_var.size());
    std::vector<std::uint32_t> cursor(var_offset.begin(), var_offset.end() - 1);
    for (std::uint32_t eid = 0; eid < edge_var.size(); ++eid)
        var_edges[cursor[edge_var[eid]]++] = eid;
}

DecodeResult BpDecoder::decode(const LlrVector& llr, int max_iter) const {
    if (llr.size() != vars_)
        throw InvalidInput("LLR length does not match the code");
    if (max_iter < 1)
        throw InvalidInput("max_iter must be at least 1");

    DecodeResult res;
    res.hard.resize(vars_);
    auto decide = [&](const std::vector<double>& posterior) {
        for (std::size_t v = 0; v < vars_; ++v)
            res.hard[v] = posterior[v] < 0.0 ? 1 : 0; // exact zero decides 0
    };
    auto syndrome_ok = [&]() {
        for (std::size_t r = 0; r < checks_; ++r) {
            unsigned parity = 0;
            for (std::uint32_t e = check_offset[r]; e < check_offset[r + 1]; ++e)
                parity ^= res.hard[edge_var[e]];
            if (parity)
                return false;
        }
        return true;
    };

    std::vector<double> posterior(llr.begin(), llr.end());
    decide(posterior);
    if (syndrome_ok()) {
        res.converged = true;
        res.iterations = 0;
        return res;
    }

    const std::size_t n_edges = edge_var.size();
    std::vector<double> to_check(n_edges);  // variable -> check
    std::vector<double> to_var(n_edges, 0); // check -> variable
    std::vector<double> tanh_half(n_edges);
    for (std::size_t e = 0; e < n_edges; ++e)
        to_check[e] = llr[edge_var[e]];

    for (int iter = 1; iter <= max_iter; ++iter) {
        for (std::size_t r = 0; r < checks_; ++r) {
            const std::uint32_t begin = check_offset[r], end = check_offset[r + 1];
            for (std::uint32_t e = begin; e < end; ++e)
                tanh_half[e] = std::tanh(clip(to_check[e]) * 0.5);
            // exclude-self products, forward then backward; safe with zeros
            double acc = 1.0;
            for (std::uint32_t e = begin; e < end; ++e) {
                to_var[e] = acc;
                acc *= tanh_half[e];
            }
            acc = 1.0;
            for (std::uint32_t e = end; e-- > begin;) {
                double prod = std::clamp(to_var[e] * acc, -kTanhCap, kTanhCap);
                to_var[e] = 2.0 * std::atanh(prod);
                acc *= tanh_half[e];
            }
        }

        for (std::size_t v = 0; v < vars_; ++v) {
            double sum = llr[v];
            for (std::uint32_t i = var_offset[v]; i < var_offset[v + 1]; ++i)
                sum += to_var[var_edges[i]];
            posterior[v] = sum;
        }
        for (std::size_t e = 0; e < n_edges; ++e)
            to_check[e] = posterior[edge_var[e]] - to_var[e];

        decide(posterior);
        res.iterations = iter;
        if (syndrome_ok()) {
            res.converged = true;
            return res;
        }
    }
    res.converged = false;
    return res;
}

DecodeResult bp_decode(const BitMatrix& h, const LlrVector& llr, int max_iter) {
    return BpDecoder(h).decode(llr, max_iter);
}

DecodeResult bp_decode(const QcParityCheck& h, const LlrVector& llr, int max_iter) {
    return bp_decode(h.h, llr, max_iter);
}

} // namespace pldpc
