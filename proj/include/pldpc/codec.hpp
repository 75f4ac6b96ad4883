#ifndef PLDPC_CODEC_HPP
#define PLDPC_CODEC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "pldpc/gf2.hpp"
#include "pldpc/protograph.hpp"

namespace pldpc {

// One-time systematic form of H. Pivots are chosen right to left so the
// information set lands on the leading data columns of the AR4JA layout.
struct EncoderTables {
    std::size_t n_cols = 0;
    std::size_t k = 0;
    std::vector<std::uint32_t> info_cols;   // ascending, size k
    std::vector<std::uint32_t> parity_cols; // one per pivot row
    BitMatrix parity_gen;                   // rank x k over GF(2)
    std::size_t rank = 0;
    std::size_t deficiency = 0; // dependent check rows found during elimination
    std::vector<std::size_t> punctured_cols;
};

struct Codeword {
    std::vector<std::uint8_t> full;    // every column, punctured included
    std::vector<std::uint8_t> tx;      // transmitted positions in column order
    std::vector<std::uint8_t> message; // bits at the information positions
};

struct DecodeResult {
    std::vector<std::uint8_t> hard;
    bool converged = false;
    int iterations = 0;
};

using LlrVector = std::vector<double>;

EncoderTables build_encoder(const BitMatrix& h, std::vector<std::size_t> punctured_cols = {});
EncoderTables build_encoder(const QcParityCheck& h);

Codeword encode(const EncoderTables& tables, std::span<const std::uint8_t> message);

// LLR = 2 r a / sigma^2 for BPSK with known fading gain
double channel_llr(double r, double a, double sigma2);

// Sum-product decoding in the log domain, flooding schedule, early stop on
// a zero syndrome. Non-convergence is reported, not thrown.
DecodeResult bp_decode(const BitMatrix& h, const LlrVector& llr, int max_iter);
DecodeResult bp_decode(const QcParityCheck& h, const LlrVector& llr, int max_iter);

// Reusable message-passing workspace for tight simulation loops.
class BpDecoder {
public:
    explicit BpDecoder(const BitMatrix& h);
    DecodeResult decode(const LlrVector& llr, int max_iter) const;

private:
    std::size_t vars_, checks_;
    std::vector<std::uint32_t> edge_var;     // edge -> variable, grouped by check
    std::vector<std::uint32_t> check_offset; // checks_ + 1
    std::vector<std::uint32_t> var_edges;    // edge ids grouped by variable
    std::vector<std::uint32_t> var_offset;   // vars_ + 1
};

} // namespace pldpc

#endif
