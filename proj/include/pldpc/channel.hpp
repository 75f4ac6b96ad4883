#ifndef PLDPC_CHANNEL_HPP
#define PLDPC_CHANNEL_HPP

#include <cstdint>

#include "pldpc/protograph.hpp"
#include "pldpc/rng.hpp"

namespace pldpc {

// bit 0 -> +1, bit 1 -> -1; fixed mapping shared with the LLR sign in codec
constexpr double bpsk_symbol(int bit) { return bit ? -1.0 : 1.0; }

struct DtbChannelParams {
    std::uint32_t m = 1;     // cooperating transmit nodes
    double ebn0_db = 0.0;    // energy per information bit over N0
    Rational rate{1, 1};     // 1 for uncoded; K/N_tx for coded transmissions
    int bits_per_symbol = 1; // BPSK
};

struct ChannelSample {
    double r = 0.0;      // received statistic (real dimension)
    double gain = 0.0;   // effective amplitude seen by the receiver
    double sigma2 = 0.0; // noise variance per real dimension
};

struct NoiseScale {
    double es = 1.0;     // total symbol energy across all nodes
    double sigma2 = 0.5;
};

// Effective beamforming amplitude g = (1/sqrt(M)) * sum |a_i| with
// a_i ~ CN(0,1) i.i.d. Ideal synchronization pre-rotates each node by the
// negated channel phase, and the 1/sqrt(M) amplitude scaling keeps the
// total transmit power independent of M.
double dtb_gain(std::uint32_t m, Rng& rng);

// r = m g + n over one coherently combined real dimension
ChannelSample transmit_bpsk(int bit, double gain, double es, double sigma2, Rng& rng);

// With es normalized to 1: sigma2 = 1 / (2 * rate * bits_per_symbol * 10^(ebn0/10)).
// rate = K/N_tx already charges punctured symbols to the information bits.
NoiseScale ebn0_to_sigma2(double ebn0_db, double rate, int bits_per_symbol);
NoiseScale ebn0_to_sigma2(const DtbChannelParams& params);

} // namespace pldpc

#endif
