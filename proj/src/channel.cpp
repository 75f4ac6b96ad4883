#include "pldpc/channel.hpp"

#include <cmath>

#include "pldpc/errors.hpp"

namespace pldpc {

double dtb_gain(std::uint32_t m, Rng& rng) {
    if (m < 1)
        throw InvalidInput("at least one transmit node required");
    const double component_sd = std::sqrt(0.5); // CN(0,1): each real part N(0, 1/2)
    double sum = 0.0;
    for (std::uint32_t i = 0; i < m; ++i) {
        double re = component_sd * rng.gaussian();
        double im = component_sd * rng.gaussian();
        sum += std::sqrt(re * re + im * im);
    }
    return sum / std::sqrt(static_cast<double>(m));
}

ChannelSample transmit_bpsk(int bit, double gain, double es, double sigma2, Rng& rng) {
    if (es <= 0.0 || sigma2 <= 0.0)
        throw InvalidInput("symbol energy and noise variance must be positive");
    double symbol = bpsk_symbol(bit) * std::sqrt(es);
    double noise = std::sqrt(sigma2) * rng.gaussian();
    return ChannelSample{symbol * gain + noise, gain, sigma2};
}

NoiseScale ebn0_to_sigma2(double ebn0_db, double rate, int bits_per_symbol) {
    if (rate <= 0.0 || rate > 1.0)
        throw InvalidInput("rate must lie in (0, 1]");
    if (bits_per_symbol < 1)
        throw InvalidInput("bits per symbol must be positive");
    double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    return NoiseScale{1.0, 1.0 / (2.0 * rate * bits_per_symbol * ebn0)};
}

NoiseScale ebn0_to_sigma2(const DtbChannelParams& params) {
    if (params.m < 1)
        throw InvalidInput("at least one transmit node required");
    return ebn0_to_sigma2(params.ebn0_db, params.rate.value(), params.bits_per_symbol);
}

} // namespace pldpc
