#include "pldpc/analytics.hpp"

#include <cmath>

#include "pldpc/errors.hpp"

namespace pldpc {

double q_function(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double uncoded_dtb_ber(std::uint32_t m, double ebn0_db) {
    if (m < 1)
        throw InvalidInput("node count must be at least 1");
    const double pi = 3.14159265358979323846;
    double x = std::pow(10.0, ebn0_db / 10.0);
    double arg = pi * static_cast<double>(m) * x / (2.0 + (4.0 - pi) * x);
    return q_function(std::sqrt(arg));
}

std::uint32_t min_nodes(double ebn0_db, double target_ber, double rel_tolerance) {
    if (target_ber <= 0.0 || target_ber >= 0.5)
        throw InvalidInput("target BER must lie in (0, 0.5)");
    if (rel_tolerance < 0.0)
        throw InvalidInput("tolerance must be non-negative");
    const double threshold = target_ber * (1.0 + rel_tolerance);
    auto meets = [&](std::uint32_t m) { return uncoded_dtb_ber(m, ebn0_db) <= threshold; };

    if (meets(1))
        return 1;
    std::uint32_t lo = 1, hi = 2;
    while (!meets(hi)) {
        lo = hi;
        hi *= 2; // Q argument grows like sqrt(M), so this terminates
    }
    while (hi - lo > 1) {
        std::uint32_t mid = lo + (hi - lo) / 2;
        (meets(mid) ? hi : lo) = mid;
    }
    return hi;
}

double siso_rayleigh_ber(double ebn0_db) {
    double g = std::pow(10.0, ebn0_db / 10.0);
    return 0.5 * (1.0 - std::sqrt(g / (1.0 + g)));
}

} // namespace pldpc
