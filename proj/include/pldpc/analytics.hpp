#ifndef PLDPC_ANALYTICS_HPP
#define PLDPC_ANALYTICS_HPP

#include <cstdint>

namespace pldpc {

struct BerPoint {
    std::uint32_t m = 1;
    double ebn0_db = 0.0;
    double ber = 0.0;
};

// Upper-tail standard normal probability via erfc.
double q_function(double x);

// Closed-form uncoded DTB BER for BPSK in independent Rayleigh fading,
//   Q( sqrt( pi M x / (2 + (4 - pi) x) ) ),  x = 10^(ebn0_db/10).
// The expression is asymptotic in M; treat small-M values as approximate.
double uncoded_dtb_ber(std::uint32_t m, double ebn0_db);

// Smallest M whose closed-form BER meets the target, exponential then
// binary search. The comparison allows rel_tolerance of slack so answers
// match chart-resolution readings of the formula.
std::uint32_t min_nodes(double ebn0_db, double target_ber, double rel_tolerance = 0.05);

// SISO Rayleigh BPSK reference: 0.5 (1 - sqrt(g/(1+g))), g = 10^(ebn0_db/10).
double siso_rayleigh_ber(double ebn0_db);

} // namespace pldpc

#endif
