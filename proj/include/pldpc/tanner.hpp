#ifndef PLDPC_TANNER_HPP
#define PLDPC_TANNER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "pldpc/gf2.hpp"
#include "pldpc/protograph.hpp"

namespace pldpc {

// Bipartite graph of a parity-check matrix: one variable node per column,
// one check node per row, one edge per 1-entry.
struct TannerGraph {
    std::size_t var_count = 0;
    std::size_t check_count = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges; // (variable, check)
    std::vector<std::vector<std::uint32_t>> var_adj;   // variable -> checks
    std::vector<std::vector<std::uint32_t>> check_adj; // check -> variables
};

struct GirthReport {
    int girth = 0;              // shortest cycle length; meaningful unless acyclic
    bool acyclic = false;
    bool lower_bound = false;   // true: no cycle up to the cap; actual girth >= girth
    std::uint64_t multiplicity = 0; // number of distinct shortest cycles
    double elapsed_seconds = 0.0;
};

TannerGraph from_parity_check(const BitMatrix& h);

// Exact girth and shortest-cycle count via breadth-first search rooted at
// every variable node. Even for any bipartite graph.
GirthReport girth(const TannerGraph& g);

// Same, but gives up beyond max_len and reports "girth >= max_len + 2".
GirthReport girth_up_to(const TannerGraph& g, int max_len);

// Circulant fast path: cyclic shifts make index translation an
// automorphism, so one root per block-column suffices and adjacency is
// computed arithmetically from the shifts. Agrees exactly with girth().
GirthReport qc_girth(const QcParityCheck& h, int max_len = 12);
GirthReport qc_girth(const ProtoMatrix& p, const ShiftAssignment& shifts, int max_len = 12);

} // namespace pldpc

#endif
