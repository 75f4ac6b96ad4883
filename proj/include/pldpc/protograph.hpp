#ifndef PLDPC_PROTOGRAPH_HPP
#define PLDPC_PROTOGRAPH_HPP

#include <cstdint>
#include <filesystem>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pldpc/gf2.hpp"

namespace pldpc {

// Exact rational, used for code rates so family membership tests are exact.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
    bool less_than(const Rational& o) const { return num * o.den < o.num * den; }

    // accepts "a/b" or a decimal like "0.5"
    static Rational parse(const std::string& text);
    std::string str() const;
};

// Protograph: small multiplicity matrix plus the set of punctured columns.
struct ProtoMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint32_t> mult; // row-major, rows x cols
    std::set<std::size_t> punctured;
    std::string name;

    std::uint32_t& at(std::size_t r, std::size_t c) { return mult[r * cols + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return mult[r * cols + c]; }

    bool is_punctured(std::size_t c) const { return punctured.count(c) != 0; }
    std::size_t tx_cols() const { return cols - punctured.size(); }
    std::size_t edge_count() const;
    Rational design_rate() const; // (cols - rows) / (cols - |punctured|)

    // entry ranges, positive row/col sums, punctured indices in range
    void validate_structure() const;
    // structure plus a design rate in (0, 1); required of code protographs
    void validate() const;
};

struct CodeSpec {
    std::size_t n = 0;      // target transmitted block-length in bits
    Rational rate{1, 2};
    std::uint64_t seed = 0; // shared construction key
    std::optional<int> girth_target;
};

// One protograph edge copy: a cyclic shift for quasi-cyclic codes, or an
// explicit permutation for general copy-and-permute liftings.
struct EdgePerm {
    bool cyclic = true;
    std::uint32_t shift = 0;
    std::vector<std::uint32_t> perm; // used when !cyclic; perm[i] = image of i

    static EdgePerm of_shift(std::uint32_t s) { return EdgePerm{true, s, {}}; }
    static EdgePerm of_perm(std::vector<std::uint32_t> p) { return EdgePerm{false, 0, std::move(p)}; }

    // row index the copy maps lifted column j to, within its block; the
    // cyclic case realizes B[i][(i+s) mod v] = 1
    std::uint32_t image(std::uint32_t j, std::uint32_t v) const {
        return cyclic ? (j + v - shift % v) % v : perm[j];
    }
    bool operator==(const EdgePerm&) const = default;
};

// One EdgePerm per protograph edge copy; the optimizer's genome.
struct ShiftAssignment {
    std::uint32_t v = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<EdgePerm>> cells; // row-major, rows x cols

    std::vector<EdgePerm>& cell(std::size_t r, std::size_t c) { return cells[r * cols + c]; }
    const std::vector<EdgePerm>& cell(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }

    static ShiftAssignment make(std::size_t rows, std::size_t cols, std::uint32_t v);
    bool all_cyclic() const;
    // coverage, collision-freedom within cells, bijectivity of explicit perms
    void validate_against(const ProtoMatrix& p) const;
    bool operator==(const ShiftAssignment&) const = default;
};

// Lifted parity-check matrix with its generating structure.
struct QcParityCheck {
    BitMatrix h;
    std::uint32_t v = 0;
    ProtoMatrix proto;          // protograph view of the surviving columns
    ShiftAssignment structure;
    std::vector<std::size_t> punctured_cols; // lifted column indices, sorted
    std::size_t n_tx = 0;       // transmitted length
    std::size_t k = 0;          // design dimension
    std::size_t cols_truncated = 0; // trailing lifted columns removed from the full lifting

    bool is_pure_qc() const { return cols_truncated == 0 && structure.all_cyclic(); }
    Rational achieved_rate() const;
};

// Extension recipe for rate adaptation: columns appended cyclically beyond
// the base protograph, plus the base column removed for the lowest rate.
struct ExtensionTemplate {
    std::size_t rows = 0;
    std::size_t removable_col = 0;
    std::vector<std::vector<std::uint32_t>> columns; // each of length rows
};

std::filesystem::path default_asset_dir();

// Base protograph, loaded from the shipped asset so alternatives can be
// substituted by pointing at a different file.
ProtoMatrix ar4ja_base();
ProtoMatrix ar4ja_base(const std::filesystem::path& file);
ExtensionTemplate ar4ja_extension();
ExtensionTemplate ar4ja_extension(const std::filesystem::path& file);

// n_R = floor((1 - 3R) / (R - 1)) for R in [1/3, 1)
std::size_t additional_nodes_for_rate(const Rational& r);

// true when R equals (n_R + 1) / (n_R + 3) exactly
bool rate_in_append_family(const Rational& r);

struct LiftOrder {
    std::uint32_t v = 0;
    std::size_t achieved_n = 0; // v * (n_R + 3), <= requested N
};

// v = floor(N / (n_R + 3))
LiftOrder lifting_order(std::size_t n, std::size_t n_r);

ProtoMatrix extend_for_rate(const ProtoMatrix& base, const Rational& r);
ProtoMatrix extend_for_rate(const ProtoMatrix& base, const Rational& r, const ExtensionTemplate& ext);

// Copy-and-permute lifting. Block (r, c) of H is the mod-2 sum of the
// cell's permutation matrices; parallel copies must be pairwise distinct.
QcParityCheck lift(const ProtoMatrix& p, const ShiftAssignment& shifts);

// Drop q trailing lifted columns. Punctured columns may not be removed and
// at least one information column must survive; fully removed blocks leave
// the protograph view, a partial block is tracked via cols_truncated.
QcParityCheck truncate_columns(const QcParityCheck& src, std::size_t q);

} // namespace pldpc

#endif
