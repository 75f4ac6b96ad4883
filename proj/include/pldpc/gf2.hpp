#ifndef PLDPC_GF2_HPP
#define PLDPC_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pldpc {

// Dense binary matrix with 64-bit packed rows. Sizes here stay small
// (a few hundred rows), so dense storage beats sparse bookkeeping for
// elimination and syndrome checks.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_(cols == 0 ? 0 : (cols + 63) / 64),
          bits_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool value) {
        std::uint64_t& w = bits_[r * words_ + c / 64];
        std::uint64_t mask = 1ULL << (c % 64);
        if (value)
            w |= mask;
        else
            w &= ~mask;
    }

    void flip(std::size_t r, std::size_t c) {
        bits_[r * words_ + c / 64] ^= 1ULL << (c % 64);
    }

    // row dst ^= row src
    void xor_row_into(std::size_t src, std::size_t dst) {
        const std::uint64_t* s = &bits_[src * words_];
        std::uint64_t* d = &bits_[dst * words_];
        for (std::size_t i = 0; i < words_; ++i)
            d[i] ^= s[i];
    }

    std::size_t row_weight(std::size_t r) const {
        std::size_t count = 0;
        for (std::size_t i = 0; i < words_; ++i)
            count += static_cast<std::size_t>(__builtin_popcountll(bits_[r * words_ + i]));
        return count;
    }

    std::size_t col_weight(std::size_t c) const {
        std::size_t count = 0;
        for (std::size_t r = 0; r < rows_; ++r)
            count += get(r, c) ? 1 : 0;
        return count;
    }

    std::size_t ones() const {
        std::size_t count = 0;
        for (std::uint64_t w : bits_)
            count += static_cast<std::size_t>(__builtin_popcountll(w));
        return count;
    }

    // inner product of row r with a 0/1 vector of length cols()
    int row_dot(std::size_t r, std::span<const std::uint8_t> x) const {
        int acc = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            acc ^= (get(r, c) & (x[c] & 1));
        return acc;
    }

    bool operator==(const BitMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && bits_ == other.bits_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

// H * x^T over GF(2)
inline std::vector<std::uint8_t> syndrome(const BitMatrix& h, std::span<const std::uint8_t> x) {
    std::vector<std::uint8_t> s(h.rows(), 0);
    for (std::size_t r = 0; r < h.rows(); ++r)
        s[r] = static_cast<std::uint8_t>(h.row_dot(r, x));
    return s;
}

inline bool syndrome_is_zero(const BitMatrix& h, std::span<const std::uint8_t> x) {
    for (std::size_t r = 0; r < h.rows(); ++r)
        if (h.row_dot(r, x))
            return false;
    return true;
}

} // namespace pldpc

#endif
