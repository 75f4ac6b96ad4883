#include "pldpc/protograph.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "pldpc/errors.hpp"
#include "pldpc/io.hpp"

namespace pldpc {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0)
        throw InvalidInput("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            std::int64_t n = std::stoll(text.substr(0, slash));
            std::int64_t d = std::stoll(text.substr(slash + 1));
            return Rational(n, d);
        }
        if (text.find('.') != std::string::npos || text.find('e') != std::string::npos) {
            double x = std::stod(text);
            const std::int64_t scale = 1000000;
            return Rational(static_cast<std::int64_t>(x * scale + (x >= 0 ? 0.5 : -0.5)), scale);
        }
        return Rational(std::stoll(text), 1);
    } catch (const std::logic_error&) {
        throw InvalidInput("cannot parse rational: " + text);
    }
}

std::string Rational::str() const {
    std::ostringstream os;
    os << num;
    if (den != 1)
        os << '/' << den;
    return os.str();
}

std::size_t ProtoMatrix::edge_count() const {
    return std::accumulate(mult.begin(), mult.end(), std::size_t{0});
}

Rational ProtoMatrix::design_rate() const {
    return Rational(static_cast<std::int64_t>(cols) - static_cast<std::int64_t>(rows),
                    static_cast<std::int64_t>(cols) - static_cast<std::int64_t>(punctured.size()));
}

void ProtoMatrix::validate_structure() const {
    if (rows == 0 || cols == 0 || mult.size() != rows * cols)
        throw ConfigError("protograph '" + name + "': bad dimensions");
    for (std::size_t r = 0; r < rows; ++r) {
        std::uint32_t sum = 0;
        for (std::size_t c = 0; c < cols; ++c)
            sum += at(r, c);
        if (sum == 0)
            throw ConfigError("protograph '" + name + "': empty check row " + std::to_string(r));
    }
    for (std::size_t c = 0; c < cols; ++c) {
        std::uint32_t sum = 0;
        for (std::size_t r = 0; r < rows; ++r)
            sum += at(r, c);
        if (sum == 0)
            throw ConfigError("protograph '" + name + "': disconnected column " + std::to_string(c));
    }
    for (std::size_t c : punctured)
        if (c >= cols)
            throw ConfigError("protograph '" + name + "': punctured index out of range");
}

void ProtoMatrix::validate() const {
    validate_structure();
    Rational rate = design_rate();
    if (rate.num <= 0 || !rate.less_than(Rational(1, 1)))
        throw ConfigError("protograph '" + name + "': design rate outside (0, 1)");
}

ShiftAssignment ShiftAssignment::make(std::size_t rows, std::size_t cols, std::uint32_t v) {
    ShiftAssignment a;
    a.v = v;
    a.rows = rows;
    a.cols = cols;
    a.cells.resize(rows * cols);
    return a;
}

bool ShiftAssignment::all_cyclic() const {
    for (const auto& cell : cells)
        for (const auto& e : cell)
            if (!e.cyclic)
                return false;
    return true;
}

void ShiftAssignment::validate_against(const ProtoMatrix& p) const {
    if (rows != p.rows || cols != p.cols)
        throw InvalidAssignment("assignment shape does not match protograph");
    if (v == 0)
        throw InvalidAssignment("lifting order must be at least 1");
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& copies = cell(r, c);
            if (copies.size() != p.at(r, c))
                throw InvalidAssignment("cell (" + std::to_string(r) + "," + std::to_string(c) +
                                        ") covers " + std::to_string(copies.size()) + " of " +
                                        std::to_string(p.at(r, c)) + " edges");
            for (const auto& e : copies) {
                if (e.cyclic) {
                    if (e.shift >= v)
                        throw InvalidAssignment("shift out of range");
                } else {
                    if (e.perm.size() != v)
                        throw InvalidAssignment("permutation size does not match lifting order");
                    std::vector<bool> seen(v, false);
                    for (std::uint32_t image : e.perm) {
                        if (image >= v || seen[image])
                            throw InvalidAssignment("explicit permutation is not a bijection");
                        seen[image] = true;
                    }
                }
            }
            // parallel copies must stay distinct after lifting; coincident
            // permutations would cancel mod 2 and change the degree profile
            for (std::size_t i = 0; i < copies.size(); ++i)
                for (std::size_t j = i + 1; j < copies.size(); ++j)
                    if (copies[i] == copies[j])
                        throw InvalidAssignment("colliding parallel edges in cell (" +
                                                std::to_string(r) + "," + std::to_string(c) + ")");
        }
    }
}

Rational QcParityCheck::achieved_rate() const {
    return Rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n_tx));
}

std::filesystem::path default_asset_dir() {
    if (const char* env = std::getenv("PLDPC_ASSETS"))
        return std::filesystem::path(env);
#ifdef PLDPC_ASSET_DIR
    return std::filesystem::path(PLDPC_ASSET_DIR);
#else
    return std::filesystem::path("assets");
#endif
}

ProtoMatrix ar4ja_base() {
    return ar4ja_base(default_asset_dir() / "ar4ja_base.txt");
}

ProtoMatrix ar4ja_base(const std::filesystem::path& file) {
    ProtoMatrix p;
    try {
        p = read_protomatrix(file);
    } catch (const IoError& e) {
        throw ConfigError(std::string("base protograph asset: ") + e.what());
    }
    p.validate();
    if (p.punctured.size() != 1)
        throw ConfigError("base protograph must have exactly one punctured column");
    return p;
}

ExtensionTemplate ar4ja_extension() {
    return ar4ja_extension(default_asset_dir() / "ar4ja_extension.txt");
}

ExtensionTemplate ar4ja_extension(const std::filesystem::path& file) {
    try {
        return read_extension(file);
    } catch (const IoError& e) {
        throw ConfigError(std::string("extension template asset: ") + e.what());
    }
}

std::size_t additional_nodes_for_rate(const Rational& r) {
    if (r.less_than(Rational(1, 3)) || !r.less_than(Rational(1, 1)))
        throw UnsupportedRate("appending covers rates in [1/3, 1); got " + r.str());
    // floor((1 - 3R)/(R - 1)) = floor((3a - b)/(b - a)) for R = a/b
    std::int64_t a = r.num, b = r.den;
    return static_cast<std::size_t>((3 * a - b) / (b - a));
}

bool rate_in_append_family(const Rational& r) {
    if (r.less_than(Rational(1, 3)) || !r.less_than(Rational(1, 1)))
        return false;
    auto n = static_cast<std::int64_t>(additional_nodes_for_rate(r));
    return r == Rational(n + 1, n + 3);
}

LiftOrder lifting_order(std::size_t n, std::size_t n_r) {
    std::size_t per_copy = n_r + 3;
    if (n < per_copy)
        throw InvalidInput("block-length shorter than one protograph copy");
    std::size_t v = n / per_copy;
    if (v == 0)
        throw InvalidSpec("block-length too short for requested rate");
    return LiftOrder{static_cast<std::uint32_t>(v), v * per_copy};
}

ProtoMatrix extend_for_rate(const ProtoMatrix& base, const Rational& r) {
    return extend_for_rate(base, r, ar4ja_extension());
}

ProtoMatrix extend_for_rate(const ProtoMatrix& base, const Rational& r, const ExtensionTemplate& ext) {
    std::size_t n_r = additional_nodes_for_rate(r);
    if (!rate_in_append_family(r))
        throw UnsupportedRate("rate " + r.str() + " is not in the appendable family");
    if (ext.rows != base.rows)
        throw ConfigError("extension template check count does not match base");

    ProtoMatrix out = base;
    if (n_r == 0) {
        // lowest family rate: drop one information node from the base
        if (ext.removable_col >= base.cols || base.is_punctured(ext.removable_col))
            throw ConfigError("extension template removable column is invalid");
        out.cols = base.cols - 1;
        out.mult.clear();
        out.mult.reserve(out.rows * out.cols);
        for (std::size_t row = 0; row < base.rows; ++row)
            for (std::size_t c = 0; c < base.cols; ++c)
                if (c != ext.removable_col)
                    out.mult.push_back(base.at(row, c));
        out.punctured.clear();
        for (std::size_t c : base.punctured)
            out.punctured.insert(c > ext.removable_col ? c - 1 : c);
    } else {
        std::size_t appended = n_r - 1; // the base already carries one appendable node
        for (std::size_t j = 0; j < appended; ++j) {
            const auto& col = ext.columns[j % ext.columns.size()];
            ProtoMatrix wider;
            wider.rows = out.rows;
            wider.cols = out.cols + 1;
            wider.punctured = out.punctured;
            wider.mult.resize(wider.rows * wider.cols);
            for (std::size_t row = 0; row < out.rows; ++row) {
                for (std::size_t c = 0; c < out.cols; ++c)
                    wider.mult[row * wider.cols + c] = out.at(row, c);
                wider.mult[row * wider.cols + out.cols] = col[row];
            }
            out = std::move(wider);
        }
    }
    out.name = base.name + "-r" + r.str();
    std::replace(out.name.begin(), out.name.end(), '/', 'd');
    out.validate();
    if (!(out.design_rate() == r))
        throw ConfigError("extension template does not realize rate " + r.str());
    return out;
}

QcParityCheck lift(const ProtoMatrix& p, const ShiftAssignment& shifts) {
    p.validate_structure();
    shifts.validate_against(p);
    const std::uint32_t v = shifts.v;

    QcParityCheck qc;
    qc.h = BitMatrix(p.rows * v, p.cols * v);
    qc.v = v;
    qc.proto = p;
    qc.structure = shifts;
    for (std::size_t r = 0; r < p.rows; ++r)
        for (std::size_t c = 0; c < p.cols; ++c)
            for (const auto& copy : shifts.cell(r, c))
                for (std::uint32_t j = 0; j < v; ++j)
                    qc.h.flip(r * v + copy.image(j, v), c * v + j);

    for (std::size_t c : p.punctured)
        for (std::uint32_t j = 0; j < v; ++j)
            qc.punctured_cols.push_back(c * v + j);
    std::sort(qc.punctured_cols.begin(), qc.punctured_cols.end());

    qc.n_tx = v * p.tx_cols();
    qc.k = v * (p.cols - p.rows);
    qc.cols_truncated = 0;
    return qc;
}

QcParityCheck truncate_columns(const QcParityCheck& src, std::size_t q) {
    if (q == 0)
        return src;
    const std::uint32_t v = src.v;
    std::size_t total = src.h.cols();
    std::size_t checks = src.h.rows();
    if (q + checks >= total)
        throw InvalidInput("truncation would leave no information columns");
    std::size_t new_total = total - q;
    for (std::size_t c : src.punctured_cols)
        if (c >= new_total)
            throw InvalidInput("truncation would remove a punctured column");

    std::size_t view_cols = (new_total + v - 1) / v;
    QcParityCheck out;
    out.v = v;
    out.proto.rows = src.proto.rows;
    out.proto.cols = view_cols;
    out.proto.name = src.proto.name + "-trunc";
    out.proto.mult.resize(out.proto.rows * view_cols);
    for (std::size_t r = 0; r < out.proto.rows; ++r)
        for (std::size_t c = 0; c < view_cols; ++c)
            out.proto.mult[r * view_cols + c] = src.proto.at(r, c);
    for (std::size_t c : src.proto.punctured)
        if (c < view_cols)
            out.proto.punctured.insert(c);
    out.structure = ShiftAssignment::make(out.proto.rows, view_cols, v);
    for (std::size_t r = 0; r < out.proto.rows; ++r)
        for (std::size_t c = 0; c < view_cols; ++c)
            out.structure.cell(r, c) = src.structure.cell(r, c);

    out.h = BitMatrix(checks, new_total);
    for (std::size_t r = 0; r < checks; ++r)
        for (std::size_t c = 0; c < new_total; ++c)
            if (src.h.get(r, c))
                out.h.set(r, c, true);
    for (std::size_t r = 0; r < checks; ++r)
        if (out.h.row_weight(r) == 0)
            throw InvalidInput("truncation produced an empty check row");

    out.punctured_cols = src.punctured_cols;
    out.cols_truncated = view_cols * v - new_total;
    out.k = new_total - checks;
    out.n_tx = new_total - out.punctured_cols.size();
    return out;
}

} // namespace pldpc
