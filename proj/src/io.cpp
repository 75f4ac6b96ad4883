#include "pldpc/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "pldpc/errors.hpp"

namespace pldpc {
namespace {

// next non-blank line with '#' comments stripped
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            return true;
    }
    return false;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

std::vector<long long> ints_of(const std::string& line, const std::string& what) {
    std::istringstream is(line);
    std::vector<long long> out;
    long long x;
    while (is >> x)
        out.push_back(x);
    if (!is.eof())
        throw IoError("unexpected token in " + what + ": " + line);
    return out;
}

template <typename Reader>
auto from_file(const std::filesystem::path& file, Reader reader) {
    std::ifstream in(file);
    if (!in)
        throw IoError("cannot open " + file.string());
    return reader(in, file.filename().string());
}

} // namespace

ProtoMatrix read_protomatrix(std::istream& in, const std::string& name) {
    std::string line;
    if (!next_line(in, line))
        throw IoError("protomatrix '" + name + "': missing header");
    auto header = ints_of(line, "protomatrix header");
    if (header.size() != 2 || header[0] <= 0 || header[1] <= 0)
        throw IoError("protomatrix '" + name + "': header must be 'rows cols'");

    ProtoMatrix p;
    p.rows = static_cast<std::size_t>(header[0]);
    p.cols = static_cast<std::size_t>(header[1]);
    p.name = name;

    if (!next_line(in, line))
        throw IoError("protomatrix '" + name + "': missing punctured line");
    if (tokens_of(line) != std::vector<std::string>{"-"}) {
        for (long long c : ints_of(line, "punctured columns")) {
            if (c < 0 || c >= static_cast<long long>(p.cols))
                throw IoError("protomatrix '" + name + "': punctured column out of range");
            p.punctured.insert(static_cast<std::size_t>(c));
        }
    }

    p.mult.reserve(p.rows * p.cols);
    for (std::size_t r = 0; r < p.rows; ++r) {
        if (!next_line(in, line))
            throw IoError("protomatrix '" + name + "': missing row " + std::to_string(r));
        auto row = ints_of(line, "multiplicity row");
        if (row.size() != p.cols)
            throw IoError("protomatrix '" + name + "': row " + std::to_string(r) +
                          " has " + std::to_string(row.size()) + " entries");
        for (long long m : row) {
            if (m < 0)
                throw IoError("protomatrix '" + name + "': negative multiplicity");
            p.mult.push_back(static_cast<std::uint32_t>(m));
        }
    }
    return p;
}

ProtoMatrix read_protomatrix(const std::filesystem::path& file) {
    return from_file(file, [](std::istream& in, const std::string& name) {
        return read_protomatrix(in, name);
    });
}

void write_protomatrix(std::ostream& out, const ProtoMatrix& p) {
    out << p.rows << ' ' << p.cols << '\n';
    if (p.punctured.empty()) {
        out << "-\n";
    } else {
        bool first = true;
        for (std::size_t c : p.punctured) {
            out << (first ? "" : " ") << c;
            first = false;
        }
        out << '\n';
    }
    for (std::size_t r = 0; r < p.rows; ++r) {
        for (std::size_t c = 0; c < p.cols; ++c)
            out << (c ? " " : "") << p.at(r, c);
        out << '\n';
    }
}

ExtensionTemplate read_extension(std::istream& in, const std::string& name) {
    std::string line;
    if (!next_line(in, line))
        throw IoError("extension '" + name + "': missing header");
    auto header = ints_of(line, "extension header");
    if (header.size() != 3 || header[0] <= 0 || header[1] <= 0 || header[2] < 0)
        throw IoError("extension '" + name + "': header must be 'rows count removable_col'");

    ExtensionTemplate ext;
    ext.rows = static_cast<std::size_t>(header[0]);
    ext.removable_col = static_cast<std::size_t>(header[2]);
    std::size_t count = static_cast<std::size_t>(header[1]);
    for (std::size_t i = 0; i < count; ++i) {
        if (!next_line(in, line))
            throw IoError("extension '" + name + "': missing template column " + std::to_string(i));
        auto col = ints_of(line, "template column");
        if (col.size() != ext.rows)
            throw IoError("extension '" + name + "': template column has wrong length");
        std::vector<std::uint32_t> entries;
        std::uint32_t sum = 0;
        for (long long m : col) {
            if (m < 0)
                throw IoError("extension '" + name + "': negative multiplicity");
            entries.push_back(static_cast<std::uint32_t>(m));
            sum += static_cast<std::uint32_t>(m);
        }
        if (sum == 0)
            throw IoError("extension '" + name + "': disconnected template column");
        ext.columns.push_back(std::move(entries));
    }
    return ext;
}

ExtensionTemplate read_extension(const std::filesystem::path& file) {
    return from_file(file, [](std::istream& in, const std::string& name) {
        return read_extension(in, name);
    });
}

void write_alist(std::ostream& out, const BitMatrix& h) {
    const std::size_t n = h.cols(), m = h.rows();
    std::vector<std::vector<std::size_t>> col_adj(n), row_adj(m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (h.get(r, c)) {
                col_adj[c].push_back(r + 1);
                row_adj[r].push_back(c + 1);
            }
    std::size_t max_col = 0, max_row = 0;
    for (const auto& a : col_adj)
        max_col = std::max(max_col, a.size());
    for (const auto& a : row_adj)
        max_row = std::max(max_row, a.size());

    out << n << ' ' << m << '\n' << max_col << ' ' << max_row << '\n';
    for (std::size_t c = 0; c < n; ++c)
        out << (c ? " " : "") << col_adj[c].size();
    out << '\n';
    for (std::size_t r = 0; r < m; ++r)
        out << (r ? " " : "") << row_adj[r].size();
    out << '\n';
    // degree-0 lists carry a lone 0 so every node keeps its line
    auto write_adj = [&out](const std::vector<std::size_t>& adj) {
        if (adj.empty()) {
            out << "0\n";
            return;
        }
        for (std::size_t i = 0; i < adj.size(); ++i)
            out << (i ? " " : "") << adj[i];
        out << '\n';
    };
    for (const auto& adj : col_adj)
        write_adj(adj);
    for (const auto& adj : row_adj)
        write_adj(adj);
}

BitMatrix read_alist(std::istream& in) {
    std::string line;
    if (!next_line(in, line))
        throw IoError("alist: empty file");
    auto header = ints_of(line, "alist header");
    if (header.size() != 2 || header[0] <= 0 || header[1] <= 0)
        throw IoError("alist: first line must be 'cols rows'");
    std::size_t n = static_cast<std::size_t>(header[0]);
    std::size_t m = static_cast<std::size_t>(header[1]);

    if (!next_line(in, line))
        throw IoError("alist: missing max-degree line");

    auto read_degrees = [&](std::size_t count, const char* what) {
        std::vector<std::size_t> deg;
        while (deg.size() < count) {
            if (!next_line(in, line))
                throw IoError(std::string("alist: missing ") + what);
            for (long long d : ints_of(line, what)) {
                if (d < 0)
                    throw IoError(std::string("alist: negative ") + what);
                deg.push_back(static_cast<std::size_t>(d));
            }
        }
        if (deg.size() != count)
            throw IoError(std::string("alist: wrong number of ") + what);
        return deg;
    };
    auto col_deg = read_degrees(n, "column degrees");
    auto row_deg = read_degrees(m, "row degrees");

    BitMatrix h(m, n);
    for (std::size_t c = 0; c < n; ++c) {
        if (!next_line(in, line))
            throw IoError("alist: missing adjacency for column " + std::to_string(c + 1));
        auto entries = ints_of(line, "column adjacency");
        std::size_t found = 0;
        for (long long r : entries) {
            if (r == 0)
                continue; // padded variant
            if (r < 1 || r > static_cast<long long>(m))
                throw IoError("alist: row index out of range");
            h.set(static_cast<std::size_t>(r - 1), c, true);
            ++found;
        }
        if (found != col_deg[c])
            throw IoError("alist: column " + std::to_string(c + 1) + " degree mismatch");
    }
    // row lists are redundant; verify when present
    for (std::size_t r = 0; r < m; ++r) {
        if (!next_line(in, line))
            return h;
        auto entries = ints_of(line, "row adjacency");
        std::size_t found = 0;
        for (long long c : entries) {
            if (c == 0)
                continue;
            if (c < 1 || c > static_cast<long long>(n))
                throw IoError("alist: column index out of range");
            if (!h.get(r, static_cast<std::size_t>(c - 1)))
                throw IoError("alist: row/column lists disagree");
            ++found;
        }
        if (found != row_deg[r])
            throw IoError("alist: row " + std::to_string(r + 1) + " degree mismatch");
    }
    return h;
}

BitMatrix read_alist(const std::filesystem::path& file) {
    return from_file(file, [](std::istream& in, const std::string&) { return read_alist(in); });
}

void write_alist(const std::filesystem::path& file, const BitMatrix& h) {
    std::ofstream out(file);
    if (!out)
        throw IoError("cannot write " + file.string());
    write_alist(out, h);
}

void write_shift_table(std::ostream& out, const QcParityCheck& qc) {
    if (!qc.structure.all_cyclic())
        throw UnsupportedStructure("shift-table requires circulant structure");
    const ProtoMatrix& p = qc.proto;
    out << p.rows << ' ' << p.cols << ' ' << qc.v << '\n';
    if (p.punctured.empty()) {
        out << "-\n";
    } else {
        bool first = true;
        for (std::size_t c : p.punctured) {
            out << (first ? "" : " ") << c;
            first = false;
        }
        out << '\n';
    }
    for (std::size_t r = 0; r < p.rows; ++r) {
        for (std::size_t c = 0; c < p.cols; ++c) {
            if (c)
                out << ' ';
            const auto& copies = qc.structure.cell(r, c);
            if (copies.empty()) {
                out << '-';
                continue;
            }
            for (std::size_t i = 0; i < copies.size(); ++i)
                out << (i ? "," : "") << copies[i].shift;
        }
        out << '\n';
    }
    if (qc.cols_truncated > 0)
        out << "truncated " << qc.cols_truncated << '\n';
}

QcParityCheck read_shift_table(std::istream& in) {
    std::string line;
    if (!next_line(in, line))
        throw IoError("shift-table: empty file");
    auto header = ints_of(line, "shift-table header");
    if (header.size() != 3 || header[0] <= 0 || header[1] <= 0 || header[2] <= 0)
        throw IoError("shift-table: header must be 'rows cols v'");

    ProtoMatrix p;
    p.rows = static_cast<std::size_t>(header[0]);
    p.cols = static_cast<std::size_t>(header[1]);
    p.name = "shift-table";
    auto v = static_cast<std::uint32_t>(header[2]);

    if (!next_line(in, line))
        throw IoError("shift-table: missing punctured line");
    if (tokens_of(line) != std::vector<std::string>{"-"}) {
        for (long long c : ints_of(line, "punctured columns")) {
            if (c < 0 || c >= static_cast<long long>(p.cols))
                throw IoError("shift-table: punctured column out of range");
            p.punctured.insert(static_cast<std::size_t>(c));
        }
    }

    ShiftAssignment shifts = ShiftAssignment::make(p.rows, p.cols, v);
    p.mult.assign(p.rows * p.cols, 0);
    for (std::size_t r = 0; r < p.rows; ++r) {
        if (!next_line(in, line))
            throw IoError("shift-table: missing cell row " + std::to_string(r));
        auto cells = tokens_of(line);
        if (cells.size() != p.cols)
            throw IoError("shift-table: cell row " + std::to_string(r) + " has wrong width");
        for (std::size_t c = 0; c < p.cols; ++c) {
            if (cells[c] == "-")
                continue;
            std::istringstream cell(cells[c]);
            std::string item;
            while (std::getline(cell, item, ',')) {
                long long s;
                try {
                    s = std::stoll(item);
                } catch (const std::logic_error&) {
                    throw IoError("shift-table: bad shift '" + item + "'");
                }
                if (s < 0 || s >= static_cast<long long>(v))
                    throw IoError("shift-table: shift out of range");
                shifts.cell(r, c).push_back(EdgePerm::of_shift(static_cast<std::uint32_t>(s)));
                ++p.at(r, c);
            }
        }
    }

    std::size_t truncated = 0;
    if (next_line(in, line)) {
        auto toks = tokens_of(line);
        if (toks.size() != 2 || toks[0] != "truncated")
            throw IoError("shift-table: unexpected trailing line: " + line);
        long long q = std::stoll(toks[1]);
        if (q < 0 || q >= static_cast<long long>(v))
            throw IoError("shift-table: truncated count out of range");
        truncated = static_cast<std::size_t>(q);
    }

    QcParityCheck qc = lift(p, shifts);
    return truncated ? truncate_columns(qc, truncated) : qc;
}

QcParityCheck read_shift_table(const std::filesystem::path& file) {
    return from_file(file, [](std::istream& in, const std::string&) { return read_shift_table(in); });
}

void write_shift_table(const std::filesystem::path& file, const QcParityCheck& qc) {
    std::ofstream out(file);
    if (!out)
        throw IoError("cannot write " + file.string());
    write_shift_table(out, qc);
}

std::string shift_table_string(const QcParityCheck& qc) {
    std::ostringstream os;
    write_shift_table(os, qc);
    return os.str();
}

} // namespace pldpc
