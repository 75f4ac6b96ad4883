#ifndef PLDPC_IO_HPP
#define PLDPC_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "pldpc/gf2.hpp"
#include "pldpc/protograph.hpp"

namespace pldpc {

// Protograph asset: line 1 "rows cols", line 2 punctured column indices
// (or "-"), then rows lines of multiplicities. '#' starts a comment.
ProtoMatrix read_protomatrix(std::istream& in, const std::string& name = "protomatrix");
ProtoMatrix read_protomatrix(const std::filesystem::path& file);
void write_protomatrix(std::ostream& out, const ProtoMatrix& p);

// Extension template: line 1 "rows count removable_col", then count lines,
// each the per-check multiplicities of one appended column.
ExtensionTemplate read_extension(std::istream& in, const std::string& name = "extension");
ExtensionTemplate read_extension(const std::filesystem::path& file);

// MacKay alist. Lists are 1-indexed; zero padding on read is tolerated.
void write_alist(std::ostream& out, const BitMatrix& h);
BitMatrix read_alist(std::istream& in);
BitMatrix read_alist(const std::filesystem::path& file);
void write_alist(const std::filesystem::path& file, const BitMatrix& h);

// Compact shift-table for circulant liftings:
//   line 1: rows cols v
//   line 2: punctured protograph columns, or "-"
//   rows lines: one cell per column, "-" for zero cells, shifts comma-joined
//   optional last line: "truncated <q>" trailing lifted columns removed
void write_shift_table(std::ostream& out, const QcParityCheck& qc);
QcParityCheck read_shift_table(std::istream& in);
QcParityCheck read_shift_table(const std::filesystem::path& file);
void write_shift_table(const std::filesystem::path& file, const QcParityCheck& qc);

std::string shift_table_string(const QcParityCheck& qc);

} // namespace pldpc

#endif
