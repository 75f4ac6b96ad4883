#ifndef PLDPC_HARNESS_HPP
#define PLDPC_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pldpc/cga.hpp"
#include "pldpc/codec.hpp"
#include "pldpc/protograph.hpp"

namespace pldpc {

struct StopRule {
    std::uint64_t min_bit_errors = 100;
    std::uint64_t min_frame_errors = 30;
    std::uint64_t max_frames = 1000000;

    void validate() const;
};

struct Campaign {
    std::string code = "uncoded"; // "uncoded" | "construct" | path to stored H
    std::size_t n = 480;          // construct: target block-length
    Rational rate{1, 2};          // construct: target rate
    std::uint64_t seed = 1;
    std::vector<std::uint32_t> m_list;
    std::vector<double> ebn0_list;
    StopRule stop;
    std::uint32_t max_iter = 50;
    std::uint32_t workers = 1;
    std::size_t frame_bits = 480; // uncoded frame size
    std::string out;              // results CSV path
};

struct BerRecord {
    std::string code_id;
    std::uint32_t m = 0;
    double ebn0_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bits = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double avg_iterations = 0.0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
    bool upper_bound_only = false; // max_frames hit without a single error
};

// Prepared code under test: either raw BPSK frames or an encoder/decoder
// pair built once and shared by all workers.
class CodeUnderTest {
public:
    static CodeUnderTest uncoded(std::size_t frame_bits);
    static CodeUnderTest coded(QcParityCheck qc, std::string id);

    const std::string& id() const { return id_; }
    bool is_coded() const { return coded_; }
    std::size_t message_bits() const { return message_bits_; }
    double rate() const { return rate_; }
    const QcParityCheck& parity_check() const { return qc_; }
    const EncoderTables& tables() const { return tables_; }
    const BpDecoder& decoder() const { return *decoder_; }
    const std::vector<std::size_t>& tx_to_full() const { return tx_to_full_; }

private:
    std::string id_;
    bool coded_ = false;
    std::size_t message_bits_ = 0;
    double rate_ = 1.0;
    QcParityCheck qc_;
    EncoderTables tables_;
    std::shared_ptr<const BpDecoder> decoder_;
    std::vector<std::size_t> tx_to_full_;
};

// Resolve the campaign's code field: keyword, construct parameters, or a
// stored matrix (.alist or shift-table by extension).
CodeUnderTest code_for(const Campaign& c);

// Monte Carlo at one (M, Eb/N0) point. Frames use counter-based random
// streams keyed by (seed, point, frame), so counts are identical for any
// worker count and the stopping frame is scheduling-independent.
BerRecord run_point(const CodeUnderTest& code, std::uint32_t m, double ebn0_db,
                    const StopRule& stop, std::uint64_t seed, std::uint32_t max_iter = 50,
                    std::uint32_t workers = 1);

// Cartesian sweep with incremental CSV output; completed (code, M, Eb/N0)
// rows found in the output file are reused instead of re-simulated.
std::vector<BerRecord> run_campaign(const Campaign& c);

Campaign load_campaign(std::istream& in);
Campaign load_campaign(const std::filesystem::path& file);

extern const char* const kBerCsvHeader;
std::string to_csv_row(const BerRecord& r);
BerRecord parse_csv_row(const std::string& line);
std::string format_ebn0(double ebn0_db);

} // namespace pldpc

#endif
