#include "pldpc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "pldpc/channel.hpp"
#include "pldpc/errors.hpp"
#include "pldpc/io.hpp"

namespace pldpc {
namespace {

struct FrameResult {
    std::uint32_t bit_errors = 0;
    std::uint32_t iterations = 0;
};

std::uint64_t point_key(const CodeUnderTest& code, std::uint32_t m, double ebn0_db) {
    std::uint64_t code_hash = 1469598103934665603ULL;
    for (char ch : code.id()) {
        code_hash ^= static_cast<unsigned char>(ch);
        code_hash *= 1099511628211ULL;
    }
    std::uint64_t ebits;
    static_assert(sizeof(ebits) == sizeof(ebn0_db));
    std::memcpy(&ebits, &ebn0_db, sizeof(ebits));
    return hash_mix({code_hash, m, ebits});
}

FrameResult simulate_uncoded_frame(const CodeUnderTest& code, std::uint32_t m,
                                   const NoiseScale& ns, Rng& rng) {
    FrameResult out;
    for (std::size_t i = 0; i < code.message_bits(); ++i) {
        int bit = static_cast<int>(rng.next_u64() & 1u);
        double gain = dtb_gain(m, rng);
        ChannelSample s = transmit_bpsk(bit, gain, ns.es, ns.sigma2, rng);
        int decided = s.r < 0.0 ? 1 : 0;
        out.bit_errors += decided != bit;
    }
    return out;
}

FrameResult simulate_coded_frame(const CodeUnderTest& code, std::uint32_t m,
                                 const NoiseScale& ns, std::uint32_t max_iter, Rng& rng,
                                 std::vector<std::uint8_t>& message, LlrVector& llr) {
    const EncoderTables& tables = code.tables();
    message.resize(tables.k);
    for (auto& b : message)
        b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
    Codeword cw = encode(tables, message);

    llr.assign(tables.n_cols, 0.0); // punctured positions carry no channel information
    const auto& tx_to_full = code.tx_to_full();
    for (std::size_t t = 0; t < cw.tx.size(); ++t) {
        double gain = dtb_gain(m, rng);
        ChannelSample s = transmit_bpsk(cw.tx[t], gain, ns.es, ns.sigma2, rng);
        llr[tx_to_full[t]] = channel_llr(s.r, s.gain, s.sigma2);
    }

    DecodeResult decoded = code.decoder().decode(llr, static_cast<int>(max_iter));
    FrameResult out;
    out.iterations = static_cast<std::uint32_t>(decoded.iterations);
    for (std::size_t i = 0; i < tables.k; ++i)
        out.bit_errors += decoded.hard[tables.info_cols[i]] != message[i];
    return out;
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(line);
    while (std::getline(is, item, sep))
        out.push_back(item);
    return out;
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

} // namespace

const char* const kBerCsvHeader =
    "code_id,M,ebn0_db,frames,bits,bit_errors,frame_errors,ber,fer,avg_iterations,seed,wall_seconds";

void StopRule::validate() const {
    if (min_bit_errors == 0 || min_frame_errors == 0 || max_frames == 0)
        throw InvalidInput("stop thresholds must be positive");
}

CodeUnderTest CodeUnderTest::uncoded(std::size_t frame_bits) {
    if (frame_bits == 0)
        throw InvalidInput("frame size must be positive");
    CodeUnderTest c;
    c.id_ = "uncoded";
    c.coded_ = false;
    c.message_bits_ = frame_bits;
    c.rate_ = 1.0;
    return c;
}

CodeUnderTest CodeUnderTest::coded(QcParityCheck qc, std::string id) {
    CodeUnderTest c;
    c.id_ = std::move(id);
    c.coded_ = true;
    c.qc_ = std::move(qc);
    c.tables_ = build_encoder(c.qc_);
    c.decoder_ = std::make_shared<const BpDecoder>(c.qc_.h);
    c.message_bits_ = c.tables_.k;
    c.rate_ = static_cast<double>(c.tables_.k) / static_cast<double>(c.qc_.n_tx);
    c.tx_to_full_.reserve(c.qc_.n_tx);
    std::size_t next_punct = 0;
    for (std::size_t col = 0; col < c.qc_.h.cols(); ++col) {
        if (next_punct < c.qc_.punctured_cols.size() && c.qc_.punctured_cols[next_punct] == col) {
            ++next_punct;
            continue;
        }
        c.tx_to_full_.push_back(col);
    }
    return c;
}

CodeUnderTest code_for(const Campaign& c) {
    if (c.code == "uncoded")
        return CodeUnderTest::uncoded(c.frame_bits);
    if (c.code == "construct") {
        QcParityCheck qc = construct(CodeSpec{c.n, c.rate, c.seed, {}});
        std::string id = "pldpc-" + std::to_string(qc.n_tx) + "-" + std::to_string(qc.k) + "-s" +
                         std::to_string(c.seed);
        return CodeUnderTest::coded(std::move(qc), std::move(id));
    }
    std::filesystem::path path(c.code);
    if (path.extension() == ".alist") {
        BitMatrix h = read_alist(path);
        QcParityCheck qc;
        qc.h = std::move(h);
        qc.v = 1;
        qc.n_tx = qc.h.cols();
        qc.k = qc.h.cols() > qc.h.rows() ? qc.h.cols() - qc.h.rows() : 0;
        return CodeUnderTest::coded(std::move(qc), stem_of(c.code));
    }
    return CodeUnderTest::coded(read_shift_table(path), stem_of(c.code));
}

BerRecord run_point(const CodeUnderTest& code, std::uint32_t m, double ebn0_db,
                    const StopRule& stop, std::uint64_t seed, std::uint32_t max_iter,
                    std::uint32_t workers) {
    stop.validate();
    if (m < 1)
        throw InvalidInput("node count must be at least 1");
    auto t0 = std::chrono::steady_clock::now();

    DtbChannelParams channel;
    channel.m = m;
    channel.ebn0_db = ebn0_db;
    channel.rate = code.is_coded()
                       ? Rational(static_cast<std::int64_t>(code.tables().k),
                                  static_cast<std::int64_t>(code.parity_check().n_tx))
                       : Rational(1, 1);
    const NoiseScale ns = ebn0_to_sigma2(channel);
    const std::uint64_t key = point_key(code, m, ebn0_db);
    const std::size_t bits_per_frame = code.message_bits();

    auto simulate = [&](std::uint64_t frame) {
        Rng rng(hash_mix({seed, key, frame}));
        if (!code.is_coded())
            return simulate_uncoded_frame(code, m, ns, rng);
        thread_local std::vector<std::uint8_t> message;
        thread_local LlrVector llr;
        return simulate_coded_frame(code, m, ns, max_iter, rng, message, llr);
    };

    BerRecord rec;
    rec.code_id = code.id();
    rec.m = m;
    rec.ebn0_db = ebn0_db;
    rec.seed = seed;

    std::uint64_t iter_sum = 0;
    bool done = false;
    std::uint64_t next_frame = 0;
    const std::uint32_t pool = std::max<std::uint32_t>(1, workers);
    std::vector<FrameResult> block;

    while (!done && next_frame < stop.max_frames) {
        const std::uint64_t block_size =
            std::min<std::uint64_t>(std::max<std::uint64_t>(64, pool * 32), stop.max_frames - next_frame);
        block.assign(block_size, FrameResult{});
        if (pool == 1) {
            for (std::uint64_t i = 0; i < block_size; ++i)
                block[i] = simulate(next_frame + i);
        } else {
            std::vector<std::thread> threads;
            threads.reserve(pool);
            for (std::uint32_t w = 0; w < pool; ++w)
                threads.emplace_back([&, w]() {
                    for (std::uint64_t i = w; i < block_size; i += pool)
                        block[i] = simulate(next_frame + i);
                });
            for (auto& t : threads)
                t.join();
        }
        // fold results in frame order so the stopping frame is well defined
        for (std::uint64_t i = 0; i < block_size; ++i) {
            const FrameResult& fr = block[i];
            rec.frames += 1;
            rec.bits += bits_per_frame;
            rec.bit_errors += fr.bit_errors;
            rec.frame_errors += fr.bit_errors > 0 ? 1 : 0;
            iter_sum += fr.iterations;
            if (rec.bit_errors >= stop.min_bit_errors && rec.frame_errors >= stop.min_frame_errors) {
                done = true;
                break;
            }
        }
        next_frame += block_size;
    }

    rec.ber = rec.bits ? static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits) : 0.0;
    rec.fer = rec.frames ? static_cast<double>(rec.frame_errors) / static_cast<double>(rec.frames) : 0.0;
    rec.avg_iterations = rec.frames ? static_cast<double>(iter_sum) / static_cast<double>(rec.frames) : 0.0;
    rec.upper_bound_only = !done && rec.bit_errors == 0;
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::string format_ebn0(double ebn0_db) {
    return fmt_double(ebn0_db);
}

std::string to_csv_row(const BerRecord& r) {
    std::ostringstream os;
    os << r.code_id << ',' << r.m << ',' << format_ebn0(r.ebn0_db) << ',' << r.frames << ','
       << r.bits << ',' << r.bit_errors << ',' << r.frame_errors << ',' << fmt_double(r.ber) << ','
       << fmt_double(r.fer) << ',' << fmt_double(r.avg_iterations) << ',' << r.seed << ','
       << fmt_double(r.wall_seconds);
    return os.str();
}

BerRecord parse_csv_row(const std::string& line) {
    auto fields = split(line, ',');
    if (fields.size() != 12)
        throw IoError("results row has " + std::to_string(fields.size()) + " fields: " + line);
    BerRecord r;
    try {
        r.code_id = fields[0];
        r.m = static_cast<std::uint32_t>(std::stoul(fields[1]));
        r.ebn0_db = std::stod(fields[2]);
        r.frames = std::stoull(fields[3]);
        r.bits = std::stoull(fields[4]);
        r.bit_errors = std::stoull(fields[5]);
        r.frame_errors = std::stoull(fields[6]);
        r.ber = std::stod(fields[7]);
        r.fer = std::stod(fields[8]);
        r.avg_iterations = std::stod(fields[9]);
        r.seed = std::stoull(fields[10]);
        r.wall_seconds = std::stod(fields[11]);
    } catch (const std::logic_error&) {
        throw IoError("cannot parse results row: " + line);
    }
    return r;
}

std::vector<BerRecord> run_campaign(const Campaign& c) {
    if (c.m_list.empty() || c.ebn0_list.empty())
        throw InvalidInput("campaign sweep lists must be non-empty");
    if (c.out.empty())
        throw InvalidInput("campaign output path missing");
    c.stop.validate();

    CodeUnderTest code = code_for(c);

    // resume: collect completed points from an existing results file
    std::vector<BerRecord> existing;
    {
        std::ifstream in(c.out);
        std::string line;
        bool first = true;
        while (in && std::getline(in, line)) {
            if (line.empty())
                continue;
            if (first && line == kBerCsvHeader) {
                first = false;
                continue;
            }
            first = false;
            existing.push_back(parse_csv_row(line));
        }
    }
    auto completed = [&](std::uint32_t m, double ebn0) -> const BerRecord* {
        for (const BerRecord& r : existing)
            if (r.code_id == code.id() && r.m == m && format_ebn0(r.ebn0_db) == format_ebn0(ebn0))
                return &r;
        return nullptr;
    };

    const bool fresh = existing.empty();
    std::ofstream out(c.out, std::ios::app);
    if (!out)
        throw IoError("cannot open results file " + c.out);
    if (fresh) {
        std::error_code ec;
        if (std::filesystem::file_size(c.out, ec) == 0 || ec)
            out << kBerCsvHeader << '\n' << std::flush;
    }

    std::vector<BerRecord> records;
    for (std::uint32_t m : c.m_list) {
        for (double ebn0 : c.ebn0_list) {
            if (const BerRecord* prior = completed(m, ebn0)) {
                records.push_back(*prior);
                continue;
            }
            BerRecord rec = run_point(code, m, ebn0, c.stop, c.seed, c.max_iter, c.workers);
            out << to_csv_row(rec) << '\n' << std::flush;
            if (!out)
                throw IoError("write failed on " + c.out);
            records.push_back(std::move(rec));
        }
    }
    return records;
}

Campaign load_campaign(std::istream& in) {
    Campaign c;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos)
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError("campaign line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "code")
                c.code = value;
            else if (key == "n")
                c.n = std::stoull(value);
            else if (key == "rate")
                c.rate = Rational::parse(value);
            else if (key == "seed")
                c.seed = std::stoull(value);
            else if (key == "m_list") {
                c.m_list.clear();
                for (const auto& item : split(value, ','))
                    c.m_list.push_back(static_cast<std::uint32_t>(std::stoul(item)));
            } else if (key == "ebn0_list") {
                c.ebn0_list.clear();
                for (const auto& item : split(value, ','))
                    c.ebn0_list.push_back(std::stod(item));
            } else if (key == "min_bit_errors")
                c.stop.min_bit_errors = std::stoull(value);
            else if (key == "min_frame_errors")
                c.stop.min_frame_errors = std::stoull(value);
            else if (key == "max_frames")
                c.stop.max_frames = std::stoull(value);
            else if (key == "max_iter")
                c.max_iter = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "workers")
                c.workers = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "frame_bits")
                c.frame_bits = std::stoull(value);
            else if (key == "out")
                c.out = value;
            else
                throw IoError("campaign line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const std::logic_error&) {
            throw IoError("campaign line " + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    return c;
}

Campaign load_campaign(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw IoError("cannot open campaign file " + file.string());
    return load_campaign(in);
}

} // namespace pldpc
