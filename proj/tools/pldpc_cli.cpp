#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pldpc/analytics.hpp"
#include "pldpc/cga.hpp"
#include "pldpc/errors.hpp"
#include "pldpc/harness.hpp"
#include "pldpc/io.hpp"
#include "pldpc/tanner.hpp"

namespace {

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ','))
        out.push_back(std::stod(item));
    return out;
}

std::vector<std::uint32_t> parse_uint_list(const std::string& csv) {
    std::vector<std::uint32_t> out;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ','))
        out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    return out;
}

void print_report(const pldpc::GirthReport& report) {
    if (report.acyclic) {
        std::cout << "girth=acyclic\n";
        return;
    }
    std::cout << "girth=" << (report.lower_bound ? ">=" : "") << report.girth
              << " multiplicity=" << report.multiplicity << " elapsed=" << report.elapsed_seconds
              << "s\n";
}

int run_construct(const std::string& n_text, const std::string& rate_text, std::uint64_t seed,
                  int girth_target, const std::string& out_prefix, std::uint64_t budget,
                  std::uint32_t population, std::uint32_t restarts) {
    pldpc::CodeSpec spec;
    spec.n = std::stoull(n_text);
    spec.rate = pldpc::Rational::parse(rate_text);
    spec.seed = seed;
    if (girth_target > 0)
        spec.girth_target = girth_target;

    pldpc::CgaParams params;
    params.max_evaluations = budget;
    params.virtual_population = population;
    params.restarts = restarts;

    std::ofstream log(out_prefix + "_log.csv");
    if (!log)
        throw pldpc::IoError("cannot write " + out_prefix + "_log.csv");
    log << "eval_index,girth,multiplicity,best_so_far\n";
    auto logger = [&log](const pldpc::EvalLogRow& row) {
        log << row.eval_index << ',' << row.girth << ',' << row.multiplicity << ','
            << row.best_girth << '\n';
    };

    pldpc::QcParityCheck qc = pldpc::construct(spec, params, logger);
    pldpc::write_shift_table(std::filesystem::path(out_prefix + ".shift"), qc);
    pldpc::write_alist(std::filesystem::path(out_prefix + ".alist"), qc.h);

    pldpc::GirthReport girth_report =
        qc.is_pure_qc() ? pldpc::qc_girth(qc, params.girth_cap)
                        : pldpc::girth_up_to(pldpc::from_parity_check(qc.h), params.girth_cap);
    std::cout << "constructed " << qc.h.rows() << "x" << qc.h.cols() << " H, v=" << qc.v
              << ", N_tx=" << qc.n_tx << ", K=" << qc.k << ", rate=" << qc.achieved_rate().str()
              << "\n";
    print_report(girth_report);
    if (spec.girth_target && !girth_report.acyclic && girth_report.girth < *spec.girth_target)
        std::cerr << "warning: girth target " << *spec.girth_target << " not met\n";
    std::cout << "wrote " << out_prefix << ".shift, " << out_prefix << ".alist, " << out_prefix
              << "_log.csv\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive quasi-cyclic protograph LDPC codes for distributed transmit beamforming"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "build a code from (N, rate, seed)");
    std::string n_text, rate_text, out_prefix;
    std::uint64_t seed = 0, budget = 200000;
    std::uint32_t population = 255, restarts = 4;
    int girth_target = 0;
    construct->add_option("--n", n_text, "transmitted block-length in bits")->required();
    construct->add_option("--rate", rate_text, "code rate, e.g. 1/2")->required();
    construct->add_option("--seed", seed, "construction key")->required();
    construct->add_option("--girth-target", girth_target, "warn if the final girth is below this");
    construct->add_option("--out-prefix", out_prefix, "output path prefix")->required();
    construct->add_option("--budget", budget, "fitness evaluation budget");
    construct->add_option("--pop", population, "virtual population (update step 1/n)");
    construct->add_option("--restarts", restarts, "probability-vector restarts");

    // girth
    auto* girth_cmd = app.add_subcommand("girth", "girth of a stored parity-check matrix");
    std::string alist_path;
    girth_cmd->add_option("--alist", alist_path, "alist file")->required();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run a Monte Carlo BER campaign");
    std::string config_path;
    simulate->add_option("--config", config_path, "campaign file (key=value lines)")->required();

    // analytic
    auto* analytic = app.add_subcommand("analytic", "closed-form uncoded DTB BER table");
    std::string m_csv, ebn0_csv;
    analytic->add_option("--m-list", m_csv, "node counts, comma-separated")->required();
    analytic->add_option("--ebn0-list", ebn0_csv, "Eb/N0 values in dB, comma-separated")->required();

    // min-nodes
    auto* min_nodes_cmd = app.add_subcommand("min-nodes", "nodes needed for a target BER");
    double ebn0 = 0.0, target_ber = 1e-5, tolerance = 0.05;
    min_nodes_cmd->add_option("--ebn0", ebn0, "Eb/N0 in dB")->required();
    min_nodes_cmd->add_option("--target-ber", target_ber, "target bit error rate")->required();
    min_nodes_cmd->add_option("--tolerance", tolerance, "relative slack on the comparison");

    // siso
    auto* siso = app.add_subcommand("siso", "closed-form SISO Rayleigh BER table");
    std::string siso_csv;
    siso->add_option("--ebn0-list", siso_csv, "Eb/N0 values in dB, comma-separated")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*construct)
            return run_construct(n_text, rate_text, seed, girth_target, out_prefix, budget,
                                 population, restarts);
        if (*girth_cmd) {
            pldpc::BitMatrix h = pldpc::read_alist(std::filesystem::path(alist_path));
            print_report(pldpc::girth(pldpc::from_parity_check(h)));
            return 0;
        }
        if (*simulate) {
            pldpc::Campaign campaign = pldpc::load_campaign(std::filesystem::path(config_path));
            auto records = pldpc::run_campaign(campaign);
            std::cout << pldpc::kBerCsvHeader << '\n';
            for (const auto& rec : records) {
                std::cout << pldpc::to_csv_row(rec) << '\n';
                if (rec.upper_bound_only)
                    std::cerr << "note: M=" << rec.m << " Eb/N0=" << rec.ebn0_db
                              << " dB saw no errors; the BER value is an upper bound only\n";
            }
            std::cout << "results appended to " << campaign.out << '\n';
            return 0;
        }
        if (*analytic) {
            std::cout << "M,ebn0_db,ber\n";
            for (std::uint32_t m : parse_uint_list(m_csv))
                for (double e : parse_double_list(ebn0_csv))
                    std::cout << m << ',' << e << ',' << pldpc::uncoded_dtb_ber(m, e) << '\n';
            return 0;
        }
        if (*min_nodes_cmd) {
            std::cout << pldpc::min_nodes(ebn0, target_ber, tolerance) << '\n';
            return 0;
        }
        if (*siso) {
            std::cout << "ebn0_db,ber\n";
            for (double e : parse_double_list(siso_csv))
                std::cout << e << ',' << pldpc::siso_rayleigh_ber(e) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
