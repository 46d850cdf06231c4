// Command-line front end: SNR sweeps, inverse solves, the figure-claim report
// and a Monte Carlo verification gate.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hybridfso/hybridfso.hpp"

namespace {

using namespace hybridfso;

struct Options {
    std::vector<int> m{1};
    std::vector<double> lambda{1.0};
    double gamma_th_db = 10.0;
    std::string snr_db = "0:50:1";
    std::vector<std::string> system{"hybrid"};
    std::string mc_samples;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string out;
    double target = 0.0;
};

std::uint64_t parse_sample_count(const std::string& text)
{
    double value = 0.0;
    try {
        std::size_t used = 0;
        value = std::stod(text, &used);
        if (used != text.size()) {
            throw UsageError("");
        }
    } catch (const std::exception&) {
        throw UsageError("mc_samples: not a number: '" + text + "'");
    }
    if (!(value >= 1.0) || value != std::floor(value) || value > 1e15) {
        throw UsageError("mc_samples: must be a positive integer, got '" + text + "'");
    }
    return static_cast<std::uint64_t>(value);
}

SweepSpec build_spec(const Options& opt, bool force_mc)
{
    SweepSpec spec;
    spec.snr_db = parse_snr_grid(opt.snr_db);
    spec.gamma_th_db = opt.gamma_th_db;
    spec.m_values = opt.m;
    spec.lambda_values = opt.lambda;
    spec.systems.clear();
    for (const std::string& name : opt.system) {
        const auto system = parse_system(name);
        if (!system) {
            throw UsageError("systems: unknown system '" + name + "' (expected hybrid, fso or rf)");
        }
        spec.systems.push_back(*system);
    }
    if (!opt.mc_samples.empty() || force_mc) {
        McSettings mc;
        mc.n_samples = opt.mc_samples.empty() ? 1'000'000 : parse_sample_count(opt.mc_samples);
        mc.seed = opt.seed;
        mc.workers = opt.workers;
        spec.mc = mc;
    }
    spec.validate();
    return spec;
}

// Runs `write` against --out when given, stdout otherwise.
template <typename Writer>
void emit(const Options& opt, Writer write)
{
    if (opt.out.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) {
        throw UsageError("out: cannot open '" + opt.out + "' for writing");
    }
    write(file);
}

void warn_rare_events(const std::vector<SweepRow>& rows)
{
    for (const SweepRow& row : rows) {
        if (row.mc && row.pout_closed * static_cast<double>(row.mc->n_samples) < 100.0) {
            std::cerr << "warning: " << to_string(row.system) << " m=" << row.m << " lambda=" << row.lambda
                      << " snr_db=" << row.snr_db << ": fewer than 100 expected outage events at N="
                      << row.mc->n_samples << '\n';
        }
    }
}

int run_sweep_command(const Options& opt)
{
    const SweepSpec spec = build_spec(opt, false);
    const auto rows = run_sweep(spec);
    warn_rare_events(rows);
    emit(opt, [&](std::ostream& out) { write_sweep_csv(out, spec, rows); });
    return 0;
}

int run_solve_command(const Options& opt)
{
    const SweepSpec spec = build_spec(opt, false);
    if (spec.m_values.size() != 1 || spec.lambda_values.size() != 1 || spec.systems.size() != 1) {
        throw UsageError("solve: pass exactly one --m, --lambda and --system");
    }
    const double snr = find_snr_at_target(spec.systems.front(), spec.m_values.front(),
                                          spec.lambda_values.front(), db_to_linear(spec.gamma_th_db),
                                          opt.target);
    emit(opt, [&](std::ostream& out) {
        out << "system,m,lambda,gamma_th_db,target_pout,snr_db\n"
            << to_string(spec.systems.front()) << ',' << spec.m_values.front() << ','
            << detail::format_general(spec.lambda_values.front()) << ','
            << detail::format_general(spec.gamma_th_db) << ',' << detail::format_general(opt.target) << ','
            << detail::format_number("%.4f", snr) << '\n';
    });
    return 0;
}

int run_claims_command(const Options& opt)
{
    SweepSpec spec;
    spec.gamma_th_db = opt.gamma_th_db;
    const auto claims = claims_report(spec);
    emit(opt, [&](std::ostream& out) { write_claims_report(out, spec, claims); });
    return 0;
}

int run_mc_verify_command(const Options& opt)
{
    const SweepSpec spec = build_spec(opt, true);
    const auto rows = run_sweep(spec);
    warn_rare_events(rows);
    std::size_t checked = 0;
    std::size_t failed = 0;
    for (const SweepRow& row : rows) {
        if (row.pout_closed >= kMcCheckFloor) {
            ++checked;
        }
        if (!mc_agrees(row)) {
            ++failed;
            std::cerr << "FAIL " << to_string(row.system) << " m=" << row.m << " lambda=" << row.lambda
                      << " snr_db=" << row.snr_db << " closed=" << row.pout_closed
                      << " mc=" << row.mc->probability << " ci=" << row.mc->ci_halfwidth << '\n';
        }
    }
    emit(opt, [&](std::ostream& out) { write_sweep_csv(out, spec, rows); });
    std::cerr << "mc-verify: " << checked << " rows checked, " << failed << " outside "
              << kMcCiMultiple << "*CI\n";
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage probability of a hybrid FSO/RF link with receive diversity"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));
    app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);

    Options opt;
    app.add_option("--m", opt.m, "Receive branches per link (comma-separated list)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    app.add_option("--lambda", opt.lambda, "Negative exponential turbulence rate (comma-separated list)")
        ->delimiter(',');
    app.add_option("--gamma-th-db,--gamma_th_db", opt.gamma_th_db, "Outage threshold in dB");
    app.add_option("--snr-db,--snr_db", opt.snr_db, "Average SNR grid start:stop:step in dB");
    app.add_option("--system", opt.system, "hybrid, fso or rf (comma-separated list)")->delimiter(',');
    app.add_option("--mc-samples,--mc_samples", opt.mc_samples, "Monte Carlo realizations per point, e.g. 1e6");
    app.add_option("--seed", opt.seed, "Monte Carlo seed");
    app.add_option("--workers", opt.workers, "Monte Carlo shards (threads)")->check(CLI::PositiveNumber);
    app.add_option("--out", opt.out, "Output file (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "Outage versus average SNR as CSV");
    auto* solve = app.add_subcommand("solve", "Average SNR reaching a target outage");
    solve->add_option("--target", opt.target, "Target outage probability in (0, 1)")->required();
    auto* claims = app.add_subcommand("claims", "Report the published dB gaps against the closed form");
    auto* verify = app.add_subcommand("mc-verify", "Check Monte Carlo against the closed form (exit 1 on failure)");
    for (auto* sub : {sweep, solve, claims, verify}) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) return run_sweep_command(opt);
        if (*solve) return run_solve_command(opt);
        if (*claims) return run_claims_command(opt);
        if (*verify) return run_mc_verify_command(opt);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
