#ifndef HYBRIDFSO_EXPERIMENTS_HPP
#define HYBRIDFSO_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "channel_models.hpp"
#include "montecarlo.hpp"
#include "random.hpp"

namespace hybridfso {

inline constexpr const char* kToolVersion = "0.1.0";

/// Invalid sweep description; the message names the offending field.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Average-SNR grid in dB, endpoints inclusive.
struct SnrGrid {
    double start = 0.0;
    double stop = 50.0;
    double step = 1.0;

    std::vector<double> points() const
    {
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = start + step * static_cast<double>(i);
        }
        return out;
    }
};

/// Parses "start:stop:step" (dB).
inline SnrGrid parse_snr_grid(const std::string& text)
{
    SnrGrid grid;
    char colon1 = 0;
    char colon2 = 0;
    std::istringstream in(text);
    if (!(in >> grid.start >> colon1 >> grid.stop >> colon2 >> grid.step) || colon1 != ':' ||
        colon2 != ':' || !(in >> std::ws).eof()) {
        throw UsageError("snr_db: expected start:stop:step, got '" + text + "'");
    }
    return grid;
}

/// Sweep over average SNR with both links at the same average SNR.
struct SweepSpec {
    SnrGrid snr_db;
    double gamma_th_db = 10.0;
    std::vector<int> m_values{1};
    std::vector<double> lambda_values{1.0};
    std::vector<System> systems{System::hybrid};
    std::optional<McSettings> mc;

    void validate() const
    {
        if (!std::isfinite(snr_db.start) || !std::isfinite(snr_db.stop) || !std::isfinite(snr_db.step) ||
            !(snr_db.step > 0.0)) {
            throw UsageError("snr_db: step must be positive and finite");
        }
        if (snr_db.start > snr_db.stop) {
            throw UsageError("snr_db: start must not exceed stop");
        }
        if (!std::isfinite(gamma_th_db)) {
            throw UsageError("gamma_th_db: must be finite");
        }
        if (m_values.empty()) {
            throw UsageError("m_values: list is empty");
        }
        for (int m : m_values) {
            if (m < 1) {
                throw UsageError("m_values: every m must be >= 1, got " + std::to_string(m));
            }
        }
        if (lambda_values.empty()) {
            throw UsageError("lambda_values: list is empty");
        }
        for (double lambda : lambda_values) {
            if (!std::isfinite(lambda) || !(lambda > 0.0)) {
                throw UsageError("lambda_values: every lambda must be positive");
            }
        }
        if (systems.empty()) {
            throw UsageError("systems: list is empty");
        }
        if (mc) {
            if (mc->n_samples < 1) {
                throw UsageError("mc.n_samples: must be >= 1");
            }
            if (mc->workers < 1) {
                throw UsageError("mc.workers: must be >= 1");
            }
        }
    }
};

inline SystemConfig make_config(int m, double lambda, double snr_db, double gamma_th_db)
{
    const double avg = db_to_linear(snr_db);
    return SystemConfig(m, db_to_linear(gamma_th_db), FsoParams(lambda, avg), RfParams(avg));
}

struct SweepRow {
    System system;
    int m;
    double lambda;
    double snr_db;
    double pout_closed;
    std::optional<OutageResult> mc;
};

/// Seed used for the Monte Carlo estimate of row `row_index`.
inline std::uint64_t row_seed(std::uint64_t seed, std::uint64_t row_index)
{
    std::uint64_t state = seed ^ (row_index * 0x9e3779b97f4a7c15ULL);
    return splitmix64(state);
}

/// One row per (system, m, lambda, snr point), in that nesting order.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec)
{
    spec.validate();
    const std::vector<double> snrs = spec.snr_db.points();
    std::vector<SweepRow> rows;
    rows.reserve(spec.systems.size() * spec.m_values.size() * spec.lambda_values.size() * snrs.size());
    for (System system : spec.systems) {
        for (int m : spec.m_values) {
            for (double lambda : spec.lambda_values) {
                for (double snr : snrs) {
                    const SystemConfig cfg = make_config(m, lambda, snr, spec.gamma_th_db);
                    SweepRow row{system, m, lambda, snr, closed_form_outage(cfg, system).probability,
                                 std::nullopt};
                    if (spec.mc) {
                        McSettings mc = *spec.mc;
                        mc.seed = row_seed(spec.mc->seed, rows.size());
                        row.mc = mc_outage(cfg, system, mc);
                    }
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

namespace detail {

inline std::string format_number(const char* fmt, double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    return buf;
}

inline std::string format_general(double value) { return format_number("%.10g", value); }
inline std::string format_probability(double value) { return format_number("%.12e", value); }

template <typename T, typename F>
std::string join(const std::vector<T>& items, F format)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += format(items[i]);
    }
    return out;
}

} // namespace detail

inline constexpr const char* kSweepCsvHeader = "system,m,lambda,snr_db,pout_closed,pout_mc,mc_ci,n_samples";

/// Writes the sweep as CSV preceded by '#' metadata lines echoing the spec.
/// Output depends only on the spec, so identical specs give identical bytes.
inline void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows)
{
    out << "# tool: hybridfso " << kToolVersion << '\n';
    out << "# snr_db: " << detail::format_general(spec.snr_db.start) << ':'
        << detail::format_general(spec.snr_db.stop) << ':' << detail::format_general(spec.snr_db.step)
        << '\n';
    out << "# gamma_th_db: " << detail::format_general(spec.gamma_th_db) << '\n';
    out << "# m: " << detail::join(spec.m_values, [](int m) { return std::to_string(m); }) << '\n';
    out << "# lambda: " << detail::join(spec.lambda_values, detail::format_general) << '\n';
    out << "# system: "
        << detail::join(spec.systems, [](System s) { return std::string(to_string(s)); }) << '\n';
    if (spec.mc) {
        out << "# mc_samples: " << spec.mc->n_samples << '\n';
        out << "# seed: " << spec.mc->seed << '\n';
        out << "# workers: " << spec.mc->workers << '\n';
        out << "# rng: mt19937_64, row seed = splitmix64(seed, row), shard streams derived per worker\n";
        out << "# mc_ci: 95% normal-approximation half-width\n";
    } else {
        out << "# mc_samples: none\n";
    }
    out << kSweepCsvHeader << '\n';
    for (const SweepRow& row : rows) {
        out << to_string(row.system) << ',' << row.m << ',' << detail::format_general(row.lambda) << ','
            << detail::format_general(row.snr_db) << ',' << detail::format_probability(row.pout_closed)
            << ',';
        if (row.mc) {
            out << detail::format_probability(row.mc->probability) << ','
                << detail::format_probability(row.mc->ci_halfwidth) << ',' << row.mc->n_samples;
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

/// Closed-form probabilities below this are too rare to check by simulation.
inline constexpr double kMcCheckFloor = 1e-4;
inline constexpr double kMcCiMultiple = 4.0;

/// True when the row has no Monte Carlo estimate, the closed form is below
/// the check floor, or the estimate lies within 4 half-widths of it.
inline bool mc_agrees(const SweepRow& row)
{
    if (!row.mc || row.pout_closed < kMcCheckFloor) {
        return true;
    }
    return std::abs(row.mc->probability - row.pout_closed) <= kMcCiMultiple * row.mc->ci_halfwidth;
}

//------------------------------------------------------------------------------
// Inverse problem and the figure claims
//------------------------------------------------------------------------------

inline constexpr double kSearchLowDb = -20.0;
inline constexpr double kSearchHighDb = 100.0;

/// Average SNR (dB) at which the closed-form outage equals `target_pout`.
///
/// Bisection on log outage over [-20, 100] dB; the bracket is narrowed far
/// below 0.01 dB. Throws RangeError if the target is not crossed on that
/// interval.
inline double find_snr_at_target(System system, int m, double lambda, double gamma_th,
                                 double target_pout)
{
    detail::require(target_pout > 0.0 && target_pout < 1.0,
                    "find_snr_at_target: target must lie in (0, 1)");
    const double log_target = std::log(target_pout);
    auto excess = [&](double snr_db) {
        const double avg = db_to_linear(snr_db);
        const SystemConfig cfg(m, gamma_th, FsoParams(lambda, avg), RfParams(avg));
        return std::log(closed_form_outage(cfg, system).probability) - log_target;
    };
    double lo = kSearchLowDb;
    double hi = kSearchHighDb;
    if (!(excess(lo) >= 0.0) || !(excess(hi) <= 0.0)) {
        throw RangeError("find_snr_at_target: target " + detail::format_general(target_pout) +
                         " is not reached on [-20, 100] dB");
    }
    while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct CurveId {
    System system;
    int m;
    double lambda;
};

/// A dB gap between two curves at a target outage, next to the quoted value.
struct ClaimResult {
    std::string name;
    double target_pout;
    CurveId curve_a;
    CurveId curve_b;
    double snr_db_a;
    double snr_db_b;
    double paper_gap_db;

    double measured_gap_db() const { return snr_db_a - snr_db_b; }
    bool agrees() const { return std::abs(measured_gap_db() - paper_gap_db) <= kClaimToleranceDb; }

    static constexpr double kClaimToleranceDb = 1.5;
};

/// The two published gaps: M=1 vs M=2 at 1e-5 (quoted about 8 dB) and
/// lambda=1 vs lambda=0.5 at 1e-3 for M=2 (quoted about 5 dB), all on the
/// hybrid curve. `curve_a` is the weaker configuration, so gaps are positive.
inline std::vector<ClaimResult> claims_report(const SweepSpec& spec)
{
    const double gamma_th = db_to_linear(spec.gamma_th_db);
    auto make = [&](std::string name, double target, CurveId a, CurveId b, double quoted) {
        return ClaimResult{std::move(name),
                           target,
                           a,
                           b,
                           find_snr_at_target(a.system, a.m, a.lambda, gamma_th, target),
                           find_snr_at_target(b.system, b.m, b.lambda, gamma_th, target),
                           quoted};
    };
    return {
        make("m1_vs_m2", 1e-5, {System::hybrid, 1, 1.0}, {System::hybrid, 2, 1.0}, 8.0),
        make("lambda1_vs_lambda0.5", 1e-3, {System::hybrid, 2, 1.0}, {System::hybrid, 2, 0.5}, 5.0),
    };
}

inline std::string describe(const CurveId& curve)
{
    return std::string(to_string(curve.system)) + " M=" + std::to_string(curve.m) +
           " lambda=" + detail::format_general(curve.lambda);
}

inline void write_claims_report(std::ostream& out, const SweepSpec& spec,
                                const std::vector<ClaimResult>& claims)
{
    out << "# tool: hybridfso " << kToolVersion << '\n';
    out << "# gamma_th_db: " << detail::format_general(spec.gamma_th_db) << '\n';
    out << "# agreement band: +/-" << detail::format_general(ClaimResult::kClaimToleranceDb) << " dB\n";
    out << "claim,target_pout,curve_a,snr_db_a,curve_b,snr_db_b,measured_gap_db,paper_gap_db,status\n";
    for (const ClaimResult& c : claims) {
        out << c.name << ',' << detail::format_general(c.target_pout) << ',' << describe(c.curve_a) << ','
            << detail::format_number("%.3f", c.snr_db_a) << ',' << describe(c.curve_b) << ','
            << detail::format_number("%.3f", c.snr_db_b) << ','
            << detail::format_number("%.3f", c.measured_gap_db()) << ','
            << detail::format_general(c.paper_gap_db) << ',' << (c.agrees() ? "agrees" : "discrepancy")
            << '\n';
    }
    for (const ClaimResult& c : claims) {
        if (!c.agrees()) {
            out << "# note: " << c.name << " measures " << detail::format_number("%.2f", c.measured_gap_db())
                << " dB from the closed-form outage, against a quoted gap of about "
                << detail::format_general(c.paper_gap_db)
                << " dB; the quoted value was read off a published figure and is not reproduced by "
                   "the closed form with both links at the same average SNR.\n";
        }
    }
}

} // namespace hybridfso

#endif // HYBRIDFSO_EXPERIMENTS_HPP
