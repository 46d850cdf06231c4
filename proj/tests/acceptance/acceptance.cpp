// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hybridfso/hybridfso.hpp"
#include "oracles/quadrature.hpp"

using namespace hybridfso;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

const std::vector<int> kBranches{1, 2, 3, 4};
const std::vector<double> kLambdas{0.5, 1.0, 2.0};
const double kThresholdDb = 10.0;

std::vector<double> grid_snr_db()
{
    std::vector<double> out;
    for (double db = 0.0; db <= 40.0; db += 5.0) out.push_back(db);
    return out;
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Criterion 1: closed-form FSO outage against adaptive quadrature.
Outcome oracle_equivalence()
{
    const auto start = Clock::now();
    double worst = 0.0;
    int points = 0;
    for (int m : kBranches) {
        for (double lambda : kLambdas) {
            for (double db : grid_snr_db()) {
                const SystemConfig cfg = make_config(m, lambda, db, kThresholdDb);
                const double closed = fso_outage(cfg).probability;
                const double quad = oracle::fso_outage_quadrature(cfg);
                const double meijer = fso_outage_meijer(cfg).probability;
                worst = std::max({worst, std::abs(closed - quad) / quad, std::abs(meijer - quad) / quad});
                ++points;
            }
        }
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-8 && elapsed <= 10.0,
            std::to_string(points) + " points, max rel err " + fmt("%.2e", worst) + " (<= 1e-8), " +
                fmt("%.3f", elapsed) + " s (<= 10 s)"};
}

// Criterion 2: finite-sum RF outage against the incomplete gamma.
Outcome erlang_identity()
{
    const auto start = Clock::now();
    double worst = 0.0;
    for (int m : kBranches) {
        for (double lambda : kLambdas) {
            for (double db : grid_snr_db()) {
                const SystemConfig cfg = make_config(m, lambda, db, kThresholdDb);
                const double x = cfg.gamma_th() / cfg.rf().avg_snr();
                const double p = regularized_lower_gamma(m, x);
                worst = std::max({worst, std::abs(rf_outage(cfg).probability - p),
                                  std::abs(detail::erlang_cdf_finite_sum(m, x) - p)});
            }
        }
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-12 && elapsed <= 1.0,
            "max abs err " + fmt("%.2e", worst) + " (<= 1e-12), " + fmt("%.4f", elapsed) + " s (<= 1 s)"};
}

struct McPoint {
    OutageResult fso, rf, hybrid;
    double closed_fso, closed_rf, closed_hybrid;
};

using GridKey = std::tuple<int, double, double>;

// Shared by criteria 3 and 4. Simulates every system whose closed form is at
// least 1e-4 at the point; the others are left with zero samples.
std::map<GridKey, McPoint> simulate_grid(std::uint64_t n, double& elapsed)
{
    const auto start = Clock::now();
    std::map<GridKey, McPoint> out;
    std::uint64_t seed = 20240601;
    for (int m : kBranches) {
        for (double lambda : kLambdas) {
            for (double db : grid_snr_db()) {
                const SystemConfig cfg = make_config(m, lambda, db, kThresholdDb);
                McPoint p{};
                p.closed_fso = fso_outage(cfg).probability;
                p.closed_rf = rf_outage(cfg).probability;
                p.closed_hybrid = hybrid_outage(cfg).probability;
                if (p.closed_fso >= kMcCheckFloor) p.fso = mc_outage(cfg, System::fso, {n, ++seed, 1});
                if (p.closed_rf >= kMcCheckFloor) p.rf = mc_outage(cfg, System::rf, {n, ++seed, 1});
                if (p.closed_hybrid >= kMcCheckFloor) p.hybrid = mc_outage(cfg, System::hybrid, {n, ++seed, 1});
                out[{m, lambda, db}] = p;
            }
        }
    }
    elapsed = seconds_since(start);
    return out;
}

Outcome monte_carlo_end_to_end(const std::map<GridKey, McPoint>& grid, double elapsed)
{
    int checked = 0;
    int failed = 0;
    double worst = 0.0;
    auto check = [&](const OutageResult& mc, double closed) {
        if (closed < kMcCheckFloor) return;
        ++checked;
        const double z = std::abs(mc.probability - closed) / mc.ci_halfwidth;
        worst = std::max(worst, z);
        if (!(z <= kMcCiMultiple)) ++failed;
    };
    for (const auto& [key, p] : grid) {
        check(p.fso, p.closed_fso);
        check(p.rf, p.closed_rf);
        check(p.hybrid, p.closed_hybrid);
    }
    return {failed == 0 && elapsed <= 300.0,
            std::to_string(checked) + " estimates at N=1e7, " + std::to_string(failed) +
                " outside 4*CI, worst " + fmt("%.2f", worst) + "*CI, " + fmt("%.1f", elapsed) +
                " s (<= 300 s)"};
}

Outcome product_law(const std::map<GridKey, McPoint>& grid)
{
    double worst_closed = 0.0;
    for (int m : kBranches) {
        for (double lambda : kLambdas) {
            for (double db : grid_snr_db()) {
                const SystemConfig cfg = make_config(m, lambda, db, kThresholdDb);
                const double product = fso_outage(cfg).probability * rf_outage(cfg).probability;
                worst_closed = std::max(worst_closed, std::abs(hybrid_outage(cfg).probability - product));
            }
        }
    }
    int checked = 0;
    int failed = 0;
    double worst = 0.0;
    for (const auto& [key, p] : grid) {
        if (p.hybrid.n_samples == 0 || p.fso.n_samples == 0 || p.rf.n_samples == 0) continue;
        ++checked;
        const double product = p.fso.probability * p.rf.probability;
        const double product_ci = std::hypot(p.rf.probability * p.fso.ci_halfwidth,
                                             p.fso.probability * p.rf.ci_halfwidth);
        const double combined = std::hypot(p.hybrid.ci_halfwidth, product_ci);
        const double z = std::abs(p.hybrid.probability - product) / combined;
        worst = std::max(worst, z);
        if (!(z <= kMcCiMultiple)) ++failed;
    }
    return {worst_closed <= 1e-15 && failed == 0 && checked > 0,
            "closed-form max |hybrid - product| " + fmt("%.1e", worst_closed) + " (<= 1e-15); " +
                std::to_string(checked) + " MC points, worst " + fmt("%.2f", worst) + "*combined CI"};
}

// Criterion 5: 50-bin histograms of both combiner outputs against the
// densities, bin masses obtained by quadrature of the density.
Outcome pdf_validation()
{
    const std::uint64_t n = 1'000'000;
    const int bins = 50;
    const double avg = 10.0;
    const double lambda = 1.0;
    int checked = 0;
    int failed = 0;
    double worst = 0.0;
    std::uint64_t seed = 555;
    for (int m : {1, 2, 3}) {
        const SystemConfig cfg(m, 1.0, FsoParams(lambda, avg), RfParams(avg));
        const double sum_hi = (m + 4.0 * std::sqrt(static_cast<double>(m))) / lambda;
        const BinSpec fso_bins{0.0, avg / m * sum_hi * sum_hi, bins};
        const BinSpec rf_bins{0.0, avg * (m + 4.0 * std::sqrt(static_cast<double>(m))), bins};
        for (Link link : {Link::fso, Link::rf}) {
            const BinSpec& spec = link == Link::fso ? fso_bins : rf_bins;
            const Histogram h = mc_snr_histogram(cfg, link, {n, ++seed, 1}, spec);
            for (int i = 0; i < bins; ++i) {
                const double lo = spec.edge(i);
                const double hi = spec.edge(i + 1);
                double p = 0.0;
                if (link == Link::fso) {
                    p = oracle::integrate([&](double u) { return 2.0 * u * fso_snr_pdf(cfg, u * u); },
                                          std::sqrt(lo), std::sqrt(hi), 1e-12);
                } else {
                    p = oracle::integrate([&](double g) { return rf_snr_pdf(cfg, g); }, lo, hi, 1e-12);
                }
                const double sigma = std::sqrt(n * p * (1.0 - p));
                const double z = std::abs(static_cast<double>(h.counts[i]) - n * p) / sigma;
                worst = std::max(worst, z);
                ++checked;
                if (!(z <= 4.0)) ++failed;
            }
        }
    }
    return {failed == 0, std::to_string(checked) + " bins (M=1..3, both links, N=1e6), " + std::to_string(failed) +
                             " outside 4 sigma, worst " + fmt("%.2f", worst) + " sigma"};
}

// Criterion 6: qualitative shape of the three published figures.
Outcome figure_reproduction()
{
    SweepSpec spec;
    spec.snr_db = {0.0, 50.0, 1.0};
    spec.gamma_th_db = kThresholdDb;
    spec.m_values = {1, 2};
    spec.lambda_values = {0.5, 1.0};
    spec.systems = {System::hybrid, System::fso, System::rf};
    const auto rows = run_sweep(spec);

    std::map<std::tuple<System, int, double>, std::vector<double>> curves;
    for (const SweepRow& r : rows) curves[{r.system, r.m, r.lambda}].push_back(r.pout_closed);

    int violations = 0;
    for (const auto& [key, curve] : curves) {
        for (std::size_t i = 1; i < curve.size(); ++i) {
            if (curve[i] > curve[i - 1]) ++violations;
        }
    }
    for (double lambda : spec.lambda_values) {
        const auto& m1 = curves[{System::hybrid, 1, lambda}];
        const auto& m2 = curves[{System::hybrid, 2, lambda}];
        for (std::size_t i = 0; i < m1.size(); ++i) {
            if (!(m2[i] < m1[i])) ++violations;
        }
        for (int m : spec.m_values) {
            const auto& h = curves[{System::hybrid, m, lambda}];
            const auto& f = curves[{System::fso, m, lambda}];
            const auto& r = curves[{System::rf, m, lambda}];
            for (std::size_t i = 0; i < h.size(); ++i) {
                if (h[i] > f[i] || h[i] > r[i]) ++violations;
            }
        }
    }
    return {violations == 0, std::to_string(rows.size()) +
                                 " sweep rows; monotone, M=2 below M=1, hybrid below both links; " +
                                 std::to_string(violations) + " violations"};
}

// Criterion 7: report only.
Outcome claims()
{
    SweepSpec spec;
    spec.gamma_th_db = kThresholdDb;
    const auto results = claims_report(spec);
    std::ostringstream report;
    write_claims_report(report, spec, results);
    std::string detail = "report-only;";
    bool shown = true;
    for (const ClaimResult& c : results) {
        detail += " " + c.name + ": measured " + fmt("%.2f", c.measured_gap_db()) + " dB vs quoted about " +
                  fmt("%.0f", c.paper_gap_db) + " dB (" + (c.agrees() ? "agrees" : "discrepancy noted") + ");";
        shown = shown && report.str().find(c.name) != std::string::npos;
    }
    return {shown && results.size() == 2, detail};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Criterion 8: byte-identical CSV from two identical CLI runs.
Outcome determinism()
{
    const std::string a = "acceptance_determinism_a.csv";
    const std::string b = "acceptance_determinism_b.csv";
    const std::string base = std::string(HYBRIDFSO_CLI_PATH) + " sweep --mc-samples 1e6 --seed 42 --workers 4";
    const int ra = std::system((base + " --out " + a + " 2>/dev/null").c_str());
    const int rb = std::system((base + " --out " + b + " 2>/dev/null").c_str());
    const std::string ca = slurp(a);
    const std::string cb = slurp(b);
    std::remove(a.c_str());
    std::remove(b.c_str());
    const bool same = ra == 0 && rb == 0 && !ca.empty() && ca == cb;
    return {same, "two runs of `sweep --mc-samples 1e6 --seed 42 --workers 4`: " + std::to_string(ca.size()) +
                      " bytes, " + (same ? "identical" : "DIFFERENT or failed")};
}

} // namespace

int main()
{
    int failures = 0;
    auto report = [&](const char* id, const char* title, const Outcome& o) {
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ' ' << title << ": " << o.detail << std::endl;
        if (!o.pass) ++failures;
    };

    report("AC1", "closed form vs quadrature", oracle_equivalence());
    report("AC2", "Erlang identity", erlang_identity());
    double mc_elapsed = 0.0;
    const auto grid = simulate_grid(10'000'000, mc_elapsed);
    report("AC3", "Monte Carlo end-to-end", monte_carlo_end_to_end(grid, mc_elapsed));
    report("AC4", "product law", product_law(grid));
    report("AC5", "pdf validation", pdf_validation());
    report("AC6", "figure reproduction", figure_reproduction());
    report("AC7", "published-claim report", claims());
    report("AC8", "determinism", determinism());

    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
