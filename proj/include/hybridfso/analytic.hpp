#ifndef HYBRIDFSO_ANALYTIC_HPP
#define HYBRIDFSO_ANALYTIC_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "channel_models.hpp"
#include "errors.hpp"
#include "special_functions.hpp"

namespace hybridfso {

enum class Method { closed_form, quadrature, monte_carlo };

constexpr std::string_view to_string(Method method) noexcept
{
    switch (method) {
    case Method::closed_form: return "closed_form";
    case Method::quadrature: return "quadrature";
    case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

/// An outage probability and how it was obtained. Deterministic methods carry
/// a zero confidence half-width and zero sample count.
struct OutageResult {
    double probability = 0.0;
    Method method = Method::closed_form;
    double ci_halfwidth = 0.0;
    std::uint64_t n_samples = 0;
};

//------------------------------------------------------------------------------
// Densities
//------------------------------------------------------------------------------

/// Density of the sum of M i.i.d. exponential(lambda) irradiances, i.e. the
/// Erlang(M, lambda) law obtained by inverting (lambda / (s + lambda))^M.
inline double sum_irradiance_pdf(int m, double lambda, double z)
{
    detail::require(m >= 1, "sum_irradiance_pdf: m must be >= 1");
    detail::require(lambda > 0.0, "sum_irradiance_pdf: lambda must be positive");
    detail::require(z >= 0.0, "sum_irradiance_pdf: z must be nonnegative");
    if (z == 0.0) {
        return m == 1 ? lambda : 0.0;
    }
    return std::exp(m * std::log(lambda) + (m - 1) * std::log(z) - lambda * z - std::lgamma(m));
}

/// Density of the EGC output SNR. With c = avg_snr / M the SNR is c S^2 for
/// S ~ Erlang(M, lambda), so
///
///   f(g) = lambda^M g^(M/2 - 1) exp(-lambda sqrt(g / c)) / (2 Gamma(M) c^(M/2)).
///
/// Diverges at g = 0 when M = 1, hence the open domain.
inline double fso_snr_pdf(const SystemConfig& cfg, double gamma)
{
    detail::require(gamma > 0.0, "fso_snr_pdf: gamma must be positive");
    const int m = cfg.m();
    const double lambda = cfg.fso().lambda();
    const double c = cfg.fso().avg_snr() / m;
    const double half_m = 0.5 * m;
    const double log_f = m * std::log(lambda) + (half_m - 1.0) * std::log(gamma) -
                         lambda * std::sqrt(gamma / c) - std::numbers::ln2 - std::lgamma(m) -
                         half_m * std::log(c);
    return std::exp(log_f);
}

/// Density of the MRC output SNR: Erlang(M, 1 / avg_snr).
inline double rf_snr_pdf(const SystemConfig& cfg, double gamma)
{
    detail::require(gamma >= 0.0, "rf_snr_pdf: gamma must be nonnegative");
    const int m = cfg.m();
    const double mean = cfg.rf().avg_snr();
    if (gamma == 0.0) {
        return m == 1 ? 1.0 / mean : 0.0;
    }
    return std::exp((m - 1) * std::log(gamma) - gamma / mean - m * std::log(mean) - std::lgamma(m));
}

//------------------------------------------------------------------------------
// Outage
//------------------------------------------------------------------------------

namespace detail {

// 1 - e^{-x} sum_{k=1}^{M} x^{k-1} / (k-1)!, evaluated term by term.
inline double erlang_cdf_finite_sum(int m, double x)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < m; ++k) {
        term *= x / k;
        sum += term;
    }
    return 1.0 - std::exp(-x) * sum;
}

// The same quantity written as the tail e^{-x} sum_{k>=M} x^k / k!, which
// avoids the cancellation of the finite sum when x is small relative to M.
inline double erlang_cdf_tail_sum(int m, double x)
{
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n <= kGammaMaxIterations; ++n) {
        term *= x / (m + n);
        sum += term;
        if (term < sum * kGammaTolerance) {
            return sum * std::exp(m * std::log(x) - x - std::lgamma(m + 1.0));
        }
    }
    throw NumericalError("rf_outage: tail series did not converge");
}

} // namespace detail

/// FSO-only outage Pr(gamma_FSO <= gamma_th).
///
/// Substituting g = u^2 in the integral of fso_snr_pdf reduces it to the
/// Erlang CDF of the irradiance sum, P(M, lambda sqrt(M gamma_th / avg_snr)).
inline OutageResult fso_outage(const SystemConfig& cfg)
{
    if (cfg.gamma_th() == 0.0) {
        return {};
    }
    const double x = cfg.fso().lambda() * std::sqrt(cfg.m() * cfg.gamma_th() / cfg.fso().avg_snr());
    return {regularized_lower_gamma(cfg.m(), x), Method::closed_form};
}

/// FSO-only outage through the Meijer-G closed form
///
///   lambda^M / (2 sqrt(pi) Gamma(M) c^(M/2)) gamma_th^(M/2)
///       G^{2,1}_{1,3}(lambda^2 gamma_th / (4c) | 1 - M/2; 0, 1/2, -M/2),  c = avg_snr / M.
///
/// Kept as a second evaluator for fso_outage; the two must agree.
inline OutageResult fso_outage_meijer(const SystemConfig& cfg)
{
    if (cfg.gamma_th() == 0.0) {
        return {};
    }
    const int m = cfg.m();
    const double lambda = cfg.fso().lambda();
    const double c = cfg.fso().avg_snr() / m;
    const double th = cfg.gamma_th();
    const double half_m = 0.5 * m;
    const double z = lambda * lambda * th / (4.0 * c);
    const double log_prefactor = m * std::log(lambda) - std::numbers::ln2 -
                                 0.5 * std::log(std::numbers::pi) - std::lgamma(m) -
                                 half_m * std::log(c) + half_m * std::log(th);
    const double g = meijer_g_2113(MeijerG2113Args::for_branches(z, m));
    return {detail::clamp_probability(std::exp(log_prefactor) * g), Method::closed_form};
}

/// RF-only outage Pr(gamma_RF <= gamma_th) = 1 - e^{-x} sum_{k=1}^{M} x^{k-1}/(k-1)!
/// with x = gamma_th / avg_snr.
inline OutageResult rf_outage(const SystemConfig& cfg)
{
    if (cfg.gamma_th() == 0.0) {
        return {};
    }
    const int m = cfg.m();
    const double x = cfg.gamma_th() / cfg.rf().avg_snr();
    const double p = x < m ? detail::erlang_cdf_tail_sum(m, x) : detail::erlang_cdf_finite_sum(m, x);
    return {detail::clamp_probability(p), Method::closed_form};
}

/// Outage after selection combining of independent links: the product of the
/// single-link outages.
inline OutageResult hybrid_outage(const SystemConfig& cfg)
{
    return {fso_outage(cfg).probability * rf_outage(cfg).probability, Method::closed_form};
}

} // namespace hybridfso

#endif // HYBRIDFSO_ANALYTIC_HPP
