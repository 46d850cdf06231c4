#ifndef HYBRIDFSO_SPECIAL_FUNCTIONS_HPP
#define HYBRIDFSO_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace hybridfso {

//==============================================================================
// Regularized incomplete gamma
//==============================================================================

namespace detail {

inline constexpr double kGammaTolerance = 1e-14;
inline constexpr int kGammaMaxIterations = 500;

// P(a, x) by the power series; used for x < a + 1.
inline double lower_gamma_series(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n <= kGammaMaxIterations; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kGammaTolerance) {
            return sum * std::exp(a * std::log(x) - x - std::lgamma(a));
        }
    }
    throw NumericalError("regularized_lower_gamma: series did not converge for a=" +
                         std::to_string(a) + ", x=" + std::to_string(x));
}

// Q(a, x) by the Legendre continued fraction (modified Lentz); used for x >= a + 1.
inline double upper_gamma_continued_fraction(double a, double x)
{
    constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kGammaMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kGammaTolerance) {
            return std::exp(a * std::log(x) - x - std::lgamma(a)) * h;
        }
    }
    throw NumericalError("regularized_lower_gamma: continued fraction did not converge for a=" +
                         std::to_string(a) + ", x=" + std::to_string(x));
}

} // namespace detail

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
///
/// Series below x = a + 1, continued fraction above. Throws NumericalError
/// rather than returning a partially converged value.
inline double regularized_lower_gamma(double a, double x)
{
    detail::require(std::isfinite(a) && a > 0.0, "regularized_lower_gamma: a must be positive");
    detail::require(!std::isnan(x) && x >= 0.0, "regularized_lower_gamma: x must be nonnegative");
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    if (x < a + 1.0) {
        return detail::clamp_probability(detail::lower_gamma_series(a, x));
    }
    return detail::clamp_probability(1.0 - detail::upper_gamma_continued_fraction(a, x));
}

//==============================================================================
// Meijer G, the two families that appear in the FSO outage derivation
//==============================================================================

/// Arguments of G^{2,0}_{0,2}(z | -; b1, b2).
struct MeijerG2013Args {
    double z;
    double b1 = 0.0;
    double b2 = 0.5;
};

/// Arguments of G^{2,1}_{1,3}(z | a1; b1, b2, b3).
struct MeijerG2113Args {
    double z;
    double a1;
    double b1 = 0.0;
    double b2 = 0.5;
    double b3;

    /// The parameter set produced by integrating the FSO pdf with M branches.
    static MeijerG2113Args for_branches(double z, int m)
    {
        const double half_m = 0.5 * m;
        return {z, 1.0 - half_m, 0.0, 0.5, -half_m};
    }
};

/// G^{2,0}_{0,2}(z | 0, 1/2) = sqrt(pi) * exp(-2 sqrt(z)).
inline double meijer_g_2013(const MeijerG2013Args& args)
{
    detail::require(std::isfinite(args.z) && args.z > 0.0, "meijer_g_2013: z must be positive");
    if (args.b1 != 0.0 || args.b2 != 0.5) {
        throw UnsupportedParameters("meijer_g_2013: only lower parameters (0, 0.5) are supported");
    }
    return std::sqrt(std::numbers::pi) * std::exp(-2.0 * std::sqrt(args.z));
}

/// G^{2,1}_{1,3}(z | 1 - alpha; 0, 1/2, -alpha) for alpha > 0.
///
/// Integrating x^(alpha-1) G^{2,0}_{0,2}(x | 0, 1/2) over [0, z] and
/// substituting u = 2 sqrt(x) turns the integral into a lower incomplete
/// gamma, which gives
///
///   G = sqrt(pi) 2^(1 - 2 alpha) Gamma(2 alpha) z^(-alpha) P(2 alpha, 2 sqrt(z)).
inline double meijer_g_2113(const MeijerG2113Args& args)
{
    detail::require(std::isfinite(args.z) && args.z > 0.0, "meijer_g_2113: z must be positive");
    const double alpha = -args.b3;
    if (args.b1 != 0.0 || args.b2 != 0.5 || !(alpha > 0.0) ||
        std::abs(args.a1 - (1.0 - alpha)) > 1e-15) {
        throw UnsupportedParameters(
            "meijer_g_2113: only the pattern (1 - a; 0, 0.5, -a) with a > 0 is supported");
    }
    const double log_prefactor = 0.5 * std::log(std::numbers::pi) +
                                 (1.0 - 2.0 * alpha) * std::numbers::ln2 +
                                 std::lgamma(2.0 * alpha) - alpha * std::log(args.z);
    return std::exp(log_prefactor) * regularized_lower_gamma(2.0 * alpha, 2.0 * std::sqrt(args.z));
}

} // namespace hybridfso

#endif // HYBRIDFSO_SPECIAL_FUNCTIONS_HPP
