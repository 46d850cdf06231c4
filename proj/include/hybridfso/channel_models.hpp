#ifndef HYBRIDFSO_CHANNEL_MODELS_HPP
#define HYBRIDFSO_CHANNEL_MODELS_HPP

#include <cmath>
#include <string>

#include "errors.hpp"
#include "random.hpp"

namespace hybridfso {

/// Optical link in saturated turbulence.
///
/// Each receive aperture sees an irradiance I with a negative exponential law
/// of rate `lambda` (mean 1/lambda, variance 1/lambda^2). `avg_snr` is the
/// linear average electrical SNR at the input of the equal-gain combiner; the
/// photodetector responsivity, symbol energy and noise variance are folded
/// into it.
class FsoParams {
public:
    FsoParams(double lambda, double avg_snr) : lambda_(lambda), avg_snr_(avg_snr)
    {
        detail::require(std::isfinite(lambda) && lambda > 0.0,
                        "FsoParams: lambda must be positive, got " + std::to_string(lambda));
        detail::require(std::isfinite(avg_snr) && avg_snr > 0.0,
                        "FsoParams: avg_snr must be positive, got " + std::to_string(avg_snr));
    }

    double lambda() const noexcept { return lambda_; }
    double avg_snr() const noexcept { return avg_snr_; }

private:
    double lambda_;
    double avg_snr_;
};

/// Rayleigh-faded RF link. `avg_snr` is the mean of each branch SNR, which is
/// exponentially distributed; the Rayleigh scale is absorbed into it.
class RfParams {
public:
    explicit RfParams(double avg_snr) : avg_snr_(avg_snr)
    {
        detail::require(std::isfinite(avg_snr) && avg_snr > 0.0,
                        "RfParams: avg_snr must be positive, got " + std::to_string(avg_snr));
    }

    double avg_snr() const noexcept { return avg_snr_; }

private:
    double avg_snr_;
};

/// M receive branches on each link, an outage threshold, and both links.
/// A zero threshold is accepted and yields zero outage everywhere.
class SystemConfig {
public:
    SystemConfig(int m, double gamma_th, FsoParams fso, RfParams rf)
        : m_(m), gamma_th_(gamma_th), fso_(fso), rf_(rf)
    {
        detail::require(m >= 1, "SystemConfig: m must be >= 1, got " + std::to_string(m));
        detail::require(std::isfinite(gamma_th) && gamma_th >= 0.0,
                        "SystemConfig: gamma_th must be nonnegative, got " +
                            std::to_string(gamma_th));
    }

    int m() const noexcept { return m_; }
    double gamma_th() const noexcept { return gamma_th_; }
    const FsoParams& fso() const noexcept { return fso_; }
    const RfParams& rf() const noexcept { return rf_; }

private:
    int m_;
    double gamma_th_;
    FsoParams fso_;
    RfParams rf_;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

/// Inverse-CDF map of a uniform u in (0, 1] to an irradiance.
inline double irradiance_from_uniform(const FsoParams& params, double u)
{
    return -std::log(u) / params.lambda();
}

/// Inverse-CDF map of a uniform u in (0, 1] to a Rayleigh branch SNR.
inline double rayleigh_branch_snr_from_uniform(const RfParams& params, double u)
{
    return -std::log(u) * params.avg_snr();
}

template <Engine64 G>
double sample_irradiance(const FsoParams& params, G& rng)
{
    return irradiance_from_uniform(params, uniform_open_closed(rng));
}

/// Branch SNR drawn directly as exponential with mean avg_snr, which is the
/// law of avg_snr * r^2 for a unit-power Rayleigh amplitude r.
template <Engine64 G>
double sample_rayleigh_branch_snr(const RfParams& params, G& rng)
{
    return rayleigh_branch_snr_from_uniform(params, uniform_open_closed(rng));
}

inline double irradiance_pdf(const FsoParams& params, double z)
{
    detail::require(z >= 0.0, "irradiance_pdf: z must be nonnegative");
    return params.lambda() * std::exp(-params.lambda() * z);
}

} // namespace hybridfso

#endif // HYBRIDFSO_CHANNEL_MODELS_HPP
