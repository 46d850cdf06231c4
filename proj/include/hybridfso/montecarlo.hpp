#ifndef HYBRIDFSO_MONTECARLO_HPP
#define HYBRIDFSO_MONTECARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "analytic.hpp"
#include "channel_models.hpp"
#include "combining.hpp"
#include "errors.hpp"
#include "random.hpp"

namespace hybridfso {

/// Which receiver output an estimate refers to.
enum class System { fso, rf, hybrid };

constexpr std::string_view to_string(System system) noexcept
{
    switch (system) {
    case System::fso: return "fso";
    case System::rf: return "rf";
    case System::hybrid: return "hybrid";
    }
    return "unknown";
}

inline std::optional<System> parse_system(std::string_view name)
{
    if (name == "hybrid") return System::hybrid;
    if (name == "fso" || name == "fso_only") return System::fso;
    if (name == "rf" || name == "rf_only") return System::rf;
    return std::nullopt;
}

/// Closed-form outage of the selected receiver output.
inline OutageResult closed_form_outage(const SystemConfig& cfg, System system)
{
    switch (system) {
    case System::fso: return fso_outage(cfg);
    case System::rf: return rf_outage(cfg);
    case System::hybrid: return hybrid_outage(cfg);
    }
    return {};
}

struct McSettings {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    void validate() const
    {
        detail::require(n_samples >= 1, "McSettings: n_samples must be >= 1");
        detail::require(workers >= 1, "McSettings: workers must be >= 1");
    }
};

/// 95% normal-approximation half-width for a proportion.
inline double proportion_ci_halfwidth(double p, std::uint64_t n)
{
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

namespace detail {

// Draws M irradiances into `scratch` and returns the EGC output SNR.
template <Engine64 G>
double draw_fso_snr(const SystemConfig& cfg, G& rng, std::vector<double>& scratch)
{
    for (double& v : scratch) {
        v = sample_irradiance(cfg.fso(), rng);
    }
    return egc_snr(scratch, cfg.fso().avg_snr());
}

// Draws M Rayleigh branch SNRs into `scratch` and returns the MRC output SNR.
template <Engine64 G>
double draw_rf_snr(const SystemConfig& cfg, G& rng, std::vector<double>& scratch)
{
    for (double& v : scratch) {
        v = sample_rayleigh_branch_snr(cfg.rf(), rng);
    }
    return mrc_snr(scratch);
}

template <Engine64 G>
double draw_output_snr(const SystemConfig& cfg, System system, G& rng, std::vector<double>& scratch)
{
    switch (system) {
    case System::fso: return draw_fso_snr(cfg, rng, scratch);
    case System::rf: return draw_rf_snr(cfg, rng, scratch);
    case System::hybrid: {
        const double fso = draw_fso_snr(cfg, rng, scratch);
        const double rf = draw_rf_snr(cfg, rng, scratch);
        return sc_select(fso, rf);
    }
    }
    return 0.0;
}

inline std::uint64_t shard_size(const McSettings& mc, unsigned shard)
{
    const std::uint64_t base = mc.n_samples / mc.workers;
    return base + (shard < mc.n_samples % mc.workers ? 1 : 0);
}

// Runs `fn(stream, n)` once per shard, each on its own derived stream, and
// returns the per-shard results in shard order.
template <typename ShardFn>
auto run_sharded(const McSettings& mc, ShardFn fn)
{
    using Result = decltype(fn(std::declval<RandomStream&>(), std::uint64_t{}));
    std::vector<Result> results(mc.workers);
    auto job = [&](unsigned shard) {
        RandomStream stream = derive_stream(mc.seed, shard);
        results[shard] = fn(stream, shard_size(mc, shard));
    };
    if (mc.workers == 1) {
        job(0);
        return results;
    }
    {
        std::vector<std::jthread> threads;
        threads.reserve(mc.workers);
        for (unsigned shard = 0; shard < mc.workers; ++shard) {
            threads.emplace_back(job, shard);
        }
    }
    return results;
}

} // namespace detail

/// Empirical outage of the chosen receiver output from `n_samples`
/// independent channel realizations.
///
/// Shard i of `workers` draws from derive_stream(seed, i); the count reduction
/// is order independent, so a fixed (seed, workers) pair always reproduces
/// the same estimate.
inline OutageResult mc_outage(const SystemConfig& cfg, System which, const McSettings& mc)
{
    mc.validate();
    OutageResult result{0.0, Method::monte_carlo, 0.0, mc.n_samples};
    if (cfg.gamma_th() == 0.0) {
        return result;
    }
    const double threshold = cfg.gamma_th();
    const auto counts = detail::run_sharded(mc, [&](RandomStream& rng, std::uint64_t n) {
        std::vector<double> scratch(static_cast<std::size_t>(cfg.m()));
        std::uint64_t outages = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (detail::draw_output_snr(cfg, which, rng, scratch) <= threshold) {
                ++outages;
            }
        }
        return outages;
    });
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) {
        total += c;
    }
    result.probability = static_cast<double>(total) / static_cast<double>(mc.n_samples);
    result.ci_halfwidth = proportion_ci_halfwidth(result.probability, mc.n_samples);
    return result;
}

/// Equal-width bins over [lo, hi).
struct BinSpec {
    double lo = 0.0;
    double hi = 1.0;
    int bins = 50;

    void validate() const
    {
        detail::require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
                        "BinSpec: need finite lo < hi");
        detail::require(lo >= 0.0, "BinSpec: SNR bins must start at or above zero");
        detail::require(bins >= 1, "BinSpec: need at least one bin");
    }

    double width() const noexcept { return (hi - lo) / bins; }
    double edge(int i) const noexcept { return lo + (hi - lo) * i / bins; }
};

/// Sample histogram of a combiner output SNR. Samples outside [lo, hi) are
/// tallied separately so that all masses together sum to one.
struct Histogram {
    BinSpec spec;
    std::vector<std::uint64_t> counts;
    std::uint64_t underflow = 0;
    std::uint64_t overflow = 0;
    std::uint64_t total = 0;

    double mass(int bin) const { return static_cast<double>(counts.at(bin)) / total; }
    double density(int bin) const { return mass(bin) / spec.width(); }

    double total_mass() const
    {
        std::uint64_t sum = underflow + overflow;
        for (std::uint64_t c : counts) {
            sum += c;
        }
        return static_cast<double>(sum) / total;
    }
};

inline Histogram mc_snr_histogram(const SystemConfig& cfg, Link which, const McSettings& mc,
                                  const BinSpec& bins)
{
    mc.validate();
    bins.validate();
    const System system = which == Link::fso ? System::fso : System::rf;
    const auto shards = detail::run_sharded(mc, [&](RandomStream& rng, std::uint64_t n) {
        Histogram h{bins, std::vector<std::uint64_t>(bins.bins, 0)};
        std::vector<double> scratch(static_cast<std::size_t>(cfg.m()));
        const double scale = bins.bins / (bins.hi - bins.lo);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double snr = detail::draw_output_snr(cfg, system, rng, scratch);
            if (snr < bins.lo) {
                ++h.underflow;
            } else if (snr >= bins.hi) {
                ++h.overflow;
            } else {
                const auto bin = std::min(static_cast<int>((snr - bins.lo) * scale), bins.bins - 1);
                ++h.counts[bin];
            }
        }
        h.total = n;
        return h;
    });
    Histogram merged{bins, std::vector<std::uint64_t>(bins.bins, 0)};
    for (const Histogram& h : shards) {
        for (int i = 0; i < bins.bins; ++i) {
            merged.counts[i] += h.counts[i];
        }
        merged.underflow += h.underflow;
        merged.overflow += h.overflow;
        merged.total += h.total;
    }
    return merged;
}

} // namespace hybridfso

#endif // HYBRIDFSO_MONTECARLO_HPP
