#ifndef HYBRIDFSO_COMBINING_HPP
#define HYBRIDFSO_COMBINING_HPP

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <span>
#include <vector>

#include "channel_models.hpp"
#include "errors.hpp"

namespace hybridfso {

/// Per-branch values entering a combiner: irradiances on the optical side,
/// branch SNRs on the RF side. Nonempty, all entries nonnegative.
class BranchSet {
public:
    explicit BranchSet(std::vector<double> values) : values_(std::move(values)) { validate(); }
    BranchSet(std::initializer_list<double> values) : values_(values) { validate(); }

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    void validate() const
    {
        detail::require(!values_.empty(), "BranchSet: at least one branch is required");
        detail::require(std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; }),
                        "BranchSet: branch values must be nonnegative");
    }

    std::vector<double> values_;
};

enum class Link { fso, rf };

struct Selection {
    double snr;
    Link winner;
};

namespace detail {

// Span-based kernels shared with the simulator's hot loop; callers guarantee
// a nonempty span of nonnegative values.
inline double egc_snr(std::span<const double> irradiances, double avg_snr)
{
    const double sum = std::accumulate(irradiances.begin(), irradiances.end(), 0.0);
    return avg_snr / static_cast<double>(irradiances.size()) * sum * sum;
}

inline double mrc_snr(std::span<const double> branch_snrs)
{
    return std::accumulate(branch_snrs.begin(), branch_snrs.end(), 0.0);
}

} // namespace detail

/// Equal-gain combiner output SNR: (avg_snr / M) * (sum of irradiances)^2.
/// The 1/M accounts for the noise of all M apertures adding up.
inline double egc_output_snr(const BranchSet& irradiances, const FsoParams& fso)
{
    return detail::egc_snr(irradiances.values(), fso.avg_snr());
}

/// Maximal-ratio combiner output SNR: sum of branch SNRs.
inline double mrc_output_snr(const BranchSet& branch_snrs)
{
    return detail::mrc_snr(branch_snrs.values());
}

inline double sc_select(double gamma_fso, double gamma_rf)
{
    detail::require(gamma_fso >= 0.0 && gamma_rf >= 0.0, "sc_select: SNRs must be nonnegative");
    return std::max(gamma_fso, gamma_rf);
}

/// Same as sc_select but also reports the chosen link; ties go to FSO.
inline Selection sc_select_link(double gamma_fso, double gamma_rf)
{
    const double snr = sc_select(gamma_fso, gamma_rf);
    return {snr, gamma_fso >= gamma_rf ? Link::fso : Link::rf};
}

} // namespace hybridfso

#endif // HYBRIDFSO_COMBINING_HPP
