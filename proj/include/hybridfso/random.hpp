#ifndef HYBRIDFSO_RANDOM_HPP
#define HYBRIDFSO_RANDOM_HPP

#include <concepts>
#include <cstdint>
#include <limits>
#include <random>

namespace hybridfso {

/// Engine used by every sampler in the library. Its output sequence is fixed
/// by the standard, so seeded runs are reproducible across toolchains.
using RandomStream = std::mt19937_64;

/// Engines producing uniformly distributed 64-bit words.
template <typename G>
concept Engine64 = std::uniform_random_bit_generator<G> &&
    (G::min() == 0) && (G::max() == std::numeric_limits<std::uint64_t>::max());

/// One step of the SplitMix64 sequence; advances `state`.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent stream number `index` for a run seeded with `seed`.
///
/// The pair is hashed through SplitMix64 twice so that neighbouring seeds and
/// neighbouring indices land far apart in the engine's state space.
inline RandomStream derive_stream(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t state = seed;
    const std::uint64_t base = splitmix64(state);
    state = base ^ (index * 0xd1b54a32d192ed03ULL);
    splitmix64(state);
    return RandomStream{splitmix64(state)};
}

/// Uniform draw on the half-open interval (0, 1], so -log(u) stays finite.
template <Engine64 G>
double uniform_open_closed(G& gen)
{
    // 53 significant bits, shifted up by one ulp: values k / 2^53, k in [1, 2^53].
    const std::uint64_t k = (gen() >> 11) + 1;
    return static_cast<double>(k) * 0x1.0p-53;
}

} // namespace hybridfso

#endif // HYBRIDFSO_RANDOM_HPP
