#ifndef ISAR_RNG_HPP
#define ISAR_RNG_HPP

#include <cstdint>
#include <random>

namespace isar {

/// Portable seedable random source used for aperture masks and noise draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, and all variate transforms (uniform doubles, Box-Muller normals,
/// rejection-sampled bounded integers) are implemented here rather than via
/// std::*_distribution, whose output is implementation-defined.  A given seed
/// therefore reproduces the same masks and noise on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; caches the spare deviate.
    double gaussian();

    /// Uniform integer in [0, bound), unbiased via rejection sampling.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace isar

#endif
