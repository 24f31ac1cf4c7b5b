#include "isar/rng.hpp"

#include <cmath>
#include <numbers>

#include "isar/errors.hpp"

namespace isar {

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on (0,1] x [0,1) uniforms.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw ParameterError("Rng::below: bound must be positive");
    // Reject draws from the incomplete top interval to avoid modulo bias.
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw;
    do {
        draw = eng_();
    } while (draw >= limit);
    return draw % bound;
}

}  // namespace isar
