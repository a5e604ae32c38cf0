#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hpfnav {

/// Seeded random stream for the simulator. Wraps mt19937_64 with
/// hand-rolled variate transforms so the draw sequence does not depend
/// on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller. Always consumes exactly two
    /// uniforms; no cached spare, so the stream position is predictable.
    double normal() {
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace hpfnav
