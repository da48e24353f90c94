#pragma once

#include <cmath>
#include <cstdint>

namespace kskm {

// Splittable counter-style generator built on splitmix64. Forking derives an
// independent stream from (state, label) without advancing the parent, so
// draws for one cluster or mutation never depend on the order of others.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(mix(seed)) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    Rng fork(uint64_t label) const {
        return Rng(mix(state_ ^ mix(label + 0x5851f42d4c957f2dull)));
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1], safe for log().
    double uniform_open() { return 1.0 - uniform(); }

    // Uniform integer in [0, n).
    uint64_t uniform_int(uint64_t n) { return next_u64() % n; }

    // Standard normal via Box-Muller; always consumes two uniforms.
    double normal() {
        double u1 = uniform_open();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    // Gamma(shape, 1) by Marsaglia-Tsang.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = uniform_open();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            double v = t * t * t;
            double u = uniform_open();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double chi_square(double dof) { return 2.0 * gamma(0.5 * dof); }

  private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t state_;
};

}  // namespace kskm
