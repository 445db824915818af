#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <croof/types.hpp>

namespace croof::ensemble {

// Deterministic, splittable stream: every (seed, stream) pair seeds an
// independent generator, so sample i of a run can be reproduced in isolation
// as Rng(seed, i). Normals use the polar method on top of the raw uniform
// stream instead of std::normal_distribution, which keeps the byte stream
// identical across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : eng_(mix(mix(seed) ^ mix(stream + 0x9E3779B97F4A7C15ull))) {}

    std::uint64_t next_u64() { return eng_(); }

    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // inclusive range, rejection-free modulo bias is irrelevant at these sizes
    int uniform_int(int lo, int hi) {
        return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
    }

    double normal() {
        for (;;) {
            const double u = 2.0 * uniform() - 1.0;
            const double v = 2.0 * uniform() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    Complex cnormal() { return {normal(), normal()}; }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 eng_;
};

}  // namespace croof::ensemble
