#include "obsbench/rng.hpp"

#include <cmath>

#include "obsbench/errors.hpp"

namespace obsbench {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

Rng Rng::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(seed);
    for (std::uint64_t x : path) h = mix64(h ^ x);
    return Rng(h);
}

std::uint64_t Rng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_double_open() {
    return 1.0 - next_double();
}

double Rng::next_gaussian() {
    const double u1 = next_double_open();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

long long Rng::next_poisson(double mean) {
    if (!(mean >= 0.0))
        throw ParameterError("poisson mean must be nonnegative");
    if (mean == 0.0) return 0;

    if (mean < 30.0) {
        // Sequential inversion of the CDF with the recursive pmf.
        const double u = next_double();
        double p = std::exp(-mean);
        double cum = p;
        long long k = 0;
        while (u > cum) {
            ++k;
            p *= mean / double(k);
            cum += p;
            if (k > 2000) break;  // cum has saturated numerically
        }
        return k;
    }

    // Transformed rejection with squeeze (Hormann's PTRS), valid for mean >= 10.
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = next_double() - 0.5;
        const double v = next_double();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return (long long)kf;
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            kf * loglam - mean - std::lgamma(kf + 1.0))
            return (long long)kf;
    }
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace obsbench
