#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace obsbench {

/// Deterministic counter-free random generator built on the splitmix64
/// sequence. Keeping the generator and all samplers in-repo (instead of
/// <random>, whose distributions are implementation-defined) makes every
/// draw reproducible from a 64-bit seed regardless of the standard library.
///
/// Independent substreams are derived by hashing a (seed, path...) key, so
/// results never depend on thread scheduling or on how many draws another
/// stream consumed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Substream keyed by an integer path, e.g. derive(seed, {view, bin}).
    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

    std::uint64_t next_u64();

    /// Uniform in [0, 1).
    double next_double();

    /// Uniform in (0, 1].
    double next_double_open();

    /// Standard normal via Box-Muller.
    double next_gaussian();

    /// Poisson draw: sequential inversion below mean 30, transformed
    /// rejection (PTRS) above. Requires mean >= 0.
    long long next_poisson(double mean);

private:
    std::uint64_t state_;
};

/// FNV-1a hash for deriving substream keys from string tags.
std::uint64_t fnv1a64(std::string_view s);

}  // namespace obsbench
