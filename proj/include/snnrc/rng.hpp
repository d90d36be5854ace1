#pragma once

// Seeded random source with a platform-independent output stream.

#include <cstdint>
#include <random>

namespace snnrc {

/// SplitMix64 finalizer, used to derive independent sub-seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    return mix_seed(seed ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

/// mt19937_64 with hand-written uniform mappings. The standard distributions
/// are implementation-defined, so they are avoided to keep streams identical
/// across standard libraries.
class rng {
public:
    explicit rng(std::uint64_t seed) : engine_{seed} {}

    /// Uniform in [0, 1).
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [0, 1].
    double uniform_closed()
    {
        return static_cast<double>(engine_() >> 11) / static_cast<double>((1ULL << 53) - 1);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n), unbiased.
    std::uint64_t below(std::uint64_t n)
    {
        const std::uint64_t limit = n == 0 ? 0 : (~std::uint64_t{0} - n + 1) % n;
        std::uint64_t x = engine_();
        while (x < limit) x = engine_();
        return x % n;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace snnrc
