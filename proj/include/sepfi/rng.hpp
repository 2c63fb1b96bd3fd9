#pragma once

#include <cstdint>
#include <limits>

namespace sepfi {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based random stream keyed by (root seed, stream id).
///
/// Output k of a stream is mix64(key + k * golden_gamma), a pure function of
/// the key and the counter, so per-trial streams can be generated in any
/// order or on any thread and still reproduce bit for bit. Satisfies
/// UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t root_seed, std::uint64_t stream)
        : key_(mix64(root_seed ^ mix64(stream + kGamma)))
    {
    }

    result_type operator()() { return mix64(key_ + (++counter_) * kGamma); }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    std::uint64_t counter() const { return counter_; }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace sepfi
