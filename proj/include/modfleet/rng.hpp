#ifndef MODFLEET_RNG_HPP
#define MODFLEET_RNG_HPP

#include <cstdint>
#include <random>

namespace modfleet {

// splitmix64 step; the mixing primitive behind all seed derivation.
std::uint64_t splitmix64(std::uint64_t& state);

// Derives a child seed from a parent seed and a stream index. Used everywhere
// a run fans out into independent substreams (scenario streams, experiment
// cells), so that any cell can be reproduced in isolation:
//   child = mix(parent ^ golden_gamma * (index + 1))
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

// Deterministic random source. Wraps the (standardised) mt19937_64 engine and
// supplies its own sampling helpers, so results do not depend on the standard
// library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [lo, hi], both ends inclusive. Unbiased (rejection).
    long long uniform_int(long long lo, long long hi);

    // Uniform in [0, 1).
    double uniform01();

    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Independent child stream; deterministic function of the draw sequence.
    Rng split() { return Rng(next_u64() ^ 0x9e3779b97f4a7c15ULL); }

  private:
    std::mt19937_64 engine_;
};

} // namespace modfleet

#endif
