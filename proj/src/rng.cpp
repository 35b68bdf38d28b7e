#include "modfleet/rng.hpp"
#include "modfleet/common.hpp"

#include <cstdlib>

namespace modfleet {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    std::uint64_t s = parent ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return splitmix64(s);
}

long long Rng::uniform_int(long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
    std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<long long>(next_u64()); // full 64-bit span
    // Rejection sampling over the largest multiple of `range`.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return lo + static_cast<long long>(x % range);
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

namespace {
int g_worker_limit = -1; // -1: not initialised yet
}

int worker_limit() {
    if (g_worker_limit < 0) {
        const char* env = std::getenv("MODFLEET_WORKERS");
        g_worker_limit = env ? std::atoi(env) : 0;
        if (g_worker_limit < 0) g_worker_limit = 0;
    }
    return g_worker_limit;
}

void set_worker_limit(int n) { g_worker_limit = n < 0 ? 0 : n; }

} // namespace modfleet
