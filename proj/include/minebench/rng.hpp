#pragma once

#include <cstdint>
#include <random>

namespace minebench {

// Deterministic random source. The engine is the standard-specified
// mt19937_64, and the bounded draws are hand-rolled rejection sampling:
// std::uniform_int_distribution is implementation-defined, which would break
// byte-identical replay of seeds across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased draw from [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t x, r;
        do {
            x = engine_();
            r = x % n;
        } while (x - r > UINT64_MAX - (n - 1));
        return r;
    }

    // Unbiased draw from [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace minebench
