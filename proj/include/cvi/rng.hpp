#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace cvi {

struct RngSeed {
    std::uint64_t value = 0;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Child seed for (dataset, run) streams: every trial gets an independent,
// reproducible generator derived from the master seed.
inline RngSeed child_seed(RngSeed master, std::uint64_t dataset_id,
                          std::uint64_t run_index) {
    std::uint64_t s = master.value;
    std::uint64_t a = splitmix64(s);
    s ^= dataset_id * 0xd1342543de82ef95ULL;
    std::uint64_t b = splitmix64(s);
    s ^= run_index * 0xaf251af3b0f025b5ULL;
    std::uint64_t c = splitmix64(s);
    return RngSeed{a ^ (b + 0x9e3779b97f4a7c15ULL) ^ (c << 1)};
}

// Thin wrapper around mt19937_64 producing doubles without the
// implementation-defined std distributions; same seed, same stream.
class Rng {
public:
    // The raw seed is scrambled before it reaches the engine so that
    // consecutive seed values still give statistically independent streams.
    explicit Rng(RngSeed seed) : eng_(scramble(seed.value)) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Index uniform on [0, n).
    std::size_t index(std::size_t n) {
        return std::min(static_cast<std::size_t>(uniform01() * static_cast<double>(n)),
                        n - 1);
    }

    // Standard normal via Box-Muller, spare cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static std::uint64_t scramble(std::uint64_t v) { return splitmix64(v); }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace cvi
