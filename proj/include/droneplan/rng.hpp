#pragma once

#include <cstdint>
#include <random>

namespace droneplan {

/// Deterministic, portable random source. The engine is std::mt19937_64,
/// whose output sequence is fixed by the C++ standard; the value mappings
/// below are spelled out explicitly so samples reproduce across platforms
/// (std::uniform_*_distribution is implementation-defined and never used).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    /// Uniform integer in [lo, hi], both inclusive.
    int uniform_int(int lo, int hi) {
        const int span = hi - lo + 1;
        int v = lo + static_cast<int>(next_unit() * static_cast<double>(span));
        return v > hi ? hi : v;
    }

    bool coin() { return (eng_() & 1u) != 0; }

private:
    std::mt19937_64 eng_;
};

} // namespace droneplan
