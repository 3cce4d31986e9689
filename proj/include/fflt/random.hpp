#pragma once
//
// Portable reproducible random numbers: std::mt19937_64 (fully specified by
// the standard) with an explicit 53-bit mantissa conversion, since the
// standard distributions are implementation defined.
//

#include <fflt/matrix.hpp>

#include <cstdint>
#include <random>

namespace fflt {

class Random
{
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    // uniform in [0, 1)
    real uniform() { return static_cast<real>(engine_() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    real uniform(real lo, real hi) { return lo + (hi - lo) * uniform(); }

    // uniform in (0, 1]
    real uniform_positive() { return 1 - uniform(); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<real>(n)); }

    complex unit_box() { return {uniform(-1, 1), uniform(-1, 1)}; }

private:
    std::mt19937_64 engine_;
};

} // namespace fflt
