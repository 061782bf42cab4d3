#pragma once

#include "aer/grid.hpp"

#include <cstdint>

namespace aer {

enum class NoiseKind { uniform, gaussian };

// SplitMix64 used in counter mode: draw c is the c-th output of the SplitMix64
// sequence whose state starts at key(seed, stream). Stream 0 uses the seed itself.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t bits(std::uint64_t counter) const;
    double uniform(std::uint64_t counter) const;  // [0, 1)
    double normal(std::uint64_t counter) const;   // Box-Muller on draws 2c, 2c + 1

    static std::uint64_t mix(std::uint64_t z);

private:
    std::uint64_t key_;
};

// u_delta = (1 + delta * e) u, with e = 2 r - 1 (uniform) or a standard normal,
// drawn in row-major node order.
Field2D add_noise(const Field2D& u, double delta, std::uint64_t seed, NoiseKind kind = NoiseKind::uniform,
                  std::uint64_t stream = 0);

const char* to_string(NoiseKind k);

}  // namespace aer
