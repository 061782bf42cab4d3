#include "aer/noise.hpp"

#include "aer/errors.hpp"

#include <cmath>
#include <numbers>

namespace aer {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t CounterRng::mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(stream == 0 ? seed : mix(seed + kGolden * (stream + 0x51ed270b27ULL))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const { return mix(key_ + kGolden * (counter + 1)); }

double CounterRng::uniform(std::uint64_t counter) const { return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53; }

double CounterRng::normal(std::uint64_t counter) const {
    double u1 = 1.0 - uniform(2 * counter);
    double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
}

Field2D add_noise(const Field2D& u, double delta, std::uint64_t seed, NoiseKind kind, std::uint64_t stream) {
    if (!(delta >= 0)) throw ConfigError("noise level must be non-negative");
    Field2D out = u;
    if (delta == 0) return out;
    CounterRng rng(seed, stream);
    auto& v = out.values();
    for (std::size_t c = 0; c < v.size(); ++c) {
        double e = kind == NoiseKind::uniform ? 2 * rng.uniform(c) - 1 : rng.normal(c);
        v[c] = (1 + delta * e) * v[c];
    }
    return out;
}

const char* to_string(NoiseKind k) { return k == NoiseKind::uniform ? "uniform" : "gaussian"; }

}  // namespace aer
