#pragma once
#include <cstdint>
#include <span>
#include <vector>

namespace prc {

// Deterministic 64-bit generator (SplitMix64). Pinned so that identical
// (seed, command) runs produce identical samples on any platform; the
// algorithm is documented in the README.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller, no cached spare (keeps the stream position deterministic
    // regardless of call pattern)
    double normal();

private:
    std::uint64_t state_;
};

struct MetricSpec;

// x uniform in the domain box, rejected until admissible (a positive
// definite and ||beta|| < bMax). Throws after maxTries rejections.
std::vector<double> samplePoint(const MetricSpec& spec, SplitMix64& rng, double bMax = 1.0,
                                int maxTries = 1000);

// y uniform on the alpha-unit sphere at x.
std::vector<double> sampleAlphaUnitDirection(const MetricSpec& spec, std::span<const double> x,
                                             SplitMix64& rng);

} // namespace prc
