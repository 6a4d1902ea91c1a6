#pragma once

#include <cstdint>

#include "binaryweyl/metric.hpp"

namespace bw {

// Tiny deterministic generator (splitmix64). Identical sequences on every
// platform, which the byte-identical-report requirement leans on.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    // inclusive bounds
    long uniform_long(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

// Draws admissible points from the spec's boxes, sequentially from the seed.
// Throws DomainError when the boxes yield no admissible points.
std::vector<Point4> sample_points(const MetricSpec& spec, int n, std::uint64_t seed);

// Deterministic rational point with denominators <= 64 and pairwise-distinct
// coordinates; (seed, index) fully determine the result.
Point4q random_rational_point(std::uint64_t seed, std::uint64_t index, long lo, long hi);

}  // namespace bw
