// Deterministic seeded randomness. Streams split per sample index so that
// parallel and serial runs produce identical reports.
#pragma once

#include <cstdint>

#include "ap2/algebra2d.hpp"
#include "ap2/proj_plane.hpp"
#include "ap2/scalar.hpp"

namespace ap2::rng {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Integer in [lo, hi], inclusive.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

/// Independent substream for one sample index of a seeded run.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    mix.next();
    return mix;
}

/// Rational with numerator in [-10, 10] and denominator in [1, 10].
inline Rational random_rational(SplitMix64& g) {
    return Rational(g.uniform(-10, 10), g.uniform(1, 10));
}

template <class S>
S random_scalar(SplitMix64& g) {
    return ScalarTraits<S>::from_rational(random_rational(g));
}

template <class S>
algebra::A2<S> random_a2(algebra::AlgebraKind kind, SplitMix64& g) {
    return algebra::A2<S>(kind, random_scalar<S>(g), random_scalar<S>(g));
}

template <class S>
algebra::A2<S> random_unit(algebra::AlgebraKind kind, SplitMix64& g) {
    for (;;) {
        auto a = random_a2<S>(kind, g);
        if (!algebra::is_zero_divisor(a)) return a;
    }
}

/// Random valid plane point (coordinate stack of rank 2), by rejection.
template <class S>
plane::PointA<S> random_point(algebra::AlgebraKind kind, SplitMix64& g) {
    for (;;) {
        std::array<algebra::A2<S>, 3> c = {random_a2<S>(kind, g), random_a2<S>(kind, g),
                                           random_a2<S>(kind, g)};
        if (plane::PointA<S>::triple_valid(kind, c)) return plane::PointA<S>(kind, c[0], c[1], c[2]);
    }
}

template <class S>
std::pair<plane::PointA<S>, plane::PointA<S>> random_nonadjacent_pair(algebra::AlgebraKind kind,
                                                                      SplitMix64& g) {
    for (;;) {
        auto p = random_point<S>(kind, g);
        auto q = random_point<S>(kind, g);
        if (!plane::adjacent(p, q)) return {p, q};
    }
}

template <class S>
plane::FrameA<S> random_frame(algebra::AlgebraKind kind, SplitMix64& g) {
    for (;;) {
        auto p0 = random_point<S>(kind, g);
        auto p1 = random_point<S>(kind, g);
        auto p2 = random_point<S>(kind, g);
        if (!plane::adjacent(p0, p1) && !plane::adjacent(p0, p2) && !plane::adjacent(p1, p2))
            return plane::FrameA<S>(p0, p1, p2);
    }
}

}  // namespace ap2::rng
