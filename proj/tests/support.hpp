#pragma once

#include "kcubic/geometry.hpp"
#include "kcubic/scalar.hpp"

#include <cstdint>
#include <random>

namespace kcubic::testing {

/// Uniform rational in [lo, hi] on a grid of spacing 1/den.
inline Scalar random_rational(std::mt19937_64& rng, long lo, long hi, long den)
{
    std::uniform_int_distribution<long> dist(lo * den, hi * den);
    return make_rational(dist(rng), den);
}

/// Random (b, h, a) with b in [0,10], h in (0,10], a in (2/3,1].
struct RegimeSample {
    Scalar b, h, a;
};

inline RegimeSample random_regime_config(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> bd(0, 10000), hd(1, 10000), ad(1, 3000);
    return {make_rational(bd(rng), 1000), make_rational(hd(rng), 1000), Scalar(2, 3) + make_rational(ad(rng), 9000)};
}

inline Point2 random_point(std::mt19937_64& rng)
{
    return {random_rational(rng, -5, 5, 7), random_rational(rng, -5, 5, 11)};
}

} // namespace kcubic::testing
