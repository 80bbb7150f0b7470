//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/core/sampling.hpp
//! \brief Deterministic quasi-random (Halton) sample generators
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "vector.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
//! Radical inverse of \c i in the given prime base
inline double radical_inverse(std::uint64_t i, unsigned base)
{
    double inv = 1.0 / base;
    double f = inv;
    double r = 0;
    while (i > 0)
    {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

//---------------------------------------------------------------------------//
/*!
 * Halton point set in the unit cube of up to six dimensions.
 *
 * The \c offset skips the first points (different offsets give
 * independent-looking streams for seeded runs).
 */
class Halton
{
  public:
    explicit Halton(std::uint64_t offset = 0) : offset_(offset) {}

    double operator()(std::uint64_t i, int coord) const
    {
        static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
        return radical_inverse(i + 1 + offset_, primes[coord]);
    }

  private:
    std::uint64_t offset_;
};

//---------------------------------------------------------------------------//
//! Map unit-cube coordinates to a uniform point on S^{D-1}
template<int D>
Vec<D> uniform_sphere_point(double u0, double u1)
{
    double const two_pi = 2 * std::numbers::pi;
    if constexpr (D == 2)
    {
        (void)u1;
        return {{std::cos(two_pi * u0), std::sin(two_pi * u0)}};
    }
    else
    {
        double z = 2 * u0 - 1;
        double r = std::sqrt(std::max(0.0, 1 - z * z));
        return {{r * std::cos(two_pi * u1), r * std::sin(two_pi * u1), z}};
    }
}

//! Map unit-cube coordinates to a uniform point in the closed unit ball
template<int D>
Vec<D> uniform_ball_point(double ur, double u0, double u1)
{
    double r = std::pow(ur, 1.0 / D);
    return r * uniform_sphere_point<D>(u0, u1);
}

//---------------------------------------------------------------------------//
}  // namespace rte
