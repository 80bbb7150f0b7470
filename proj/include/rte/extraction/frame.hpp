//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/extraction/frame.hpp
//! \brief Orthonormal frame attached to a non-parallel direction pair
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>

#include "../core/errors.hpp"
#include "../core/vector.hpp"

namespace rte
{
//! Largest |theta . theta'| treated as non-parallel
inline constexpr double parallel_tolerance = 1e-6;

//---------------------------------------------------------------------------//
/*!
 * Frame for (theta, theta').
 *
 * theta_prime_perp is the unit vector in span{theta, theta'} orthogonal to
 * theta' with theta . theta_prime_perp > 0 (or < 0 if flipped).
 */
template<int D>
class DirectionPairFrame
{
  public:
    DirectionPairFrame(Direction<D> theta, Direction<D> theta_prime,
                       bool flipped = false)
        : theta_(theta), theta_prime_(theta_prime)
    {
        double c = dot(theta, theta_prime);
        if (std::abs(c) > 1 - parallel_tolerance)
            throw ExcludedConfigurationError(
                "direction pair is (anti)parallel");
        Vec<D> p = theta.vec() - c * theta_prime.vec();
        perp_ = (flipped ? -1.0 : 1.0) / norm(p) * p;
    }

    Direction<D> const& theta() const { return theta_; }
    Direction<D> const& theta_prime() const { return theta_prime_; }
    Vec<D> const& theta_prime_perp() const { return perp_; }

    //! Orthogonal projection onto span{theta, theta'}
    Vec<D> project(Vec<D> const& y) const
    {
        Vec<D> t = theta_prime_.vec();
        Vec<D> e = (1.0 / norm(perp_)) * perp_;
        return dot(y, t) * t + dot(y, e) * e;
    }

    //! Unit normal to span{theta, theta'} (3D only)
    Vec<D> plane_normal() const
    {
        static_assert(D == 3, "plane normal requires three dimensions");
        Vec<D> n = cross(theta_.vec(), theta_prime_.vec());
        return (1.0 / norm(n)) * n;
    }

  private:
    Direction<D> theta_;
    Direction<D> theta_prime_;
    Vec<D> perp_;
};

//---------------------------------------------------------------------------//
}  // namespace rte
