//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/extraction/mollifier.hpp
//! \brief Polynomial cut-off profiles
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>

#include "../core/vector.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * Unit-mass bump (315/256)(1-t^2)^4 on (-1, 1).
 */
struct Mollifier1D
{
    static constexpr double normalization = 315.0 / 256.0;

    double operator()(double t) const
    {
        if (std::abs(t) >= 1)
            return 0;
        double q = 1 - t * t;
        q *= q;
        return normalization * q * q;
    }
};

//---------------------------------------------------------------------------//
/*!
 * Radial plateau: 1 for |y| <= 1/2, 0 for |y| >= 1, with a C^3 smoothstep
 * transition in between.
 */
struct MollifierND
{
    double radial(double r) const
    {
        r = std::abs(r);
        if (r <= 0.5)
            return 1;
        if (r >= 1)
            return 0;
        double t = 2 * r - 1;
        double step = t * t * t * t * (35 - 84 * t + 70 * t * t - 20 * t * t * t);
        return 1 - step;
    }

    template<int D>
    double operator()(Vec<D> const& y) const
    {
        return radial(norm(y));
    }
};

//---------------------------------------------------------------------------//
}  // namespace rte
