//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/transport/attenuation.hpp
//! \brief Optical depth along straight segments
//---------------------------------------------------------------------------//
#pragma once

#include "../core/quadrature.hpp"
#include "../media/medium.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * Optical depth int_{s_from}^{s_to} a(x - t theta, theta) dt.
 *
 * The segment must lie in the closed domain.
 */
template<int D>
double attenuation_integral(MediumPair<D> const& pair, Vec<D> const& x,
                            Direction<D> const& theta, double s_from,
                            double s_to, double step)
{
    auto const& dom = pair.domain();
    if (!dom.contains(x - s_from * theta) || !dom.contains(x - s_to * theta))
        throw DomainError("attenuation segment leaves the domain");
    if (s_to == s_from)
        return 0;
    auto const& a = pair.absorption();
    return composite_simpson(
        [&](double t) { return a(x - t * theta, theta.vec()); }, s_from, s_to,
        step);
}

//---------------------------------------------------------------------------//
/*!
 * Samples along the backward ray x - s theta, s in [0, length].
 *
 * Holds Simpson weights and the cumulative optical depth at each sample,
 * computed with a third-order local rule so that exp(-A) is accurate at
 * every node rather than only at the end point.
 */
template<int D>
struct BackwardRay
{
    std::vector<Vec<D>> points;
    std::vector<double> weights;  //!< Simpson weights
    std::vector<double> depth;  //!< int_0^{s_k} a
    double length{0};

    void trace(AbsorptionField<D> const& a, Vec<D> const& x,
               Direction<D> const& theta, double len, double step)
    {
        length = len;
        points.clear();
        weights.clear();
        depth.clear();
        if (!(len > 1e-14))
            return;
        int n = simpson_intervals(len, step);
        double h = len / n;
        points.resize(n + 1);
        weights.resize(n + 1);
        depth.resize(n + 1);
        std::vector<double>& av = scratch_;
        av.resize(n + 1);
        for (int k = 0; k <= n; ++k)
        {
            points[k] = x - (k * h) * theta;
            av[k] = a(points[k], theta.vec());
            weights[k] = h / 3 * (k == 0 || k == n ? 1 : (k % 2 ? 4 : 2));
        }
        depth[0] = 0;
        for (int k = 0; k < n; ++k)
        {
            double inc = (k + 2 <= n)
                             ? (5 * av[k] + 8 * av[k + 1] - av[k + 2])
                             : (-av[k - 1] + 8 * av[k] + 5 * av[k + 1]);
            depth[k + 1] = depth[k] + h * inc / 12;
        }
    }

    double total_depth() const { return depth.empty() ? 0.0 : depth.back(); }

  private:
    std::vector<double> scratch_;
};

//---------------------------------------------------------------------------//
}  // namespace rte
