//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/transport/boundary_flux.hpp
//! \brief Incoming boundary data and sampled outgoing boundary data
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "../geometry/boundary_grid.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * Incoming boundary condition f_-(x, theta) on Gamma_-.
 *
 * The value is zero when theta does not point into the domain at x.
 */
template<int D>
class IncomingFlux
{
  public:
    using Fn = std::function<double(BoundaryPoint<D> const&, Vec<D> const&)>;

    IncomingFlux() : IncomingFlux(uniform(0.0)) {}

    static IncomingFlux uniform(double value)
    {
        return IncomingFlux("uniform",
                            [value](BoundaryPoint<D> const&, Vec<D> const&) {
                                return value;
                            });
    }

    /*!
     * Smooth beam concentrated near (center, direction):
     * A exp(-|x-p|^2/w_x^2) exp(-|theta-theta0|^2/w_t^2).
     */
    static IncomingFlux beam(Vec<D> center, Direction<D> direction,
                             double width, double angular_width,
                             double amplitude = 1.0)
    {
        if (!(width > 0) || !(angular_width > 0))
            throw ConfigError("beam widths must be positive");
        return IncomingFlux(
            "beam",
            [=](BoundaryPoint<D> const& bp, Vec<D> const& theta) {
                double dx = norm_sq(bp.position - center) / (width * width);
                double dt = norm_sq(theta - direction.vec())
                            / (angular_width * angular_width);
                return amplitude * std::exp(-dx - dt);
            });
    }

    //! Arbitrary callable
    static IncomingFlux custom(std::string kind, Fn fn)
    {
        return IncomingFlux(std::move(kind), std::move(fn));
    }

    //! Linear combination c1 f1 + c2 f2
    static IncomingFlux combine(double c1, IncomingFlux f1, double c2,
                                IncomingFlux f2)
    {
        return IncomingFlux(
            "combination",
            [=](BoundaryPoint<D> const& bp, Vec<D> const& theta) {
                return c1 * f1.fn_(bp, theta) + c2 * f2.fn_(bp, theta);
            });
    }

    double operator()(BoundaryPoint<D> const& bp, Vec<D> const& theta) const
    {
        if (dot(bp.normal, theta) >= 0)
            return 0;
        return fn_(bp, theta);
    }

    std::string const& kind() const { return kind_; }

  private:
    IncomingFlux(std::string kind, Fn fn)
        : kind_(std::move(kind)), fn_(std::move(fn))
    {
    }

    std::string kind_;
    Fn fn_;
};

//---------------------------------------------------------------------------//
/*!
 * Outgoing boundary data sampled on quadrature pairs of Gamma_+.
 */
template<int D>
struct SampledBoundaryFlux
{
    std::vector<BoundaryPair<D>> pairs;
    std::vector<double> values;

    //! Discrete L1(Gamma_+, d xi) norm
    double l1_norm() const
    {
        double s = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            s += std::abs(values[i]) * pairs[i].weight;
        return s;
    }

    //! ||this - other|| / ||other|| on the same pairs
    double relative_difference(SampledBoundaryFlux const& other) const
    {
        if (other.pairs.size() != pairs.size())
            throw ConfigError("boundary fluxes sampled on different grids");
        double num = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            num += std::abs(values[i] - other.values[i]) * pairs[i].weight;
        double den = other.l1_norm();
        return den > 0 ? num / den : num;
    }
};

//---------------------------------------------------------------------------//
}  // namespace rte
