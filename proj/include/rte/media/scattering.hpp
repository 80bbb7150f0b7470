//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/media/scattering.hpp
//! \brief Scattering kernels k(x, theta_in, theta_out)
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "../gauge/gauge_field.hpp"
#include "../geometry/sphere_quadrature.hpp"
#include "spatial_field.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * Integral of mu^j over the normalized sphere measure, mu = theta.e.
 */
template<int D>
double sphere_moment(int j)
{
    if (j % 2 != 0)
        return 0;
    if constexpr (D == 3)
    {
        return 1.0 / (j + 1);
    }
    else
    {
        // (j-1)!! / j!!
        double r = 1;
        for (int i = 1; i < j; i += 2)
            r *= static_cast<double>(i) / (i + 1);
        return r;
    }
}

//---------------------------------------------------------------------------//
/*!
 * Scattering kernel with the factorized form
 * \f[
 *   k(x,\theta',\theta) = g(x)\,P(\theta'\cdot\theta)\,
 *      e^{\beta(\theta-\theta')\cdot e}\, e^{\psi(x,\theta)-\psi(x,\theta')}
 * \f]
 * where theta' is the incoming and theta the outgoing direction.
 *
 * The built-in kinds are special cases: \c zero (g = 0), \c constant
 * (P = 1), \c dot_product (beta = 0) and \c separable (any beta). The log
 * gauge psi is empty unless the kernel was produced by a gauge
 * transformation.
 */
template<int D>
class ScatteringKernel
{
  public:
    ScatteringKernel() : kind_("zero"), g_(SpatialField<D>::constant(0)) {}

    static ScatteringKernel zero() { return {}; }

    static ScatteringKernel constant(double c)
    {
        ScatteringKernel k;
        k.kind_ = "constant";
        k.g_ = SpatialField<D>::constant(c);
        return k;
    }

    static ScatteringKernel
    dot_product(SpatialField<D> g, std::vector<double> poly)
    {
        ScatteringKernel k;
        k.kind_ = "dot_product";
        k.g_ = std::move(g);
        k.poly_ = std::move(poly);
        return k;
    }

    //! g(x) P(theta'.theta) exp(beta (theta - theta').skew_axis)
    static ScatteringKernel separable(SpatialField<D> g,
                                      std::vector<double> poly,
                                      Vec<D> skew_axis = Vec<D>::axis(0),
                                      double skew = 0)
    {
        ScatteringKernel k;
        k.kind_ = "separable";
        k.g_ = std::move(g);
        k.poly_ = std::move(poly);
        k.skew_axis_ = skew_axis;
        k.skew_ = skew;
        return k;
    }

    //! Kernel multiplied by phi(x, theta)/phi(x, theta')
    ScatteringKernel gauged(GaugeField<D> const& g) const
    {
        ScatteringKernel k = *this;
        if (!g.is_identity())
            k.gauges_.push_back(g);
        return k;
    }

    //// EVALUATION ////

    double operator()(Vec<D> const& x, Vec<D> const& theta_in,
                      Vec<D> const& theta_out) const
    {
        double gx = g_(x);
        if (gx == 0)
            return 0;
        return gx * angular(theta_in, theta_out)
               * std::exp(log_gauge(x, theta_out) - log_gauge(x, theta_in));
    }

    //! Direction-only factor P(theta'.theta) exp(beta(theta-theta').e)
    double angular(Vec<D> const& theta_in, Vec<D> const& theta_out) const
    {
        double mu = dot(theta_in, theta_out);
        double p = 0;
        for (auto it = poly_.rbegin(); it != poly_.rend(); ++it)
            p = p * mu + *it;
        if (skew_ != 0)
            p *= std::exp(skew_ * dot(theta_out - theta_in, skew_axis_));
        return p;
    }

    //! Spatial factor g(x)
    double spatial(Vec<D> const& x) const { return g_(x); }

    //! Accumulated log gauge psi(x, theta)
    double log_gauge(Vec<D> const& x, Vec<D> const& theta) const
    {
        double s = 0;
        for (auto const& g : gauges_)
            s += g.v(x, theta);
        return s;
    }

    /*!
     * Total scattering sigma(x, theta) = int k(x, theta, theta') dtheta'
     * in closed form when available.
     */
    std::optional<double> total_closed_form(Vec<D> const& x) const
    {
        if (skew_ != 0 || !gauges_.empty())
            return std::nullopt;
        double m = 0;
        for (std::size_t j = 0; j < poly_.size(); ++j)
            m += poly_[j] * sphere_moment<D>(static_cast<int>(j));
        return g_(x) * m;
    }

    //! Total scattering, by quadrature when no closed form exists
    double total(Vec<D> const& x, Vec<D> const& theta,
                 SphereQuadrature<D> const& quad) const
    {
        if (auto c = total_closed_form(x))
            return *c;
        return quad.integrate(
            [&](Direction<D> const& tp) { return (*this)(x, theta, tp.vec()); });
    }

    //// ACCESSORS ////

    std::string const& kind() const { return kind_; }
    bool is_zero() const
    {
        return g_.is_constant() && g_(Vec<D>{}) == 0;
    }
    //! k(x,theta,theta') = k(x,theta',theta) holds by construction
    bool symmetric_by_construction() const
    {
        if (skew_ != 0)
            return false;
        for (auto const& g : gauges_)
            if (!g.direction_independent())
                return false;
        return true;
    }
    SpatialField<D> const& spatial_field() const { return g_; }
    std::vector<double> const& poly() const { return poly_; }
    Vec<D> const& skew_axis() const { return skew_axis_; }
    double skew() const { return skew_; }
    std::vector<GaugeField<D>> const& gauges() const { return gauges_; }

  private:
    std::string kind_;
    SpatialField<D> g_;
    std::vector<double> poly_{1.0};
    Vec<D> skew_axis_ = Vec<D>::axis(0);
    double skew_{0};
    std::vector<GaugeField<D>> gauges_;
};

//---------------------------------------------------------------------------//
}  // namespace rte
