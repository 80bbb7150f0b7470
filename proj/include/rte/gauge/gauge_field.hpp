//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/gauge/gauge_field.hpp
//! \brief Log-gauge fields v(x, theta) with phi = exp(v)
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "../geometry/domain.hpp"
#include "../media/spatial_field.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * Interface for a log-gauge v(x, theta).
 *
 * Daughters supply v and its derivative along theta, theta . grad_x v.
 */
template<int D>
class LogGaugeModel
{
  public:
    virtual ~LogGaugeModel() = default;

    virtual double value(Vec<D> const& x, Vec<D> const& theta) const = 0;
    virtual double
    directional_derivative(Vec<D> const& x, Vec<D> const& theta) const
        = 0;

    //! True if v is known to be independent of theta
    virtual bool direction_independent() const { return false; }

    virtual std::string kind() const = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Gauge field: shared immutable handle to a log-gauge model.
 *
 * A default-constructed gauge is the identity (v = 0).
 */
template<int D>
class GaugeField
{
  public:
    using Model = LogGaugeModel<D>;

    GaugeField() = default;
    explicit GaugeField(std::shared_ptr<Model const> m) : model_(std::move(m))
    {
    }

    bool is_identity() const { return !model_; }
    Model const* model() const { return model_.get(); }

    double v(Vec<D> const& x, Vec<D> const& theta) const
    {
        return model_ ? model_->value(x, theta) : 0.0;
    }
    double phi(Vec<D> const& x, Vec<D> const& theta) const
    {
        return std::exp(v(x, theta));
    }
    //! theta . grad_x v  (= theta . grad_x log phi)
    double
    directional_derivative(Vec<D> const& x, Vec<D> const& theta) const
    {
        return model_ ? model_->directional_derivative(x, theta) : 0.0;
    }
    bool direction_independent() const
    {
        return !model_ || model_->direction_independent();
    }
    std::string kind() const { return model_ ? model_->kind() : "identity"; }

  private:
    std::shared_ptr<Model const> model_;
};

//---------------------------------------------------------------------------//
//! Term g(x) m(theta) of a separable sum
template<int D>
struct SeparableTerm
{
    SpatialField<D> space;
    AngularPoly<D> angle;

    double operator()(Vec<D> const& x, Vec<D> const& theta) const
    {
        return space(x) * angle(theta);
    }
    //! theta . grad_x of the term (the angular factor is x-independent)
    double directional(Vec<D> const& x, Vec<D> const& theta) const
    {
        return angle(theta) * dot(theta, space.gradient(x));
    }
};

//---------------------------------------------------------------------------//
/*!
 * v(x, theta) = b(x) * sum_t g_t(x) m_t(theta), where b is the domain's
 * boundary-defining function. Vanishes on the boundary exactly.
 */
template<int D>
class BoundaryPolyGauge final : public LogGaugeModel<D>
{
  public:
    BoundaryPolyGauge(ConvexDomain<D> domain,
                      std::vector<SeparableTerm<D>> terms)
        : domain_(std::move(domain)), terms_(std::move(terms))
    {
    }

    double value(Vec<D> const& x, Vec<D> const& theta) const final
    {
        return domain_.defining_function(x) * poly(x, theta);
    }

    double directional_derivative(Vec<D> const& x,
                                  Vec<D> const& theta) const final
    {
        double db = dot(theta, domain_.defining_gradient(x));
        double dp = 0;
        for (auto const& t : terms_)
            dp += t.directional(x, theta);
        return db * poly(x, theta) + domain_.defining_function(x) * dp;
    }

    bool direction_independent() const final
    {
        for (auto const& t : terms_)
            if (!t.angle.is_constant())
                return false;
        return true;
    }

    std::string kind() const final { return "boundary_poly"; }

    ConvexDomain<D> const& domain() const { return domain_; }
    std::vector<SeparableTerm<D>> const& terms() const { return terms_; }

  private:
    ConvexDomain<D> domain_;
    std::vector<SeparableTerm<D>> terms_;

    double poly(Vec<D> const& x, Vec<D> const& theta) const
    {
        double p = 0;
        for (auto const& t : terms_)
            p += t(x, theta);
        return p;
    }
};

//---------------------------------------------------------------------------//
//! Pointwise sum of log-gauges (composition of gauge transformations)
template<int D>
class SumGauge final : public LogGaugeModel<D>
{
  public:
    explicit SumGauge(std::vector<GaugeField<D>> parts)
        : parts_(std::move(parts))
    {
    }

    double value(Vec<D> const& x, Vec<D> const& theta) const final
    {
        double s = 0;
        for (auto const& g : parts_)
            s += g.v(x, theta);
        return s;
    }
    double directional_derivative(Vec<D> const& x,
                                  Vec<D> const& theta) const final
    {
        double s = 0;
        for (auto const& g : parts_)
            s += g.directional_derivative(x, theta);
        return s;
    }
    bool direction_independent() const final
    {
        for (auto const& g : parts_)
            if (!g.direction_independent())
                return false;
        return true;
    }
    std::string kind() const final { return "sum"; }

    std::vector<GaugeField<D>> const& parts() const { return parts_; }

  private:
    std::vector<GaugeField<D>> parts_;
};

//---------------------------------------------------------------------------//
/*!
 * Log-gauge from an arbitrary callable; the directional derivative is a
 * central difference with step \c h.
 */
template<int D>
class CallableGauge final : public LogGaugeModel<D>
{
  public:
    using Fn = std::function<double(Vec<D> const&, Vec<D> const&)>;

    CallableGauge(Fn v, double h, bool direction_independent = false)
        : v_(std::move(v)), h_(h), indep_(direction_independent)
    {
    }

    double value(Vec<D> const& x, Vec<D> const& theta) const final
    {
        return v_(x, theta);
    }
    double directional_derivative(Vec<D> const& x,
                                  Vec<D> const& theta) const final
    {
        return (v_(x + h_ * theta, theta) - v_(x - h_ * theta, theta))
               / (2 * h_);
    }
    bool direction_independent() const final { return indep_; }
    std::string kind() const final { return "callable"; }

  private:
    Fn v_;
    double h_;
    bool indep_;
};

//---------------------------------------------------------------------------//
// FACTORIES
//---------------------------------------------------------------------------//
template<int D>
GaugeField<D> make_boundary_poly_gauge(ConvexDomain<D> const& domain,
                                       std::vector<SeparableTerm<D>> terms)
{
    return GaugeField<D>(
        std::make_shared<BoundaryPolyGauge<D>>(domain, std::move(terms)));
}

//! v = scale * b(x), theta-independent
template<int D>
GaugeField<D>
make_scaled_boundary_gauge(ConvexDomain<D> const& domain, double scale)
{
    return make_boundary_poly_gauge<D>(
        domain, {SeparableTerm<D>{SpatialField<D>::constant(scale), {}}});
}

template<int D>
GaugeField<D> compose_gauges(std::vector<GaugeField<D>> parts)
{
    return GaugeField<D>(std::make_shared<SumGauge<D>>(std::move(parts)));
}

//---------------------------------------------------------------------------//
}  // namespace rte
