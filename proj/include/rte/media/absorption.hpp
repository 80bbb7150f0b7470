//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/media/absorption.hpp
//! \brief Absorption coefficient families a(x, theta)
//---------------------------------------------------------------------------//
#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "../gauge/gauge_field.hpp"
#include "spatial_field.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
//! Interface for an absorption family
template<int D>
class AbsorptionModel
{
  public:
    virtual ~AbsorptionModel() = default;

    virtual double value(Vec<D> const& x, Vec<D> const& theta) const = 0;
    virtual std::string kind() const = 0;

    //! a(x, theta) = a(x, -theta) holds by construction
    virtual bool line_symmetric() const { return false; }
    //! a depends on x only
    virtual bool isotropic() const { return false; }
};

//---------------------------------------------------------------------------//
/*!
 * Absorption field: shared immutable handle to an absorption model.
 */
template<int D>
class AbsorptionField
{
  public:
    using Model = AbsorptionModel<D>;

    AbsorptionField() = default;
    explicit AbsorptionField(std::shared_ptr<Model const> m)
        : model_(std::move(m))
    {
    }

    double operator()(Vec<D> const& x, Vec<D> const& theta) const
    {
        return model_->value(x, theta);
    }
    std::string kind() const { return model_->kind(); }
    bool line_symmetric() const { return model_->line_symmetric(); }
    bool isotropic() const { return model_->isotropic(); }
    Model const& model() const { return *model_; }
    bool valid() const { return static_cast<bool>(model_); }

  private:
    std::shared_ptr<Model const> model_;
};

//---------------------------------------------------------------------------//
// KINDS
//---------------------------------------------------------------------------//
//! a = c
template<int D>
class ConstantAbsorption final : public AbsorptionModel<D>
{
  public:
    explicit ConstantAbsorption(double c) : c_(c) {}
    double value(Vec<D> const&, Vec<D> const&) const final { return c_; }
    std::string kind() const final { return "constant"; }
    bool line_symmetric() const final { return true; }
    bool isotropic() const final { return true; }
    double c() const { return c_; }

  private:
    double c_;
};

//! a = g(x); kind label distinguishes polynomial and bump profiles
template<int D>
class IsotropicAbsorption final : public AbsorptionModel<D>
{
  public:
    IsotropicAbsorption(std::string kind, SpatialField<D> g)
        : kind_(std::move(kind)), g_(std::move(g))
    {
    }
    double value(Vec<D> const& x, Vec<D> const&) const final { return g_(x); }
    std::string kind() const final { return kind_; }
    bool line_symmetric() const final { return true; }
    bool isotropic() const final { return true; }
    SpatialField<D> const& field() const { return g_; }

  private:
    std::string kind_;
    SpatialField<D> g_;
};

//! a = p(x) + q(x) (theta . axis)^2
template<int D>
class LineSymmetricAbsorption final : public AbsorptionModel<D>
{
  public:
    LineSymmetricAbsorption(SpatialField<D> p, SpatialField<D> q, Vec<D> axis)
        : p_(std::move(p)), q_(std::move(q)), axis_(axis)
    {
    }
    double value(Vec<D> const& x, Vec<D> const& theta) const final
    {
        double t = dot(theta, axis_);
        return p_(x) + q_(x) * t * t;
    }
    std::string kind() const final { return "line_symmetric"; }
    bool line_symmetric() const final { return true; }

    SpatialField<D> const& p() const { return p_; }
    SpatialField<D> const& q() const { return q_; }
    Vec<D> const& axis() const { return axis_; }

  private:
    SpatialField<D> p_;
    SpatialField<D> q_;
    Vec<D> axis_;
};

//---------------------------------------------------------------------------//
/*!
 * General sum of separable terms g(x) m(theta), scaled absorption fields,
 * and scaled gauge derivatives c * theta . grad_x v.
 *
 * The gauge transformation a -> a - theta . grad log phi produces this kind.
 */
template<int D>
class GeneralSumAbsorption final : public AbsorptionModel<D>
{
  public:
    struct Part
    {
        double coef{1};
        AbsorptionField<D> field;
    };
    struct GaugePart
    {
        double coef{1};
        GaugeField<D> gauge;
    };

    GeneralSumAbsorption(std::vector<SeparableTerm<D>> terms,
                         std::vector<Part> parts = {},
                         std::vector<GaugePart> gauges = {})
        : terms_(std::move(terms))
        , parts_(std::move(parts))
        , gauges_(std::move(gauges))
    {
    }

    double value(Vec<D> const& x, Vec<D> const& theta) const final
    {
        double s = 0;
        for (auto const& t : terms_)
            s += t(x, theta);
        for (auto const& p : parts_)
            s += p.coef * p.field(x, theta);
        for (auto const& g : gauges_)
            s += g.coef * g.gauge.directional_derivative(x, theta);
        return s;
    }

    std::string kind() const final { return "general_sum"; }

    bool line_symmetric() const final
    {
        if (!gauges_.empty())
            return false;
        for (auto const& t : terms_)
            if (!t.angle.is_even())
                return false;
        for (auto const& p : parts_)
            if (!p.field.line_symmetric())
                return false;
        return true;
    }

    std::vector<SeparableTerm<D>> const& terms() const { return terms_; }
    std::vector<Part> const& parts() const { return parts_; }
    std::vector<GaugePart> const& gauges() const { return gauges_; }

  private:
    std::vector<SeparableTerm<D>> terms_;
    std::vector<Part> parts_;
    std::vector<GaugePart> gauges_;
};

//---------------------------------------------------------------------------//
// FACTORIES
//---------------------------------------------------------------------------//
template<int D>
AbsorptionField<D> make_constant_absorption(double c)
{
    return AbsorptionField<D>(std::make_shared<ConstantAbsorption<D>>(c));
}

template<int D>
AbsorptionField<D> make_isotropic_absorption(SpatialField<D> g)
{
    std::string kind = std::holds_alternative<typename SpatialField<D>::Bump>(
                           g.data())
                           ? "isotropic_bump"
                           : "isotropic_polynomial";
    return AbsorptionField<D>(
        std::make_shared<IsotropicAbsorption<D>>(kind, std::move(g)));
}

template<int D>
AbsorptionField<D> make_line_symmetric_absorption(SpatialField<D> p,
                                                  SpatialField<D> q,
                                                  Vec<D> axis)
{
    return AbsorptionField<D>(std::make_shared<LineSymmetricAbsorption<D>>(
        std::move(p), std::move(q), axis));
}

template<int D>
AbsorptionField<D>
make_general_sum_absorption(std::vector<SeparableTerm<D>> terms,
                            std::vector<typename GeneralSumAbsorption<D>::Part>
                                parts
                            = {},
                            std::vector<typename GeneralSumAbsorption<D>::GaugePart>
                                gauges
                            = {})
{
    return AbsorptionField<D>(std::make_shared<GeneralSumAbsorption<D>>(
        std::move(terms), std::move(parts), std::move(gauges)));
}

//---------------------------------------------------------------------------//
}  // namespace rte
