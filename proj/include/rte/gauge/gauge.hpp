//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/gauge/gauge.hpp
//! \brief Gauge transformations of media and gauge recovery from absorption
//!        differences
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "../core/quadrature.hpp"
#include "../core/sampling.hpp"
#include "../geometry/boundary_grid.hpp"
#include "../media/medium.hpp"
#include "gauge_field.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
struct GaugeValidation
{
    bool valid{false};
    double max_boundary_violation{0};  //!< max |v| on the boundary sample
    double sup_v{0};
    double sup_derivative{0};
};

/*!
 * Check the defining properties of a gauge on samples: v = 0 on the
 * boundary (to 1e-9) and bounded v and theta . grad v in the interior.
 */
template<int D>
GaugeValidation validate_gauge(GaugeField<D> const& g,
                               ConvexDomain<D> const& domain,
                               std::size_t sample = 2000)
{
    GaugeValidation r;
    if (g.is_identity())
    {
        r.valid = true;
        return r;
    }
    Halton h(17);
    auto nodes = make_boundary_nodes(domain, 200);
    for (std::size_t i = 0; i < nodes.size(); ++i)
    {
        for (int j = 0; j < 8; ++j)
        {
            Vec<D> t = uniform_sphere_point<D>(h(8 * i + j, 0),
                                               h(8 * i + j, 1));
            r.max_boundary_violation = std::max(
                r.max_boundary_violation,
                std::abs(g.v(nodes[i].point.position, t)));
        }
    }
    for (auto const& p : sample_phase_space(domain, sample, 29))
    {
        r.sup_v = std::max(r.sup_v, std::abs(g.v(p.x, p.theta.vec())));
        r.sup_derivative = std::max(
            r.sup_derivative,
            std::abs(g.directional_derivative(p.x, p.theta.vec())));
    }
    r.valid = r.max_boundary_violation <= 1e-9 && std::isfinite(r.sup_v)
              && std::isfinite(r.sup_derivative);
    return r;
}

//---------------------------------------------------------------------------//
/*!
 * Gauge transformation of a medium:
 * a~ = a - theta . grad log phi,  k~(x,theta',theta) =
 * phi(x,theta)/phi(x,theta') k(x,theta',theta).
 */
template<int D>
MediumPair<D> apply_gauge(MediumPair<D> const& pair, GaugeField<D> const& g)
{
    if (g.is_identity())
        return pair;
    auto check = validate_gauge(g, pair.domain());
    if (!check.valid)
    {
        std::ostringstream os;
        os << "gauge field violates phi = 1 on the boundary (max |v| = "
           << check.max_boundary_violation << ")";
        throw ValidationError(os.str());
    }
    using Sum = GeneralSumAbsorption<D>;
    auto a = make_general_sum_absorption<D>(
        {}, {typename Sum::Part{1.0, pair.absorption()}},
        {typename Sum::GaugePart{-1.0, g}});
    return MediumPair<D>(pair.domain(), a, pair.scattering().gauged(g),
                         pair.continuous());
}

//---------------------------------------------------------------------------//
/*!
 * Beam transform: int_{-tau_-(x,theta)}^0 f(x + s theta, theta) ds by
 * composite Simpson with the given step.
 */
template<int D, class F>
double beam_transform(F const& f, ConvexDomain<D> const& domain,
                      Vec<D> const& x, Direction<D> const& theta, double step)
{
    double back = domain.exit_time(x, -theta);
    if (back <= 0)
        return 0;
    Vec<D> const t = theta.vec();
    return composite_simpson(
        [&](double s) { return f(x + s * t, t); }, -back, 0.0, step);
}

//! Full line integral of f along the chord through (x, theta)
template<int D, class F>
double line_integral(F const& f, ConvexDomain<D> const& domain,
                     Vec<D> const& x, Direction<D> const& theta, double step)
{
    Chord c = domain.chord(x, theta);
    Vec<D> const t = theta.vec();
    return composite_simpson(
        [&](double s) { return f(x + s * t, t); }, -c.backward, c.forward,
        step);
}

//---------------------------------------------------------------------------//
/*!
 * Log gauge given by the beam transform of f = a - a~.
 *
 * Its derivative along theta is f itself.
 */
template<int D>
class BeamGauge final : public LogGaugeModel<D>
{
  public:
    BeamGauge(ConvexDomain<D> domain, AbsorptionField<D> a,
              AbsorptionField<D> a_tilde, double step)
        : domain_(std::move(domain))
        , a_(std::move(a))
        , a_tilde_(std::move(a_tilde))
        , step_(step)
    {
    }

    double difference(Vec<D> const& x, Vec<D> const& theta) const
    {
        return a_(x, theta) - a_tilde_(x, theta);
    }

    double value(Vec<D> const& x, Vec<D> const& theta) const final
    {
        if (!domain_.contains(x))
            throw DomainError("beam gauge evaluated outside the domain");
        auto f = [this](Vec<D> const& y, Vec<D> const& t) {
            return difference(y, t);
        };
        return beam_transform(f, domain_, x, Direction<D>(theta), step_);
    }

    double directional_derivative(Vec<D> const& x,
                                  Vec<D> const& theta) const final
    {
        return difference(x, theta);
    }

    std::string kind() const final { return "beam"; }

  private:
    ConvexDomain<D> domain_;
    AbsorptionField<D> a_;
    AbsorptionField<D> a_tilde_;
    double step_;
};

//---------------------------------------------------------------------------//
/*!
 * Recover the gauge relating two absorptions, v = beam transform of
 * a - a~.
 *
 * First checks that the full line integrals of a - a~ vanish on a ray sample
 * (to \c tol times the chord length); throws NotGaugeEquivalentError if not.
 */
template<int D>
GaugeField<D> gauge_from_difference(AbsorptionField<D> const& a,
                                    AbsorptionField<D> const& a_tilde,
                                    ConvexDomain<D> const& domain, double step,
                                    double tol = 1e-6,
                                    std::size_t ray_sample = 500)
{
    auto model = std::make_shared<BeamGauge<D>>(domain, a, a_tilde, step);
    auto f = [&](Vec<D> const& y, Vec<D> const& t) {
        return model->difference(y, t);
    };
    double worst = 0;
    for (auto const& p : sample_phase_space(domain, ray_sample, 41))
    {
        double len = domain.chord(p.x, p.theta).length();
        if (len <= 0)
            continue;
        double ratio = std::abs(line_integral(f, domain, p.x, p.theta, step))
                       / len;
        worst = std::max(worst, ratio);
    }
    if (worst > tol)
    {
        std::ostringstream os;
        os << "absorptions are not gauge equivalent: line integral of a - a~ "
              "reaches "
           << worst << " per unit length";
        throw NotGaugeEquivalentError(os.str(), worst);
    }
    return GaugeField<D>(model);
}

//---------------------------------------------------------------------------//
}  // namespace rte
