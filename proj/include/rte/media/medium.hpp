//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/media/medium.hpp
//! \brief The coefficient pair (a, k) on a domain and its sampled checks
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "../core/sampling.hpp"
#include "../geometry/domain.hpp"
#include "../geometry/sphere_quadrature.hpp"
#include "absorption.hpp"
#include "scattering.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * Absorption and scattering coefficients over a closed convex domain.
 *
 * The pair carries its domain so that pointwise evaluation can reject
 * positions outside the closure.
 */
template<int D>
class MediumPair
{
  public:
    MediumPair(ConvexDomain<D> domain, AbsorptionField<D> a,
               ScatteringKernel<D> k, bool continuous = true)
        : domain_(std::move(domain))
        , a_(std::move(a))
        , k_(std::move(k))
        , continuous_(continuous)
    {
        if (!a_.valid())
            throw ConfigError("medium requires an absorption field");
    }

    ConvexDomain<D> const& domain() const { return domain_; }
    AbsorptionField<D> const& absorption() const { return a_; }
    ScatteringKernel<D> const& scattering() const { return k_; }
    //! Whether the pair is declared continuous on the closed phase space
    bool continuous() const { return continuous_; }

    MediumPair with_absorption(AbsorptionField<D> a) const
    {
        return MediumPair(domain_, std::move(a), k_, continuous_);
    }
    MediumPair with_scattering(ScatteringKernel<D> k) const
    {
        return MediumPair(domain_, a_, std::move(k), continuous_);
    }

  private:
    ConvexDomain<D> domain_;
    AbsorptionField<D> a_;
    ScatteringKernel<D> k_;
    bool continuous_;
};

//---------------------------------------------------------------------------//
//! Absorption a(x, theta); x must lie in the closed domain
template<int D>
double eval_a(MediumPair<D> const& pair, Vec<D> const& x,
              Direction<D> const& theta)
{
    if (!pair.domain().contains(x))
        throw DomainError("eval_a: point lies outside the domain");
    return pair.absorption()(x, theta.vec());
}

//! Scattering k(x, theta_in, theta_out) from theta_in into theta_out
template<int D>
double eval_k(MediumPair<D> const& pair, Vec<D> const& x,
              Direction<D> const& theta_in, Direction<D> const& theta_out)
{
    if (!pair.domain().contains(x))
        throw DomainError("eval_k: point lies outside the domain");
    return pair.scattering()(x, theta_in.vec(), theta_out.vec());
}

//---------------------------------------------------------------------------//
// SAMPLING
//---------------------------------------------------------------------------//
//! Phase-space sample point
template<int D>
struct PhasePoint
{
    Vec<D> x;
    Direction<D> theta;
};

/*!
 * Quasi-random phase-space sample over the domain.
 *
 * The center paired with each coordinate axis (both signs) comes first so
 * that the longest axis chords are always represented.
 */
template<int D>
std::vector<PhasePoint<D>> sample_phase_space(ConvexDomain<D> const& domain,
                                              std::size_t count,
                                              std::uint64_t seed = 0)
{
    std::vector<PhasePoint<D>> pts;
    pts.reserve(count + 2 * D);
    for (int i = 0; i < D; ++i)
    {
        pts.push_back({domain.center(), Direction<D>::axis(i)});
        pts.push_back({domain.center(), -Direction<D>::axis(i)});
    }
    Halton h(seed);
    for (std::size_t i = 0; i < count; ++i)
    {
        Vec<D> y = uniform_ball_point<D>(h(i, 0), h(i, 1), h(i, 2));
        Vec<D> t = uniform_sphere_point<D>(h(i, 3), h(i, 4));
        pts.push_back({domain.from_unit(y), Direction<D>(t)});
    }
    return pts;
}

//! Default rule for total-scattering integrals without a closed form
template<int D>
SphereQuadrature<D> const& default_check_quadrature()
{
    static SphereQuadrature<D> const q
        = make_sphere_quadrature<D>(D == 2 ? 128 : 512);
    return q;
}

//---------------------------------------------------------------------------//
// CHECKS
//---------------------------------------------------------------------------//
template<int D>
struct CheckReport
{
    bool satisfied{false};
    double worst_value{0};
    Vec<D> worst_x{};
    Direction<D> worst_theta{};
    std::size_t samples{0};
};

struct SymmetryReport
{
    bool sym_atten{true};
    bool sym_scat{true};
    bool k_positive{true};
    double max_atten_asymmetry{0};
    double max_scat_asymmetry{0};
    double min_k{std::numeric_limits<double>::infinity()};
};

/*!
 * Admissibility: sup |a| + int |k| dtheta' finite on the sample.
 *
 * worst_value holds the sampled supremum.
 */
template<int D>
CheckReport<D> check_admissible(MediumPair<D> const& pair, std::size_t sample,
                                std::uint64_t seed = 0)
{
    auto const& quad = default_check_quadrature<D>();
    CheckReport<D> r;
    r.worst_value = 0;
    for (auto const& p : sample_phase_space(pair.domain(), sample, seed))
    {
        double a = std::abs(pair.absorption()(p.x, p.theta.vec()));
        double s = quad.integrate([&](Direction<D> const& tp) {
            return std::abs(pair.scattering()(p.x, p.theta.vec(), tp.vec()));
        });
        double v = a + s;
        if (!std::isfinite(v))
        {
            r.worst_value = v;
            r.worst_x = p.x;
            r.worst_theta = p.theta;
            r.satisfied = false;
            return r;
        }
        if (v > r.worst_value)
        {
            r.worst_value = v;
            r.worst_x = p.x;
            r.worst_theta = p.theta;
        }
        ++r.samples;
    }
    r.satisfied = std::isfinite(r.worst_value);
    return r;
}

/*!
 * Free-path subcriticality: sup |tau(x,theta) sigma(x,theta)| < 1 where
 * sigma(x,theta) = int k(x,theta,theta') dtheta'.
 */
template<int D>
CheckReport<D> check_subcritical_cs(MediumPair<D> const& pair,
                                    std::size_t sample, std::uint64_t seed = 0)
{
    auto const& quad = default_check_quadrature<D>();
    auto const& dom = pair.domain();
    CheckReport<D> r;
    r.worst_value = -1;
    for (auto const& p : sample_phase_space(dom, sample, seed))
    {
        double sigma = pair.scattering().total(p.x, p.theta.vec(), quad);
        double v = std::abs(dom.chord(p.x, p.theta).length() * sigma);
        if (v > r.worst_value)
        {
            r.worst_value = v;
            r.worst_x = p.x;
            r.worst_theta = p.theta;
        }
        ++r.samples;
    }
    r.satisfied = r.worst_value < 1;
    return r;
}

/*!
 * Absorption-dominance subcriticality: a - sigma >= 0 on the sample.
 *
 * worst_value holds the minimum margin a - sigma.
 */
template<int D>
CheckReport<D> check_subcritical_dl(MediumPair<D> const& pair,
                                    std::size_t sample, std::uint64_t seed = 0)
{
    auto const& quad = default_check_quadrature<D>();
    CheckReport<D> r;
    r.worst_value = std::numeric_limits<double>::infinity();
    for (auto const& p : sample_phase_space(pair.domain(), sample, seed))
    {
        double sigma = pair.scattering().total(p.x, p.theta.vec(), quad);
        double v = pair.absorption()(p.x, p.theta.vec()) - sigma;
        if (v < r.worst_value)
        {
            r.worst_value = v;
            r.worst_x = p.x;
            r.worst_theta = p.theta;
        }
        ++r.samples;
    }
    r.satisfied = r.worst_value >= -1e-12;
    return r;
}

/*!
 * Sampled symmetry hypotheses: a(x,theta) = a(x,-theta),
 * k(x,theta,theta') = k(x,theta',theta) and k > 0, each to 1e-12.
 */
template<int D>
SymmetryReport check_symmetries(MediumPair<D> const& pair, std::size_t sample,
                                std::uint64_t seed = 0)
{
    constexpr double tol = 1e-12;
    SymmetryReport r;
    auto const& a = pair.absorption();
    auto const& k = pair.scattering();
    Halton h(seed);
    auto pts = sample_phase_space(pair.domain(), sample, seed);
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        auto const& p = pts[i];
        Vec<D> t = p.theta.vec();
        Vec<D> tp = uniform_sphere_point<D>(h(i, 5), h(i, 6));

        double a1 = a(p.x, t);
        double a2 = a(p.x, -t);
        double da = std::abs(a1 - a2) / std::max(1.0, std::abs(a1));
        r.max_atten_asymmetry = std::max(r.max_atten_asymmetry, da);

        double k1 = k(p.x, t, tp);
        double k2 = k(p.x, tp, t);
        double dk = std::abs(k1 - k2) / std::max(1.0, std::abs(k1));
        r.max_scat_asymmetry = std::max(r.max_scat_asymmetry, dk);
        r.min_k = std::min({r.min_k, k1, k2});
    }
    r.sym_atten = r.max_atten_asymmetry <= tol;
    r.sym_scat = r.max_scat_asymmetry <= tol;
    r.k_positive = r.min_k > 0;
    return r;
}

//---------------------------------------------------------------------------//
}  // namespace rte
