//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/inversion/recover.hpp
//! \brief Recovery of k and a from extracted data; gauge-class verification
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include "../core/sampling.hpp"
#include "../extraction/exact.hpp"
#include "../gauge/gauge.hpp"
#include "report.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
//! Clamp threshold for slightly negative I00 products
inline constexpr double negativity_clamp = 1e-12;

//---------------------------------------------------------------------------//
/*!
 * Recover k(x, theta', theta) from records containing both orientations of
 * each direction pair:
 * k = sqrt(I00(x,theta',theta) I00(x,theta,theta') / (J0(theta) J0(theta'))).
 */
template<int D>
ReconstructionReport<D>
recover_k_symmetric(std::vector<ExtractionRecord<D>> const& records)
{
    using Key = std::array<double, 3 * D>;
    auto key = [](Vec<D> const& x, Vec<D> const& tp, Vec<D> const& t) {
        Key k;
        for (int i = 0; i < D; ++i)
        {
            k[i] = x[i];
            k[D + i] = tp[i];
            k[2 * D + i] = t[i];
        }
        return k;
    };
    std::map<Key, std::size_t> index;
    for (std::size_t i = 0; i < records.size(); ++i)
    {
        auto const& r = records[i];
        index[key(r.x, r.theta_prime.vec(), r.theta.vec())] = i;
    }

    ReconstructionReport<D> rep;
    rep.quantity = "k";
    for (auto const& r : records)
    {
        auto it = index.find(key(r.x, r.theta.vec(), r.theta_prime.vec()));
        if (it == index.end())
            throw DataError("record has no swapped partner (x, theta, theta')");
        auto const& s = records[it->second];
        if (!(r.j0_theta > 0) || !(r.j0_theta_prime > 0))
            throw DataError("J0 must be strictly positive");
        double prod = r.i00 * s.i00;
        if (prod < -negativity_clamp)
        {
            std::ostringstream os;
            os << "I00 product is negative (" << prod << ")";
            throw InconsistencyError(os.str());
        }
        prod = std::max(prod, 0.0);
        rep.points.push_back(r.x);
        rep.theta_prime.push_back(r.theta_prime.vec());
        rep.theta.push_back(r.theta.vec());
        rep.recovered.push_back(
            std::sqrt(prod / (r.j0_theta * r.j0_theta_prime)));
    }
    return rep;
}

//! Ground-truth k on the report's samples
template<int D>
std::vector<double> k_truth(ReconstructionReport<D> const& rep,
                            ScatteringKernel<D> const& k)
{
    std::vector<double> t;
    for (std::size_t i = 0; i < rep.points.size(); ++i)
        t.push_back(k(rep.points[i], rep.theta_prime[i], rep.theta[i]));
    return t;
}

//---------------------------------------------------------------------------//
/*!
 * Source of I00 and J0 values at arbitrary arguments.
 */
template<int D>
class ExtractionData
{
  public:
    virtual ~ExtractionData() = default;
    virtual double i00(Vec<D> const& x, Direction<D> const& theta_prime,
                       Direction<D> const& theta) const
        = 0;
    virtual double j0(Vec<D> const& x, Direction<D> const& theta) const = 0;
    virtual ConvexDomain<D> const& domain() const = 0;
};

//! Extraction limits evaluated directly from a medium
template<int D>
class ExactExtraction final : public ExtractionData<D>
{
  public:
    ExactExtraction(MediumPair<D> pair, double ray_step)
        : pair_(std::move(pair)), step_(ray_step)
    {
    }
    double i00(Vec<D> const& x, Direction<D> const& theta_prime,
               Direction<D> const& theta) const final
    {
        return i00_extended(pair_, x, theta_prime, theta, step_);
    }
    double j0(Vec<D> const& x, Direction<D> const& theta) const final
    {
        return j0_exact(pair_, x, theta, step_);
    }
    ConvexDomain<D> const& domain() const final { return pair_.domain(); }

  private:
    MediumPair<D> pair_;
    double step_;
};

/*!
 * Backscatter quantity
 * (1/2) log(I00(x,-theta,theta) / (I00(x,theta,-theta) J0(theta) J0(-theta))),
 * which equals the sum of the backward half-line optical depths in the
 * directions theta and -theta.
 */
template<int D>
double backscatter_half_line_sum(ExtractionData<D> const& data,
                                 Vec<D> const& x, Direction<D> const& theta)
{
    double num = data.i00(x, -theta, theta);
    double den = data.i00(x, theta, -theta) * data.j0(x, theta)
                 * data.j0(x, -theta);
    if (!(num > 0) || !(den > 0))
        throw DataError("backscatter ratio must be positive");
    return 0.5 * std::log(num / den);
}

/*!
 * a(x, theta) from the directional derivative of the backscatter quantity,
 * by central differences with step \c fd_step along theta.
 *
 * Without line symmetry this recovers (a(x,theta) + a(x,-theta))/2.
 */
template<int D>
double recover_a_line_symmetric(ExtractionData<D> const& data,
                                Vec<D> const& x, Direction<D> const& theta,
                                double fd_step)
{
    if (!(fd_step > 0))
        throw ConfigError("fd_step must be positive");
    auto const& dom = data.domain();
    if (!dom.contains(x) || dom.exit_time(x, theta) <= fd_step
        || dom.exit_time(x, -theta) <= fd_step)
        throw DomainError("finite-difference stencil leaves the domain");
    double hi = backscatter_half_line_sum(data, x + fd_step * theta, theta);
    double lo = backscatter_half_line_sum(data, x - fd_step * theta, theta);
    return (hi - lo) / (2 * fd_step) / 2;
}

//---------------------------------------------------------------------------//
struct GaugeClassReport
{
    bool equivalent{false};
    double worst_line_integral{0};
    double max_boundary_violation{0};
    double max_k_ratio_violation{0};
    std::string message;
};

template<int D>
struct GaugeClassResult
{
    GaugeClassReport report;
    GaugeField<D> v_field;  //!< identity when not equivalent
};

/*!
 * Decide whether pair_tilde is a gauge transform of pair.
 *
 * Builds v from the beam transform of a - a~, then checks
 * k~(x,theta',theta) = exp(v(x,theta) - v(x,theta')) k(x,theta',theta)
 * on a phase-space sample.
 */
template<int D>
GaugeClassResult<D> verify_gauge_class(MediumPair<D> const& pair,
                                       MediumPair<D> const& pair_tilde,
                                       double tol = 1e-6, double step = 1e-3,
                                       std::size_t sample = 200)
{
    GaugeClassResult<D> res;
    auto& r = res.report;
    auto const& dom = pair.domain();
    try
    {
        res.v_field = gauge_from_difference(pair.absorption(),
                                            pair_tilde.absorption(), dom, step,
                                            tol);
    }
    catch (NotGaugeEquivalentError const& e)
    {
        r.equivalent = false;
        r.worst_line_integral = e.worst_line_integral();
        r.message = e.what();
        return res;
    }
    auto val = validate_gauge(res.v_field, dom);
    r.max_boundary_violation = val.max_boundary_violation;

    Halton h(53);
    auto const& k = pair.scattering();
    auto const& kt = pair_tilde.scattering();
    auto pts = sample_phase_space(dom, sample, 61);
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        auto const& p = pts[i];
        Direction<D> tp(uniform_sphere_point<D>(h(i, 0), h(i, 1)));
        double v1 = res.v_field.v(p.x, p.theta.vec());
        double v0 = res.v_field.v(p.x, tp.vec());
        double expected = std::exp(v1 - v0) * k(p.x, tp.vec(), p.theta.vec());
        double actual = kt(p.x, tp.vec(), p.theta.vec());
        double viol = std::abs(actual - expected)
                      / std::max(std::abs(expected), 1e-12);
        r.max_k_ratio_violation = std::max(r.max_k_ratio_violation, viol);
    }
    r.equivalent = val.valid && r.max_k_ratio_violation <= tol;
    std::ostringstream os;
    if (r.equivalent)
        os << "gauge equivalent";
    else if (!val.valid)
        os << "reconstructed gauge does not vanish on the boundary";
    else
        os << "scattering kernels are not related by the gauge (relative "
              "violation "
           << r.max_k_ratio_violation << ")";
    r.message = os.str();
    return res;
}

//---------------------------------------------------------------------------//
//! int a(x, theta) dtheta at each point
template<int D>
std::vector<double> total_absorption(AbsorptionField<D> const& a,
                                     SphereQuadrature<D> const& quad,
                                     std::vector<Vec<D>> const& points)
{
    std::vector<double> out;
    for (auto const& x : points)
        out.push_back(quad.integrate(
            [&](Direction<D> const& t) { return a(x, t.vec()); }));
    return out;
}

/*!
 * Total absorption of the original medium reconstructed from a gauge
 * transform: int (a~ + theta.grad v) dtheta.
 */
template<int D>
std::vector<double>
recover_total_absorption(GaugeField<D> const& v,
                         MediumPair<D> const& pair_tilde,
                         SphereQuadrature<D> const& quad,
                         std::vector<Vec<D>> const& points)
{
    std::vector<double> out;
    auto const& at = pair_tilde.absorption();
    for (auto const& x : points)
        out.push_back(quad.integrate([&](Direction<D> const& t) {
            return at(x, t.vec()) + v.directional_derivative(x, t.vec());
        }));
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace rte
