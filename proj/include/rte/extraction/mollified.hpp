//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/extraction/mollified.hpp
//! \brief Extraction functionals: albedo kernel against shrinking test functions
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "../core/quadrature.hpp"
#include "albedo_kernel.hpp"
#include "exact.hpp"
#include "mollifier.hpp"

namespace rte
{
namespace detail
{
//---------------------------------------------------------------------------//
//! Unit vectors completing \c c to an orthonormal basis
template<int D>
std::array<Vec<D>, D - 1> orthonormal_complement(Vec<D> const& c)
{
    if constexpr (D == 2)
    {
        return {Vec<2>{{-c[1], c[0]}}};
    }
    else
    {
        Vec<3> ref = std::abs(c[0]) < 0.9 ? Vec<3>::axis(0) : Vec<3>::axis(1);
        Vec<3> e1 = cross(c, ref);
        e1 = (1 / norm(e1)) * e1;
        return {e1, cross(c, e1)};
    }
}

/*!
 * Integrate f(u) over the spherical cap {u : angle(u, c) < psi_max} with the
 * unnormalized surface measure of the unit sphere.
 */
template<int D, class F>
double cap_integrate(Vec<D> const& c, double psi_max, F&& f)
{
    static GaussLegendre const gl(12);
    auto e = orthonormal_complement<D>(c);
    constexpr int panels = 3;
    double sum = 0;
    if constexpr (D == 2)
    {
        double h = 2 * psi_max / panels;
        for (int p = 0; p < panels; ++p)
        {
            sum += gl.integrate(
                [&](double psi) {
                    return f(std::cos(psi) * c + std::sin(psi) * e[0]);
                },
                -psi_max + p * h, -psi_max + (p + 1) * h);
        }
    }
    else
    {
        constexpr int n_omega = 32;
        double h = psi_max / panels;
        for (int p = 0; p < panels; ++p)
        {
            sum += gl.integrate(
                [&](double psi) {
                    double r = 0;
                    for (int k = 0; k < n_omega; ++k)
                    {
                        double om = 2 * std::numbers::pi * (k + 0.5) / n_omega;
                        Vec<3> u = std::cos(psi) * c
                                   + std::sin(psi)
                                         * (std::cos(om) * e[0]
                                            + std::sin(om) * e[1]);
                        r += f(u);
                    }
                    return r * std::sin(psi) * 2 * std::numbers::pi / n_omega;
                },
                p * h, (p + 1) * h);
        }
    }
    return sum;
}

template<int D>
constexpr double sphere_area()
{
    return D == 2 ? 2 * std::numbers::pi : 4 * std::numbers::pi;
}

inline void check_width(double w, double resolution, char const* name)
{
    if (!(w > 0))
        throw ConfigError(std::string(name) + " must be positive");
    if (w < resolution)
        throw ResolutionError(std::string(name)
                              + " is below the evaluator's resolution");
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * J_eps(x, theta): the albedo kernel at (x_theta^+, theta) integrated
 * against phi((x_theta^- - x')/eps) phi((theta - theta')/eps) over Gamma_-.
 */
template<int D>
double j_eps_mollified(AlbedoKernel<D> const& kernel, Vec<D> const& x,
                       Direction<D> const& theta, double eps,
                       MollifierND const& m = {})
{
    detail::check_width(eps, kernel.resolution(), "eps");
    auto const& dom = kernel.pair().domain();
    if (eps >= 2 * dom.min_semi_axis())
        throw ConfigError("mollifier support leaves the boundary chart");
    auto ch = dom.chord(x, theta);
    auto x_plus = dom.boundary_point(x + ch.forward * theta);
    auto x_minus = dom.boundary_point(x - ch.backward * theta);
    double tau = ch.length();

    double result = kernel.ballistic(x_plus, theta) * m.radial(0) * m.radial(0);

    // Single scattering: integrate the broken-ray density over the vertex
    // position s and incoming directions near theta
    static GaussLegendre const gs(4);
    int panels = std::max(8, static_cast<int>(std::ceil(4 * tau / eps)));
    std::vector<double> s_nodes, s_weights, out_depth;
    double hp = tau / panels;
    for (int p = 0; p < panels; ++p)
    {
        for (std::size_t i = 0; i < gs.nodes.size(); ++i)
        {
            double s = hp * (p + 0.5 * (gs.nodes[i] + 1));
            s_nodes.push_back(s);
            s_weights.push_back(0.5 * hp * gs.weights[i]);
        }
    }
    // cumulative depth along theta from x_plus
    double depth = 0, prev = 0;
    for (double s : s_nodes)
    {
        depth += attenuation_integral(kernel.pair(), x_plus.position, theta,
                                      prev, s, kernel.ray_step());
        out_depth.push_back(depth);
        prev = s;
    }
    double psi_max = 2 * std::asin(std::min(1.0, eps / 2));
    double single = detail::cap_integrate<D>(
        theta.vec(), psi_max, [&](Vec<D> const& u) {
            double wdir = m.radial(norm(theta.vec() - u) / eps);
            if (wdir == 0 || 1 - dot(theta.vec(), u) < 1e-14)
                return 0.0;
            Direction<D> tp(u);
            double sum = 0;
            for (std::size_t i = 0; i < s_nodes.size(); ++i)
            {
                Vec<D> entry;
                double dens = kernel.single_density(x_plus.position, theta,
                                                    s_nodes[i], tp,
                                                    out_depth[i], &entry);
                if (dens == 0)
                    continue;
                double w = m.radial(norm(x_minus.position - entry) / eps);
                sum += s_weights[i] * dens * w;
            }
            return wdir * sum;
        });
    result += single / detail::sphere_area<D>();

    // Multiple scattering: smooth part times the test-function mass on Gamma_-
    if (kernel.has_remainder())
    {
        double c = kernel.remainder(x_plus, theta);
        double ms = dom.min_semi_axis();
        double psi_u = 2 * std::asin(std::min(1.0, eps / (2 * ms)));
        Vec<D> u0 = dom.to_unit(x_minus.position);
        u0 = (1 / norm(u0)) * u0;
        double mass = detail::cap_integrate<D>(u0, psi_u, [&](Vec<D> const& u) {
            auto bp = dom.boundary_point(dom.from_unit(u));
            double wx = m.radial(norm(x_minus.position - bp.position) / eps);
            if (wx == 0)
                return 0.0;
            double dirs = detail::cap_integrate<D>(
                theta.vec(), psi_max, [&](Vec<D> const& t) {
                    if (dot(bp.normal, t) >= 0)
                        return 0.0;
                    return m.radial(norm(theta.vec() - t) / eps);
                });
            return wx * dom.surface_jacobian(u) * dirs;
        });
        result += c * mass / detail::sphere_area<D>();
    }
    return result;
}

//---------------------------------------------------------------------------//
/*!
 * I_{eps,delta}(x, theta', theta): the albedo kernel at (x_theta^+, theta)
 * integrated over x' on the boundary against
 * (1/eps) varphi(y.theta'_perp / (eps theta.theta'_perp))
 *   phi((y - pi y)/delta),  y = x' - x_{theta'}^-.
 *
 * Three dimensions only.
 */
template<int D>
double i_eps_delta_mollified(AlbedoKernel<D> const& kernel, Vec<D> const& x,
                             Direction<D> const& theta_prime,
                             Direction<D> const& theta, double eps,
                             double delta, Mollifier1D const& m1 = {},
                             MollifierND const& mn = {}, bool flip_frame = false)
{
    static_assert(D == 3, "mollified single-scattering extraction is 3D only");
    detail::check_width(eps, kernel.resolution(), "eps");
    detail::check_width(delta, kernel.resolution(), "delta");
    DirectionPairFrame<D> frame(theta, theta_prime, flip_frame);
    auto const& dom = kernel.pair().domain();
    auto const& perp = frame.theta_prime_perp();
    double cperp = dot(theta, perp);

    double tau_plus = dom.exit_time(x, theta);
    double tau_total = tau_plus + dom.exit_time(x, -theta);
    auto x_plus = dom.boundary_point(x + tau_plus * theta);
    Vec<D> x_minus_p = x - dom.exit_time(x, -theta_prime) * theta_prime;

    // Single scattering: vertex position s along the backward ray
    static GaussLegendre const gs(32);
    double lo = std::max(0.0, tau_plus - eps);
    double hi = std::min(tau_total, tau_plus + eps);
    double single = 0;
    if (hi > lo)
    {
        single = gs.integrate(
            [&](double s) {
                double depth = attenuation_integral(kernel.pair(),
                                                    x_plus.position, theta,
                                                    0.0, s, kernel.ray_step());
                Vec<D> entry;
                double dens = kernel.single_density(x_plus.position, theta, s,
                                                    theta_prime, depth, &entry);
                if (dens == 0)
                    return 0.0;
                Vec<D> y = entry - x_minus_p;
                double arg = dot(y, perp) / (eps * cperp);
                return dens * m1(arg) / eps * mn(Vec<D>(y - frame.project(y)) / delta);
            },
            lo, hi);
    }

    double multiple = 0;
    if (kernel.has_remainder())
    {
        double c = kernel.remainder(x_plus, theta);
        Vec<D> e3 = frame.plane_normal();
        Vec<D> e1 = (1 / norm(perp)) * perp;
        double w1max = eps * std::abs(cperp);
        static GaussLegendre const gw(16);
        multiple = gw.integrate(
            [&](double w1) {
                return gw.integrate(
                    [&](double w2) {
                        Vec<D> w = w1 * e1 + w2 * e3;
                        BoundaryPoint<D> bp;
                        if (!dom.line_entry(x_minus_p + w, theta_prime, &bp))
                            throw ConfigError("mollifier support leaves the "
                                              "boundary chart");
                        double cn = std::abs(dot(bp.normal, theta_prime));
                        Vec<D> y = bp.position - x_minus_p;
                        double arg = dot(y, perp) / (eps * cperp);
                        return m1(arg) / eps
                               * mn(Vec<D>(y - frame.project(y)) / delta) / cn;
                    },
                    -delta, delta);
            },
            -w1max, w1max);
        multiple *= c;
    }
    return single + multiple;
}

//---------------------------------------------------------------------------//
//! One rung of a mollifier ladder
struct LadderRow
{
    double eps{0};
    double delta{0};
    double value{0};
    double reference{0};
    double abs_error{0};
};

template<int D>
std::vector<LadderRow> j_eps_ladder(AlbedoKernel<D> const& kernel,
                                    Vec<D> const& x, Direction<D> const& theta,
                                    std::vector<double> const& eps_list)
{
    double ref = j0_exact(kernel.pair(), x, theta, kernel.ray_step());
    std::vector<LadderRow> rows;
    for (double e : eps_list)
    {
        double v = j_eps_mollified(kernel, x, theta, e);
        rows.push_back({e, 0.0, v, ref, std::abs(v - ref)});
    }
    return rows;
}

template<int D>
std::vector<LadderRow>
i_eps_delta_ladder(AlbedoKernel<D> const& kernel, Vec<D> const& x,
                   Direction<D> const& theta_prime, Direction<D> const& theta,
                   std::vector<double> const& eps_list,
                   std::vector<double> const& delta_list)
{
    if (eps_list.size() != delta_list.size())
        throw ConfigError("eps and delta ladders differ in length");
    double ref = i00_exact(kernel.pair(), x, theta_prime, theta,
                           kernel.ray_step());
    std::vector<LadderRow> rows;
    for (std::size_t i = 0; i < eps_list.size(); ++i)
    {
        double v = i_eps_delta_mollified(kernel, x, theta_prime, theta,
                                         eps_list[i], delta_list[i]);
        rows.push_back({eps_list[i], delta_list[i], v, ref, std::abs(v - ref)});
    }
    return rows;
}

//---------------------------------------------------------------------------//
}  // namespace rte
