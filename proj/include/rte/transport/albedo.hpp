//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/transport/albedo.hpp
//! \brief Albedo operator and its ballistic/single/multiple decomposition
//---------------------------------------------------------------------------//
#pragma once

#include <numbers>

#include "solver.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
//! Default number of boundary nodes for exit data
template<int D>
int default_boundary_points(ConvexDomain<D> const& domain, double step)
{
    double r = domain.diameter() / 2;
    double n = (D == 2) ? 2 * std::numbers::pi * r / step
                        : std::numbers::pi * r * r / (step * step);
    return std::max(16, static_cast<int>(std::ceil(n)));
}

//---------------------------------------------------------------------------//
/*!
 * Outgoing data split as A f = A_1 f + A_2 f + A_3 f on exit pairs.
 *
 * ballistic is the uncollided part, single the once-scattered part, and
 * remainder everything scattered at least twice.
 */
template<int D>
struct AlbedoDecomposition
{
    std::vector<BoundaryPair<D>> pairs;
    std::vector<Vec<D>> entry_positions;  //!< straight-line entry of each ray
    std::vector<double> ballistic;
    std::vector<double> single;
    std::vector<double> remainder;
    std::vector<double> total;
    int iterations{0};
    std::vector<double> residual_history;

    SampledBoundaryFlux<D> component(std::vector<double> const& v) const
    {
        return {pairs, v};
    }
    SampledBoundaryFlux<D> total_flux() const { return component(total); }
};

//---------------------------------------------------------------------------//
/*!
 * Evaluate exit data of a converged solution on the given outgoing pairs.
 */
template<int D>
AlbedoDecomposition<D>
evaluate_exit(TransportSolver<D> const& solver, ForwardSolution<D> const& sol,
              IncomingFlux<D> const& f, std::vector<BoundaryPair<D>> pairs)
{
    AlbedoDecomposition<D> r;
    std::size_t n = pairs.size();
    r.entry_positions.resize(n);
    r.ballistic.resize(n);
    r.single.resize(n);
    r.remainder.resize(n);
    r.total.resize(n);
    auto const& dom = solver.pair().domain();
    auto const& quad = solver.quadrature();
    double step = solver.config().effective_ray_step();
    std::array<PhaseSpaceField<D> const*, 2> sources{&sol.source_single,
                                                     &sol.source_multiple};
    parallel_for(n, solver.config().threads, [&](std::size_t i) {
        BackwardRay<D> ray;
        auto const& theta = quad.node(pairs[i].direction);
        Vec<D> x = pairs[i].point.position;
        double len = dom.exit_time(x, -theta);
        ray.trace(solver.pair().absorption(), x, theta, len, step);
        auto entry = dom.boundary_point(x - len * theta);
        r.entry_positions[i] = entry.position;
        r.ballistic[i] = std::exp(-ray.total_depth()) * f(entry, theta.vec());
        auto s = solver.exit_integrals(ray, pairs[i].direction, sources);
        r.single[i] = s[0];
        r.remainder[i] = s[1];
        r.total[i] = r.ballistic[i] + s[0] + s[1];
    });
    r.pairs = std::move(pairs);
    r.iterations = sol.iterations;
    r.residual_history = sol.residual_history;
    return r;
}

//! Outgoing pairs for a solver's quadrature on its default exit grid
template<int D>
std::vector<BoundaryPair<D>> exit_pairs(TransportSolver<D> const& solver)
{
    auto const& cfg = solver.config();
    int nb = cfg.boundary_points > 0
                 ? cfg.boundary_points
                 : default_boundary_points(solver.pair().domain(),
                                           cfg.spatial_step);
    return make_boundary_pairs(make_boundary_nodes(solver.pair().domain(), nb),
                               solver.quadrature(), true);
}

template<int D>
AlbedoDecomposition<D> decompose_albedo(MediumPair<D> const& pair,
                                        IncomingFlux<D> const& f,
                                        SolverConfig const& config)
{
    TransportSolver<D> solver(pair, config);
    auto sol = solver.solve(f);
    return evaluate_exit(solver, sol, f, exit_pairs(solver));
}

//! A f sampled on Gamma_+
template<int D>
SampledBoundaryFlux<D> albedo_apply(MediumPair<D> const& pair,
                                    IncomingFlux<D> const& f,
                                    SolverConfig const& config)
{
    return decompose_albedo(pair, f, config).total_flux();
}

//---------------------------------------------------------------------------//
/*!
 * Vertex of a single-scattering path.
 *
 * The backward line from x_plus along -theta and the forward line from
 * x_prime along theta' meet at the vertex. \c s is the distance from x_plus
 * and \c t the distance from x_prime.
 */
template<int D>
struct ScatterVertex
{
    bool valid{false};
    Vec<D> position{};
    double s{0};
    double t{0};
};

template<int D>
ScatterVertex<D> scatter_vertex(ConvexDomain<D> const& dom,
                                BoundaryPoint<D> const& x_plus,
                                Direction<D> const& theta,
                                BoundaryPoint<D> const& x_prime,
                                Direction<D> const& theta_prime)
{
    double c = dot(theta, theta_prime);
    if (1 - std::abs(c) < 1e-9)
        throw ExcludedConfigurationError(
            "single scattering undefined for parallel directions");
    ScatterVertex<D> v;
    if (dot(x_plus.normal, theta) <= 0 || dot(x_prime.normal, theta_prime) >= 0)
        return v;
    Vec<D> w = x_plus.position - x_prime.position;
    double tw = dot(theta, w);
    double pw = dot(theta_prime, w);
    double det = 1 - c * c;
    double s = (tw - c * pw) / det;
    double t = (pw - c * tw) / det;
    Vec<D> p = x_plus.position - s * theta;
    Vec<D> q = x_prime.position + t * theta_prime;
    double tol = 1e-7 * std::max(1.0, dom.diameter());
    if (norm(p - q) > tol || s < -tol || t < -tol || !dom.contains(p))
        return v;
    v.valid = true;
    v.position = p;
    v.s = std::max(s, 0.0);
    v.t = std::max(t, 0.0);
    return v;
}

/*!
 * Single-scattering density: attenuation from x_prime to the vertex along
 * theta', the kernel k(y, theta', theta) at the vertex, and attenuation from
 * the vertex to x_plus along theta. Zero when the lines do not meet inside
 * the domain.
 */
template<int D>
double alpha2_eval(MediumPair<D> const& pair, BoundaryPoint<D> const& x_plus,
                   Direction<D> const& theta, BoundaryPoint<D> const& x_prime,
                   Direction<D> const& theta_prime, double step)
{
    auto const& dom = pair.domain();
    auto v = scatter_vertex(dom, x_plus, theta, x_prime, theta_prime);
    if (!v.valid)
        return 0;
    double out = attenuation_integral(pair, x_plus.position, theta, 0.0, v.s,
                                      step);
    double in = attenuation_integral(pair, v.position, theta_prime, 0.0, v.t,
                                     step);
    return std::exp(-out - in)
           * pair.scattering()(v.position, theta_prime.vec(), theta.vec());
}

//---------------------------------------------------------------------------//
}  // namespace rte
