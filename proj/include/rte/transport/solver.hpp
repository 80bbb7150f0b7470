//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/transport/solver.hpp
//! \brief Forward solver: ballistic sweep, scattering, source iteration
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "../core/parallel.hpp"
#include "../geometry/sphere_quadrature.hpp"
#include "attenuation.hpp"
#include "boundary_flux.hpp"
#include "phase_space.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
struct SolverConfig
{
    double spatial_step{0.05};
    int angular_order{32};
    double ray_step{0};  //!< <= 0 selects half the spatial step
    double tol{1e-8};
    int max_iter{500};
    int threads{1};
    int boundary_points{0};  //!< exit grid size; <= 0 selects automatically
    double divergence_limit{1e12};

    double effective_ray_step() const
    {
        return ray_step > 0 ? ray_step : spatial_step / 2;
    }

    void validate() const
    {
        if (!(spatial_step > 0))
            throw ConfigError("spatial_step must be positive");
        if (angular_order < 4)
            throw ConfigError("angular_order must be at least 4");
        if (!(tol > 0))
            throw ConfigError("tol must be positive");
        if (max_iter < 1)
            throw ConfigError("max_iter must be at least 1");
        if (threads < 1)
            throw ConfigError("threads must be at least 1");
    }
};

//---------------------------------------------------------------------------//
/*!
 * Result of a forward solve.
 *
 * The solution is the Neumann series u = sum_m o_m of collision orders with
 * o_0 the ballistic field and o_m = T^{-1} S o_{m-1}. The sources S[o_0] and
 * S[u - o_0] are kept (ghost-filled) for evaluating exit fluxes.
 */
template<int D>
struct ForwardSolution
{
    PhaseSpaceField<D> total;
    PhaseSpaceField<D> order0;
    PhaseSpaceField<D> order1;
    PhaseSpaceField<D> source_single;
    PhaseSpaceField<D> source_multiple;
    int iterations{0};
    std::vector<double> residual_history;
};

//---------------------------------------------------------------------------//
/*!
 * Discretized transport operator for one medium.
 *
 * Owns the spatial grid, the sphere quadrature, and the factorized
 * scattering kernel k = g(x) P(theta',theta) exp(psi(x,theta)-psi(x,theta')).
 */
template<int D>
class TransportSolver
{
  public:
    TransportSolver(MediumPair<D> pair, SolverConfig config)
        : pair_(std::move(pair)), config_(config)
    {
        config_.validate();
        grid_ = std::make_shared<PhaseSpaceGrid<D>>(pair_.domain(),
                                                    config_.spatial_step);
        quad_ = std::make_shared<SphereQuadrature<D>>(
            make_sphere_quadrature<D>(config_.angular_order));
        build_scattering();
    }

    MediumPair<D> const& pair() const { return pair_; }
    SolverConfig const& config() const { return config_; }
    PhaseSpaceGrid<D> const& grid() const { return *grid_; }
    SphereQuadrature<D> const& quadrature() const { return *quad_; }

    PhaseSpaceField<D> make_field() const { return {grid_, quad_}; }

    //! Uncollided field exp(-int a) f_- at every node
    PhaseSpaceField<D> ballistic(IncomingFlux<D> const& f) const
    {
        auto out = make_field();
        auto const& dom = pair_.domain();
        parallel_for(quad_->size(), config_.threads, [&](std::size_t j) {
            BackwardRay<D> ray;
            auto const& theta = quad_->node(j);
            auto slab = out.slab(j);
            for (auto b : grid_->inside())
            {
                Vec<D> x = grid_->position(b);
                double len = dom.exit_time(x, -theta);
                ray.trace(pair_.absorption(), x, theta, len,
                          config_.effective_ray_step());
                auto entry = dom.boundary_point(x - len * theta);
                slab[b] = std::exp(-ray.total_depth()) * f(entry, theta.vec());
            }
        });
        return out;
    }

    //! S[u](x,theta) = int k(x,theta',theta) u(x,theta') dtheta', ghost-filled
    PhaseSpaceField<D> scatter(PhaseSpaceField<D> const& u) const
    {
        auto out = make_field();
        std::size_t nd = quad_->size();
        auto const& inside = grid_->inside();
        if (!zero_kernel_)
        {
            parallel_for(inside.size(), config_.threads, [&](std::size_t i) {
                std::size_t b = inside[i];
                double gx = gval_[i];
                if (gx == 0)
                    return;
                std::vector<double> weighted(nd);
                for (std::size_t l = 0; l < nd; ++l)
                    weighted[l] = quad_->weight(l) * u.at(b, l) * inv_phi(i, l);
                for (std::size_t j = 0; j < nd; ++j)
                {
                    double const* row = angular_.data() + j * nd;
                    double s = 0;
                    for (std::size_t l = 0; l < nd; ++l)
                        s += row[l] * weighted[l];
                    out.at(b, j) = gx * phi(i, j) * s;
                }
            });
        }
        out.fill_ghosts();
        return out;
    }

    //! T^{-1} q with zero incoming data: int_0^{tau_-} e^{-int a} q ds
    PhaseSpaceField<D> sweep(PhaseSpaceField<D> const& q) const
    {
        auto out = make_field();
        if (zero_kernel_)
            return out;
        auto const& dom = pair_.domain();
        parallel_for(quad_->size(), config_.threads, [&](std::size_t j) {
            BackwardRay<D> ray;
            auto const& theta = quad_->node(j);
            auto src = q.slab(j);
            auto slab = out.slab(j);
            for (auto b : grid_->inside())
            {
                Vec<D> x = grid_->position(b);
                ray.trace(pair_.absorption(), x, theta,
                          dom.exit_time(x, -theta),
                          config_.effective_ray_step());
                slab[b] = integrate(ray, src);
            }
        });
        return out;
    }

    //! Neumann-series source iteration
    ForwardSolution<D> solve(IncomingFlux<D> const& f) const
    {
        ForwardSolution<D> sol;
        sol.order0 = ballistic(f);
        sol.total = sol.order0;
        double base = sol.order0.l1_norm();
        PhaseSpaceField<D> prev = sol.order0;
        for (int m = 1; m <= config_.max_iter; ++m)
        {
            auto q = scatter(prev);
            if (m == 1)
                sol.source_single = q;
            auto next = sweep(q);
            if (m == 1)
                sol.order1 = next;
            sol.total += next;
            double nn = next.l1_norm();
            double nu = sol.total.l1_norm();
            double res = nu > 0 ? nn / nu : 0.0;
            sol.residual_history.push_back(res);
            sol.iterations = m;
            if (!std::isfinite(nn) || nn > config_.divergence_limit * std::max(base, 1e-300))
                throw ConvergenceError("source iteration diverged",
                                       sol.residual_history);
            if (res < config_.tol)
            {
                finish(sol);
                return sol;
            }
            prev = std::move(next);
        }
        throw ConvergenceError("source iteration did not converge within "
                                   + std::to_string(config_.max_iter)
                                   + " iterations",
                               sol.residual_history);
    }

    //! Exit integrals of up to three ghost-filled sources along a ray
    template<std::size_t N>
    std::array<double, N>
    exit_integrals(BackwardRay<D> const& ray, std::size_t j,
                   std::array<PhaseSpaceField<D> const*, N> const& sources) const
    {
        std::array<double, N> r{};
        for (std::size_t n = 0; n < N; ++n)
            r[n] = integrate(ray, sources[n]->slab(j));
        return r;
    }

  private:
    MediumPair<D> pair_;
    SolverConfig config_;
    std::shared_ptr<PhaseSpaceGrid<D>> grid_;
    std::shared_ptr<SphereQuadrature<D>> quad_;
    bool zero_kernel_{false};
    bool gauged_{false};
    std::vector<double> angular_;  //!< [out j][in l]
    std::vector<double> gval_;  //!< g at inside nodes
    std::vector<double> phi_;  //!< exp(psi) at [inside i][dir j]

    double phi(std::size_t i, std::size_t j) const
    {
        return gauged_ ? phi_[i * quad_->size() + j] : 1.0;
    }
    double inv_phi(std::size_t i, std::size_t j) const
    {
        return gauged_ ? 1 / phi_[i * quad_->size() + j] : 1.0;
    }

    void build_scattering()
    {
        auto const& k = pair_.scattering();
        zero_kernel_ = k.is_zero();
        if (zero_kernel_)
            return;
        std::size_t nd = quad_->size();
        angular_.resize(nd * nd);
        for (std::size_t j = 0; j < nd; ++j)
            for (std::size_t l = 0; l < nd; ++l)
                angular_[j * nd + l]
                    = k.angular(quad_->node(l).vec(), quad_->node(j).vec());
        auto const& inside = grid_->inside();
        gval_.resize(inside.size());
        gauged_ = !k.gauges().empty();
        if (gauged_)
            phi_.resize(inside.size() * nd);
        for (std::size_t i = 0; i < inside.size(); ++i)
        {
            Vec<D> x = grid_->position(inside[i]);
            gval_[i] = k.spatial(x);
            if (gauged_)
                for (std::size_t j = 0; j < nd; ++j)
                    phi_[i * nd + j]
                        = std::exp(k.log_gauge(x, quad_->node(j).vec()));
        }
    }

    double integrate(BackwardRay<D> const& ray, std::span<double const> q) const
    {
        double s = 0;
        for (std::size_t k = 0; k < ray.points.size(); ++k)
            s += ray.weights[k] * std::exp(-ray.depth[k])
                 * grid_->interpolate(q, ray.points[k]);
        return s;
    }

    void finish(ForwardSolution<D>& sol) const
    {
        if (sol.iterations == 0 || sol.source_single.raw().empty())
            sol.source_single = scatter(sol.order0);
        if (sol.order1.raw().empty())
            sol.order1 = make_field();
        auto rest = sol.total;
        rest -= sol.order0;
        sol.source_multiple = scatter(rest);
    }
};

//---------------------------------------------------------------------------//
// FREE-FUNCTION INTERFACE
//---------------------------------------------------------------------------//
template<int D>
PhaseSpaceField<D> ballistic_solve(MediumPair<D> const& pair,
                                   IncomingFlux<D> const& f,
                                   SolverConfig const& config)
{
    return TransportSolver<D>(pair, config).ballistic(f);
}

//! Applies the scattering operator of \c pair to a field on any grid
template<int D>
PhaseSpaceField<D> scattering_apply(MediumPair<D> const& pair,
                                    PhaseSpaceField<D> const& u)
{
    auto const& quad = u.quadrature();
    auto const& grid = u.grid();
    PhaseSpaceField<D> out(u.grid_ptr(), u.quadrature_ptr());
    auto const& k = pair.scattering();
    for (auto b : grid.inside())
    {
        Vec<D> x = grid.position(b);
        for (std::size_t j = 0; j < quad.size(); ++j)
        {
            double s = 0;
            for (std::size_t l = 0; l < quad.size(); ++l)
                s += quad.weight(l) * k(x, quad.node(l).vec(), quad.node(j).vec())
                     * u.at(b, l);
            out.at(b, j) = s;
        }
    }
    out.fill_ghosts();
    return out;
}

template<int D>
ForwardSolution<D> source_iteration_solve(MediumPair<D> const& pair,
                                          IncomingFlux<D> const& f,
                                          SolverConfig const& config)
{
    return TransportSolver<D>(pair, config).solve(f);
}

//---------------------------------------------------------------------------//
}  // namespace rte
