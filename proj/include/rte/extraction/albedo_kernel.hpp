//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/extraction/albedo_kernel.hpp
//! \brief Evaluator for the three parts of the albedo kernel
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "../transport/albedo.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * Albedo kernel alpha(x+, theta, x', theta') in evaluable form.
 *
 * The ballistic and single-scattering parts are singular and are described
 * by their geometric supports: the ballistic weight lives at
 * (x', theta') = (x_theta^-, theta), and the single-scattering density lives
 * on broken rays with a vertex on the backward ray from x+.
 *
 * The multiple-scattering part is smooth. It is represented by its average
 * over Gamma_-: the remainder exit flux of a uniform-illumination forward
 * solve divided by the measure of Gamma_- (|boundary|/2). The average is
 * sampled on the solver's exit grid and looked up at the nearest node.
 */
template<int D>
class AlbedoKernel
{
  public:
    //! Kernel without a multiple-scattering part
    AlbedoKernel(MediumPair<D> pair, double ray_step)
        : pair_(std::move(pair)), ray_step_(ray_step)
    {
        if (!(ray_step > 0))
            throw ConfigError("ray step must be positive");
    }

    //! Kernel whose multiple-scattering part comes from a forward solve
    static AlbedoKernel from_forward_solve(MediumPair<D> pair,
                                           SolverConfig const& config,
                                           double ray_step)
    {
        AlbedoKernel k(pair, ray_step);
        TransportSolver<D> solver(pair, config);
        auto f = IncomingFlux<D>::uniform(1.0);
        auto sol = solver.solve(f);
        int nb = config.boundary_points > 0
                     ? config.boundary_points
                     : default_boundary_points(pair.domain(),
                                               config.spatial_step);
        auto nodes = make_boundary_nodes(pair.domain(), nb);
        auto dec = evaluate_exit(
            solver, sol, f,
            make_boundary_pairs(nodes, solver.quadrature(), true));
        double measure = 0;
        for (auto const& n : nodes)
            measure += n.area;
        measure *= 0.5;
        k.quad_ = solver.quadrature();
        k.nodes_ = nodes;
        k.remainder_.assign(nodes.size() * k.quad_.size(), 0.0);
        std::size_t p = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
        {
            for (std::size_t j = 0; j < k.quad_.size(); ++j)
            {
                if (p < dec.pairs.size()
                    && dec.pairs[p].point.position == nodes[i].point.position
                    && dec.pairs[p].direction == j)
                {
                    k.remainder_[i * k.quad_.size() + j]
                        = dec.remainder[p] / measure;
                    ++p;
                }
            }
        }
        k.has_remainder_ = true;
        return k;
    }

    MediumPair<D> const& pair() const { return pair_; }
    double ray_step() const { return ray_step_; }
    bool has_remainder() const { return has_remainder_; }

    //! Drop the multiple-scattering part
    AlbedoKernel without_remainder() const
    {
        AlbedoKernel k = *this;
        k.has_remainder_ = false;
        return k;
    }

    //! Smallest mollifier width this evaluator resolves
    double resolution() const { return 4 * ray_step_; }

    //! Weight of the ballistic delta at an exit pair
    double ballistic(BoundaryPoint<D> const& x_plus,
                     Direction<D> const& theta) const
    {
        double len = pair_.domain().exit_time(x_plus.position, -theta);
        return std::exp(-attenuation_integral(pair_, x_plus.position, theta,
                                              0.0, len, ray_step_));
    }

    /*!
     * Single-scattering density at distance s behind x_plus with incoming
     * direction theta'. Also returns the incoming boundary point.
     */
    double single_density(Vec<D> const& x_plus, Direction<D> const& theta,
                          double s, Direction<D> const& theta_prime,
                          double out_depth, Vec<D>* entry) const
    {
        auto const& dom = pair_.domain();
        Vec<D> y = x_plus - s * theta;
        if (!dom.contains(y))
            return 0;
        double t = dom.exit_time(y, -theta_prime);
        if (entry)
            *entry = y - t * theta_prime;
        double in = attenuation_integral(pair_, y, theta_prime, 0.0, t,
                                         ray_step_);
        return std::exp(-out_depth - in)
               * pair_.scattering()(y, theta_prime.vec(), theta.vec());
    }

    //! Smooth multiple-scattering part, averaged over incoming pairs
    double remainder(BoundaryPoint<D> const& x_plus,
                     Direction<D> const& theta) const
    {
        if (!has_remainder_)
            return 0;
        std::size_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < nodes_.size(); ++i)
        {
            double d = norm_sq(nodes_[i].point.position - x_plus.position);
            if (d < bd)
            {
                bd = d;
                best = i;
            }
        }
        return remainder_[best * quad_.size() + quad_.nearest(theta)];
    }

  private:
    MediumPair<D> pair_;
    double ray_step_;
    bool has_remainder_{false};
    SphereQuadrature<D> quad_;
    std::vector<BoundaryNode<D>> nodes_;
    std::vector<double> remainder_;
};

//---------------------------------------------------------------------------//
}  // namespace rte
