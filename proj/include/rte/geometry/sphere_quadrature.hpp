//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/geometry/sphere_quadrature.hpp
//! \brief Equal-weight quadrature for the normalized measure on S^{D-1}
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "../core/errors.hpp"
#include "../core/vector.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * Nodes and weights for integrals against the normalized sphere measure.
 *
 * In 2D the nodes are equally spaced angles; in 3D a Fibonacci spiral on the
 * upper hemisphere mirrored through the origin. When the 3D order is a
 * multiple of 8 the spiral has order/8 points and is replicated under
 * quarter turns about the z axis. Both node sets are
 * antipodally symmetric for even orders, so every node's negation is also a
 * node (see \c antipode).
 */
template<int D>
class SphereQuadrature
{
  public:
    SphereQuadrature() = default;
    SphereQuadrature(std::vector<Direction<D>> nodes,
                     std::vector<double> weights, std::vector<int> antipodes)
        : nodes_(std::move(nodes))
        , weights_(std::move(weights))
        , antipodes_(std::move(antipodes))
    {
    }

    std::size_t size() const { return nodes_.size(); }
    Direction<D> const& node(std::size_t j) const { return nodes_[j]; }
    double weight(std::size_t j) const { return weights_[j]; }
    std::vector<Direction<D>> const& nodes() const { return nodes_; }
    std::vector<double> const& weights() const { return weights_; }

    //! Index of the node equal to -node(j), or -1
    int antipode(std::size_t j) const { return antipodes_[j]; }

    //! Index of the node closest to theta
    std::size_t nearest(Direction<D> const& theta) const
    {
        std::size_t best = 0;
        double best_dot = -2;
        for (std::size_t j = 0; j < nodes_.size(); ++j)
        {
            double d = dot(nodes_[j], theta);
            if (d > best_dot)
            {
                best_dot = d;
                best = j;
            }
        }
        return best;
    }

    //! Quadrature of f(theta) d theta
    template<class F>
    double integrate(F&& f) const
    {
        double sum = 0;
        for (std::size_t j = 0; j < nodes_.size(); ++j)
            sum += weights_[j] * f(nodes_[j]);
        return sum;
    }

  private:
    std::vector<Direction<D>> nodes_;
    std::vector<double> weights_;
    std::vector<int> antipodes_;
};

//---------------------------------------------------------------------------//
/*!
 * Build the equal-weight rule with \c order nodes.
 *
 * Order must be at least 4; in 3D it must also be even so the node set can
 * be mirrored.
 */
template<int D>
SphereQuadrature<D> make_sphere_quadrature(int order)
{
    if (order < 4)
        throw ConfigError("sphere quadrature order must be at least 4");
    std::vector<Direction<D>> nodes;
    std::vector<int> anti(order, -1);
    nodes.reserve(order);
    double const pi = std::numbers::pi;

    if constexpr (D == 2)
    {
        for (int j = 0; j < order; ++j)
        {
            double t = 2 * pi * j / order;
            nodes.emplace_back(Vec<2>{{std::cos(t), std::sin(t)}});
        }
        if (order % 2 == 0)
        {
            for (int j = 0; j < order; ++j)
                anti[j] = (j + order / 2) % order;
        }
    }
    else
    {
        if (order % 2 != 0)
            throw ConfigError("3D sphere quadrature order must be even");
        int half = order / 2;
        double const golden = pi * (3 - std::sqrt(5.0));
        std::vector<Vec<3>> upper;
        if (order % 8 == 0)
        {
            // Spiral on the upper hemisphere, replicated under quarter turns
            // about z: quadratic moments in x and y become exact
            int m = order / 8;
            for (int k = 0; k < 4; ++k)
            {
                for (int i = 0; i < m; ++i)
                {
                    double z = 1 - (2.0 * i + 1) / (2 * m);
                    double r = std::sqrt(std::max(0.0, 1 - z * z));
                    double phi = golden * i + k * pi / 2;
                    upper.push_back({{r * std::cos(phi), r * std::sin(phi), z}});
                }
            }
        }
        else
        {
            for (int i = 0; i < half; ++i)
            {
                double z = 1 - (2.0 * i + 1) / order;
                double r = std::sqrt(std::max(0.0, 1 - z * z));
                double phi = golden * i;
                upper.push_back({{r * std::cos(phi), r * std::sin(phi), z}});
            }
        }
        for (auto const& v : upper)
            nodes.emplace_back(v);
        for (auto const& v : upper)
            nodes.emplace_back(-v);
        for (int i = 0; i < half; ++i)
        {
            anti[i] = i + half;
            anti[i + half] = i;
        }
    }
    std::vector<double> weights(order, 1.0 / order);
    return SphereQuadrature<D>(std::move(nodes), std::move(weights),
                               std::move(anti));
}

//---------------------------------------------------------------------------//
}  // namespace rte
