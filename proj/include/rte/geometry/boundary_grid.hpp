//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/geometry/boundary_grid.hpp
//! \brief Boundary point sets carrying surface-measure weights
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "domain.hpp"
#include "sphere_quadrature.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
//! Boundary node with its share of the surface measure d mu
template<int D>
struct BoundaryNode
{
    BoundaryPoint<D> point;
    double area{0};
};

//---------------------------------------------------------------------------//
/*!
 * Quadrature nodes for the boundary measure d mu.
 *
 * Nodes are the images of equally spaced circle angles (2D) or a Fibonacci
 * sphere (3D) under the domain's affine map, weighted by the surface
 * Jacobian.
 */
template<int D>
std::vector<BoundaryNode<D>>
make_boundary_nodes(ConvexDomain<D> const& domain, int count)
{
    if (count < 4)
        throw ConfigError("boundary grid needs at least 4 points");
    double const pi = std::numbers::pi;
    std::vector<BoundaryNode<D>> result;
    result.reserve(count);
    for (int i = 0; i < count; ++i)
    {
        Vec<D> u;
        double unit_area;
        if constexpr (D == 2)
        {
            double t = 2 * pi * (i + 0.5) / count;
            u = {{std::cos(t), std::sin(t)}};
            unit_area = 2 * pi / count;
        }
        else
        {
            double z = 1 - (2.0 * i + 1) / count;
            double r = std::sqrt(std::max(0.0, 1 - z * z));
            double phi = pi * (3 - std::sqrt(5.0)) * i;
            u = {{r * std::cos(phi), r * std::sin(phi), z}};
            unit_area = 4 * pi / count;
        }
        BoundaryNode<D> node{domain.boundary_point(domain.from_unit(u)),
                             unit_area * domain.surface_jacobian(u)};
        result.push_back(node);
    }
    return result;
}

//---------------------------------------------------------------------------//
//! Outgoing (or incoming) boundary phase-space pair with its d xi weight
template<int D>
struct BoundaryPair
{
    BoundaryPoint<D> point;
    std::size_t direction{0};  //!< index into the sphere quadrature
    double weight{0};  //!< |n.theta| dmu dtheta
};

/*!
 * All (boundary node, quadrature direction) pairs in Gamma_+ (outgoing) or
 * Gamma_- (incoming), excluding grazing directions.
 */
template<int D>
std::vector<BoundaryPair<D>>
make_boundary_pairs(std::vector<BoundaryNode<D>> const& nodes,
                    SphereQuadrature<D> const& quad, bool outgoing)
{
    std::vector<BoundaryPair<D>> pairs;
    for (auto const& bn : nodes)
    {
        for (std::size_t j = 0; j < quad.size(); ++j)
        {
            double c = dot(bn.point.normal, quad.node(j));
            if (outgoing ? c > grazing_tolerance : c < -grazing_tolerance)
                pairs.push_back({bn.point, j, std::abs(c) * bn.area * quad.weight(j)});
        }
    }
    return pairs;
}

//---------------------------------------------------------------------------//
}  // namespace rte
