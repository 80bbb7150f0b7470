//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/geometry/domain.hpp
//! \brief Convex domains (balls, axis-aligned ellipsoids) and ray queries
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "../core/errors.hpp"
#include "../core/vector.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
//! Points closer than this to the boundary count as boundary points
inline constexpr double boundary_tolerance = 1e-9;

//! Rays with |n.theta| below this are grazing and skipped in boundary sums
inline constexpr double grazing_tolerance = 1e-8;

//---------------------------------------------------------------------------//
//! A point on the boundary with its outward unit normal
template<int D>
struct BoundaryPoint
{
    Vec<D> position;
    Direction<D> normal;
};

//! Backward and forward travel times through an interior point
struct Chord
{
    double backward{0};  //!< tau_-
    double forward{0};  //!< tau_+

    double length() const { return backward + forward; }
};

//---------------------------------------------------------------------------//
/*!
 * Strictly convex domain: a ball or an axis-aligned ellipsoid.
 *
 * All ray queries reduce to the unit sphere through the affine map
 * \f$ y = (x - c) / s \f$, so exit times are roots of a quadratic.
 */
template<int D>
class ConvexDomain
{
  public:
    enum class Shape
    {
        ball,
        ellipsoid
    };

    //! Ball of the given radius
    static ConvexDomain ball(Vec<D> center, double radius)
    {
        Vec<D> axes;
        for (int i = 0; i < D; ++i)
            axes[i] = radius;
        return ConvexDomain(Shape::ball, center, axes);
    }

    static ConvexDomain unit_ball() { return ball(Vec<D>{}, 1.0); }

    //! Axis-aligned ellipsoid with the given semi-axes
    static ConvexDomain ellipsoid(Vec<D> center, Vec<D> semi_axes)
    {
        return ConvexDomain(Shape::ellipsoid, center, semi_axes);
    }

    //// ACCESSORS ////

    Shape shape() const { return shape_; }
    Vec<D> const& center() const { return center_; }
    Vec<D> const& semi_axes() const { return axes_; }
    double radius() const { return axes_[0]; }
    double diameter() const
    {
        return 2 * *std::max_element(axes_.c.begin(), axes_.c.end());
    }
    double min_semi_axis() const
    {
        return *std::min_element(axes_.c.begin(), axes_.c.end());
    }

    //// GEOMETRY ////

    //! Coordinates in the frame where the domain is the unit ball
    Vec<D> to_unit(Vec<D> const& x) const
    {
        Vec<D> y;
        for (int i = 0; i < D; ++i)
            y[i] = (x[i] - center_[i]) / axes_[i];
        return y;
    }

    Vec<D> from_unit(Vec<D> const& y) const
    {
        Vec<D> x;
        for (int i = 0; i < D; ++i)
            x[i] = center_[i] + axes_[i] * y[i];
        return x;
    }

    //! Boundary-defining function: positive inside, zero on the boundary
    double defining_function(Vec<D> const& x) const
    {
        return 1 - norm_sq(to_unit(x));
    }

    //! Gradient of the boundary-defining function
    Vec<D> defining_gradient(Vec<D> const& x) const
    {
        Vec<D> g;
        for (int i = 0; i < D; ++i)
            g[i] = -2 * (x[i] - center_[i]) / (axes_[i] * axes_[i]);
        return g;
    }

    //! Whether x lies in the closed domain (with boundary tolerance)
    bool contains(Vec<D> const& x, double tol = boundary_tolerance) const
    {
        double rho = norm(to_unit(x));
        if (rho <= 1)
            return true;
        return (rho - 1) * min_semi_axis() <= tol;
    }

    //! Whether x is an interior point at least \c margin from the boundary
    bool contains_strictly(Vec<D> const& x, double margin) const
    {
        double rho = norm(to_unit(x));
        return rho < 1 && (1 - rho) * min_semi_axis() > margin;
    }

    //! Travel time tau_+(x, theta) to the boundary
    double exit_time(Vec<D> const& x, Direction<D> const& theta) const
    {
        if (!contains(x))
            throw DomainError("exit_time: point lies outside the domain");
        Vec<D> y = to_unit(x);
        Vec<D> d;
        for (int i = 0; i < D; ++i)
            d[i] = theta[i] / axes_[i];
        double a = norm_sq(d);
        double b = dot(y, d);
        double c = std::min(norm_sq(y) - 1, 0.0);
        double disc = std::max(b * b - a * c, 0.0);
        double sq = std::sqrt(disc);
        // Avoid cancellation when the larger root is small
        double t = (b > 0) ? -c / (b + sq) : (-b + sq) / a;
        return std::max(t, 0.0);
    }

    //! Both travel times through x along theta
    Chord chord(Vec<D> const& x, Direction<D> const& theta) const
    {
        return {exit_time(x, -theta), exit_time(x, theta)};
    }

    //! Boundary point with outward normal at a position on the boundary
    BoundaryPoint<D> boundary_point(Vec<D> const& p) const
    {
        Vec<D> g;
        for (int i = 0; i < D; ++i)
            g[i] = (p[i] - center_[i]) / (axes_[i] * axes_[i]);
        return {p, Direction<D>(g)};
    }

    //! Outward unit normal at a boundary position
    Direction<D> normal(Vec<D> const& p) const
    {
        return boundary_point(p).normal;
    }

    //! Exit point x_theta^+ = x + tau_+ theta
    BoundaryPoint<D> exit_point(Vec<D> const& x, Direction<D> const& theta) const
    {
        return boundary_point(x + exit_time(x, theta) * theta);
    }

    //! Entry point x_theta^- = x - tau_- theta
    BoundaryPoint<D>
    entry_point(Vec<D> const& x, Direction<D> const& theta) const
    {
        return boundary_point(x - exit_time(x, -theta) * theta);
    }

    /*!
     * Surface-element ratio for the parametrization p = c + S u, u on the
     * unit sphere: dmu(p) = ratio * d(area of unit sphere).
     */
    double surface_jacobian(Vec<D> const& u) const
    {
        double det = 1;
        Vec<D> w;
        for (int i = 0; i < D; ++i)
        {
            det *= axes_[i];
            w[i] = u[i] / axes_[i];
        }
        return det * norm(w);
    }

    /*!
     * Entry point of the line through \c p parallel to \c theta.
     *
     * Unlike entry_point, \c p may lie outside the domain. Returns false if
     * the line misses the domain.
     */
    bool line_entry(Vec<D> const& p, Direction<D> const& theta,
                    BoundaryPoint<D>* result) const
    {
        Vec<D> y = to_unit(p);
        Vec<D> d;
        for (int i = 0; i < D; ++i)
            d[i] = theta[i] / axes_[i];
        double a = norm_sq(d);
        double b = dot(y, d);
        double c = norm_sq(y) - 1;
        double disc = b * b - a * c;
        if (disc <= 0)
            return false;
        double t = (-b - std::sqrt(disc)) / a;
        *result = boundary_point(p + t * theta);
        return true;
    }

  private:
    Shape shape_;
    Vec<D> center_;
    Vec<D> axes_;

    ConvexDomain(Shape s, Vec<D> center, Vec<D> axes)
        : shape_(s), center_(center), axes_(axes)
    {
        for (int i = 0; i < D; ++i)
        {
            if (!(axes[i] > 0) || !std::isfinite(axes[i]))
                throw ConfigError("domain radius and semi-axes must be "
                                  "strictly positive");
        }
    }
};

//---------------------------------------------------------------------------//
//! Weight |n(x).theta| of the boundary measure d xi
template<int D>
double boundary_weight(BoundaryPoint<D> const& bp, Direction<D> const& theta)
{
    return std::abs(dot(bp.normal, theta));
}

//---------------------------------------------------------------------------//
}  // namespace rte
