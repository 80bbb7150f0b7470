//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/core/vector.hpp
//! \brief Fixed-dimension points, vectors, and unit directions
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>

#include "errors.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * Small Euclidean vector in D dimensions.
 *
 * Used both for points in the domain and for free vectors. Arithmetic is
 * component-wise; there is no distinction between the two at the type level.
 */
template<int D>
struct Vec
{
    static_assert(D == 2 || D == 3, "only 2D and 3D are supported");
    static constexpr int dim = D;

    std::array<double, D> c{};

    constexpr double& operator[](std::size_t i) { return c[i]; }
    constexpr double operator[](std::size_t i) const { return c[i]; }

    static constexpr Vec zero() { return Vec{}; }

    //! Unit basis vector along axis i
    static constexpr Vec axis(int i)
    {
        Vec v{};
        v.c[i] = 1.0;
        return v;
    }

    constexpr Vec& operator+=(Vec const& o)
    {
        for (int i = 0; i < D; ++i)
            c[i] += o.c[i];
        return *this;
    }
    constexpr Vec& operator-=(Vec const& o)
    {
        for (int i = 0; i < D; ++i)
            c[i] -= o.c[i];
        return *this;
    }
    constexpr Vec& operator*=(double s)
    {
        for (auto& x : c)
            x *= s;
        return *this;
    }

    friend constexpr bool operator==(Vec const&, Vec const&) = default;
};

template<int D>
constexpr Vec<D> operator+(Vec<D> a, Vec<D> const& b)
{
    return a += b;
}
template<int D>
constexpr Vec<D> operator-(Vec<D> a, Vec<D> const& b)
{
    return a -= b;
}
template<int D>
constexpr Vec<D> operator-(Vec<D> a)
{
    return a *= -1.0;
}
template<int D>
constexpr Vec<D> operator*(double s, Vec<D> a)
{
    return a *= s;
}
template<int D>
constexpr Vec<D> operator*(Vec<D> a, double s)
{
    return a *= s;
}
template<int D>
constexpr Vec<D> operator/(Vec<D> a, double s)
{
    return a *= (1.0 / s);
}

template<int D>
constexpr double dot(Vec<D> const& a, Vec<D> const& b)
{
    double r = 0;
    for (int i = 0; i < D; ++i)
        r += a[i] * b[i];
    return r;
}

template<int D>
inline double norm(Vec<D> const& a)
{
    return std::sqrt(dot(a, a));
}

template<int D>
constexpr double norm_sq(Vec<D> const& a)
{
    return dot(a, a);
}

inline Vec<3> cross(Vec<3> const& a, Vec<3> const& b)
{
    return {{a[1] * b[2] - a[2] * b[1],
             a[2] * b[0] - a[0] * b[2],
             a[0] * b[1] - a[1] * b[0]}};
}

template<int D>
std::ostream& operator<<(std::ostream& os, Vec<D> const& v)
{
    os << '(';
    for (int i = 0; i < D; ++i)
        os << (i ? "," : "") << v[i];
    return os << ')';
}

//---------------------------------------------------------------------------//
/*!
 * Unit vector on the sphere S^{D-1}: a direction of travel.
 *
 * Construction normalizes the input, so the norm is one to rounding.
 */
template<int D>
class Direction
{
  public:
    Direction() : u_(Vec<D>::axis(0)) {}

    explicit Direction(Vec<D> const& v)
    {
        double n = norm(v);
        if (!(n > 0) || !std::isfinite(n))
            throw DomainError("direction must be a nonzero finite vector");
        u_ = v / n;
    }

    static Direction axis(int i) { return Direction(Vec<D>::axis(i)); }

    Vec<D> const& vec() const { return u_; }
    double operator[](std::size_t i) const { return u_[i]; }

    Direction operator-() const
    {
        Direction r;
        r.u_ = -u_;
        return r;
    }

    operator Vec<D> const&() const { return u_; }

    friend bool operator==(Direction const&, Direction const&) = default;

  private:
    Vec<D> u_;
};

template<int D>
constexpr double dot(Direction<D> const& a, Direction<D> const& b)
{
    return dot(a.vec(), b.vec());
}
template<int D>
constexpr double dot(Direction<D> const& a, Vec<D> const& b)
{
    return dot(a.vec(), b);
}
template<int D>
constexpr double dot(Vec<D> const& a, Direction<D> const& b)
{
    return dot(a, b.vec());
}
template<int D>
constexpr Vec<D> operator*(double s, Direction<D> const& d)
{
    return s * d.vec();
}

//---------------------------------------------------------------------------//
}  // namespace rte
