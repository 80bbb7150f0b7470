//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/media/spatial_field.hpp
//! \brief Parametric scalar fields of position with analytic gradients
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <variant>
#include <vector>

#include "../core/errors.hpp"
#include "../core/vector.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
//! Monomial coef * prod_i x_i^{pow_i}
template<int D>
struct Monomial
{
    double coef{0};
    std::array<int, D> pow{};
};

//---------------------------------------------------------------------------//
/*!
 * Scalar function g(x) from a small parametric family.
 *
 * - constant: g = value
 * - polynomial: sum of monomials
 * - gaussian: A exp(-|x-c|^2 / w^2)
 * - bump: A (1 - |x-c|^2/w^2)^4 inside |x-c| < w, zero outside (C^3)
 */
template<int D>
class SpatialField
{
  public:
    struct Constant
    {
        double value{0};
    };
    struct Polynomial
    {
        std::vector<Monomial<D>> terms;
    };
    struct Gaussian
    {
        Vec<D> center;
        double width{1};
        double amplitude{1};
    };
    struct Bump
    {
        Vec<D> center;
        double width{1};
        double amplitude{1};
    };
    using Storage = std::variant<Constant, Polynomial, Gaussian, Bump>;

    SpatialField() : data_(Constant{0}) {}

    static SpatialField constant(double v) { return SpatialField(Constant{v}); }
    static SpatialField polynomial(std::vector<Monomial<D>> terms)
    {
        for (auto const& m : terms)
            for (int p : m.pow)
                if (p < 0)
                    throw ConfigError("polynomial exponents must be >= 0");
        return SpatialField(Polynomial{std::move(terms)});
    }
    static SpatialField gaussian(Vec<D> c, double width, double amplitude)
    {
        if (!(width > 0))
            throw ConfigError("gaussian width must be positive");
        return SpatialField(Gaussian{c, width, amplitude});
    }
    static SpatialField bump(Vec<D> c, double width, double amplitude)
    {
        if (!(width > 0))
            throw ConfigError("bump width must be positive");
        return SpatialField(Bump{c, width, amplitude});
    }

    //! |x|^2 as a polynomial
    static SpatialField radius_squared()
    {
        std::vector<Monomial<D>> t;
        for (int i = 0; i < D; ++i)
        {
            Monomial<D> m{1.0, {}};
            m.pow[i] = 2;
            t.push_back(m);
        }
        return polynomial(std::move(t));
    }

    Storage const& data() const { return data_; }

    bool is_constant() const
    {
        return std::holds_alternative<Constant>(data_);
    }

    double operator()(Vec<D> const& x) const
    {
        return std::visit([&x](auto const& f) { return eval(f, x); }, data_);
    }

    Vec<D> gradient(Vec<D> const& x) const
    {
        return std::visit([&x](auto const& f) { return grad(f, x); }, data_);
    }

  private:
    Storage data_;

    explicit SpatialField(Storage s) : data_(std::move(s)) {}

    static double eval(Constant const& f, Vec<D> const&) { return f.value; }
    static Vec<D> grad(Constant const&, Vec<D> const&) { return {}; }

    static double eval(Polynomial const& f, Vec<D> const& x)
    {
        double sum = 0;
        for (auto const& m : f.terms)
        {
            double t = m.coef;
            for (int i = 0; i < D; ++i)
                t *= ipow(x[i], m.pow[i]);
            sum += t;
        }
        return sum;
    }
    static Vec<D> grad(Polynomial const& f, Vec<D> const& x)
    {
        Vec<D> g{};
        for (auto const& m : f.terms)
        {
            for (int k = 0; k < D; ++k)
            {
                if (m.pow[k] == 0)
                    continue;
                double t = m.coef * m.pow[k];
                for (int i = 0; i < D; ++i)
                    t *= ipow(x[i], i == k ? m.pow[i] - 1 : m.pow[i]);
                g[k] += t;
            }
        }
        return g;
    }

    static double eval(Gaussian const& f, Vec<D> const& x)
    {
        return f.amplitude
               * std::exp(-norm_sq(x - f.center) / (f.width * f.width));
    }
    static Vec<D> grad(Gaussian const& f, Vec<D> const& x)
    {
        double w2 = f.width * f.width;
        return (-2 * eval(f, x) / w2) * (x - f.center);
    }

    static double eval(Bump const& f, Vec<D> const& x)
    {
        double s = 1 - norm_sq(x - f.center) / (f.width * f.width);
        if (s <= 0)
            return 0;
        double s2 = s * s;
        return f.amplitude * s2 * s2;
    }
    static Vec<D> grad(Bump const& f, Vec<D> const& x)
    {
        double w2 = f.width * f.width;
        double s = 1 - norm_sq(x - f.center) / w2;
        if (s <= 0)
            return {};
        return (-8 * f.amplitude * s * s * s / w2) * (x - f.center);
    }

    static double ipow(double x, int p)
    {
        double r = 1;
        for (int i = 0; i < p; ++i)
            r *= x;
        return r;
    }
};

//---------------------------------------------------------------------------//
/*!
 * Polynomial in the projection of a direction onto a fixed axis:
 * m(theta) = sum_j c_j (theta . axis)^j.
 */
template<int D>
struct AngularPoly
{
    Vec<D> axis = Vec<D>::axis(0);
    std::vector<double> coeffs{1.0};

    double operator()(Vec<D> const& theta) const
    {
        double t = dot(theta, axis);
        double r = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            r = r * t + *it;
        return r;
    }

    //! Even in theta: all odd coefficients vanish
    bool is_even() const
    {
        for (std::size_t j = 1; j < coeffs.size(); j += 2)
            if (coeffs[j] != 0)
                return false;
        return true;
    }

    bool is_constant() const
    {
        for (std::size_t j = 1; j < coeffs.size(); ++j)
            if (coeffs[j] != 0)
                return false;
        return true;
    }
};

//---------------------------------------------------------------------------//
}  // namespace rte
