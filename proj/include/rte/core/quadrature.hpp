//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/core/quadrature.hpp
//! \brief One-dimensional quadrature rules
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
//! Number of Simpson panels (always even, at least 2) for a given step
inline int simpson_intervals(double length, double step)
{
    if (!(step > 0))
        throw ConfigError("quadrature step must be positive");
    int n = static_cast<int>(std::ceil(std::abs(length) / step - 1e-12));
    n = std::max(n, 2);
    return n + (n % 2);
}

namespace detail
{
template<class F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth)
{
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol)
        return left + right + delta / 15;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1)
           + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2,
                                  depth - 1);
}
}  // namespace detail

//---------------------------------------------------------------------------//
//! Adaptive Simpson rule with Richardson correction
template<class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-12,
                        int max_depth = 40)
{
    double fa = f(a);
    double fb = f(b);
    double fm = f(0.5 * (a + b));
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol,
                                        max_depth);
}

//---------------------------------------------------------------------------//
/*!
 * Composite Simpson rule on [a, b] with panel width at most \c step.
 *
 * A panel whose positive samples span more than three decades is re-done
 * with the adaptive rule.
 */
template<class F>
double composite_simpson(F&& f, double a, double b, double step)
{
    if (a == b)
        return 0;
    int n = simpson_intervals(b - a, step);
    double h = (b - a) / n;
    double sum = 0;
    double f0 = f(a);
    for (int i = 0; i < n; i += 2)
    {
        double x0 = a + i * h;
        double f1 = f(x0 + h);
        double f2 = f(i + 2 == n ? b : x0 + 2 * h);
        double lo = std::min({std::abs(f0), std::abs(f1), std::abs(f2)});
        double hi = std::max({std::abs(f0), std::abs(f1), std::abs(f2)});
        if (lo > 0 && hi > 1e3 * lo)
        {
            double x2 = (i + 2 == n ? b : x0 + 2 * h);
            sum += adaptive_simpson(f, x0, x2, 1e-14 * std::max(hi, 1.0));
        }
        else
        {
            sum += h / 3 * (f0 + 4 * f1 + f2);
        }
        f0 = f2;
    }
    return sum;
}

//---------------------------------------------------------------------------//
/*!
 * Gauss–Legendre nodes and weights on [-1, 1].
 */
struct GaussLegendre
{
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n)
    {
        if (n < 1)
            throw ConfigError("Gauss-Legendre order must be positive");
        nodes.resize(n);
        weights.resize(n);
        for (int i = 0; i < (n + 1) / 2; ++i)
        {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0;
            for (int iter = 0; iter < 100; ++iter)
            {
                double p0 = 1, p1 = 0;
                for (int j = 1; j <= n; ++j)
                {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2 * j - 1) * x * p1 - (j - 1) * p2) / j;
                }
                dp = n * (x * p0 - p1) / (x * x - 1);
                double dx = p0 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15)
                    break;
            }
            {
                double p0 = 1, p1 = 0;
                for (int j = 1; j <= n; ++j)
                {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2 * j - 1) * x * p1 - (j - 1) * p2) / j;
                }
                dp = n * (x * p0 - p1) / (x * x - 1);
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = weights[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
        }
    }

    //! Integrate f over [a, b]
    template<class F>
    double integrate(F&& f, double a, double b) const
    {
        double half = 0.5 * (b - a);
        double mid = 0.5 * (a + b);
        double sum = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            sum += weights[i] * f(mid + half * nodes[i]);
        return half * sum;
    }
};

//---------------------------------------------------------------------------//
}  // namespace rte
