//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/inversion/xray.hpp
//! \brief Line-integral data and Kaczmarz inversion on a pixel grid
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "../gauge/gauge.hpp"
#include "report.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
enum class LineDataProvenance
{
    exact,
    mollified
};

//! One ray: a point on the line, its direction, and int a along the chord
struct LineIntegralSample
{
    Vec<2> point;
    Direction<2> direction;
    double value{0};
};

struct LineIntegralData
{
    std::vector<LineIntegralSample> rays;
    LineDataProvenance provenance{LineDataProvenance::exact};
};

/*!
 * Parallel-beam geometry: \c n_angles angles in [0, pi), \c n_offsets
 * equally spaced offsets across the domain. Rays missing the domain are
 * dropped.
 */
template<class F>
LineIntegralData make_parallel_beam_data(F const& a,
                                         ConvexDomain<2> const& domain,
                                         int n_angles, int n_offsets,
                                         double step)
{
    LineIntegralData data;
    double r = domain.diameter() / 2;
    for (int i = 0; i < n_angles; ++i)
    {
        double phi = std::numbers::pi * i / n_angles;
        Direction<2> d(Vec<2>{{std::cos(phi), std::sin(phi)}});
        Vec<2> normal{{-std::sin(phi), std::cos(phi)}};
        for (int j = 0; j < n_offsets; ++j)
        {
            double p = r * (-1 + (2.0 * j + 1) / n_offsets);
            Vec<2> x0 = domain.center() + p * normal;
            BoundaryPoint<2> entry;
            if (!domain.line_entry(x0, d, &entry))
                continue;
            Vec<2> mid = entry.position
                         + 0.5 * domain.exit_time(entry.position, d) * d;
            if (!domain.contains(mid))
                continue;
            double v = line_integral(
                [&](Vec<2> const& y, Vec<2> const&) { return a(y); }, domain,
                mid, d, step);
            data.rays.push_back({mid, d, v});
        }
    }
    return data;
}

//---------------------------------------------------------------------------//
/*!
 * Square pixel grid covering the domain's bounding box.
 */
class PixelGrid
{
  public:
    PixelGrid(ConvexDomain<2> const& domain, int n)
        : domain_(domain), n_(n)
    {
        if (n < 1)
            throw ConfigError("pixel grid needs at least one pixel");
        double r = domain.diameter() / 2;
        lo_ = domain.center() - Vec<2>{{r, r}};
        h_ = 2 * r / n;
    }

    int size() const { return n_; }
    double pixel_size() const { return h_; }
    std::size_t count() const { return static_cast<std::size_t>(n_) * n_; }
    Vec<2> center(std::size_t p) const
    {
        int i = static_cast<int>(p % n_);
        int j = static_cast<int>(p / n_);
        return lo_ + Vec<2>{{(i + 0.5) * h_, (j + 0.5) * h_}};
    }
    ConvexDomain<2> const& domain() const { return domain_; }

    struct Entry
    {
        std::size_t pixel;
        double length;
    };

    /*!
     * Intersection lengths of the domain chord through (x, d) with pixels
     * (Siddon's method: split the chord at every grid-line crossing).
     */
    std::vector<Entry> ray_row(Vec<2> const& x, Direction<2> const& d) const
    {
        auto ch = domain_.chord(x, d);
        double t0 = -ch.backward, t1 = ch.forward;
        std::vector<double> ts{t0, t1};
        for (int axis = 0; axis < 2; ++axis)
        {
            if (std::abs(d[axis]) < 1e-14)
                continue;
            for (int k = 0; k <= n_; ++k)
            {
                double t = (lo_[axis] + k * h_ - x[axis]) / d[axis];
                if (t > t0 && t < t1)
                    ts.push_back(t);
            }
        }
        std::sort(ts.begin(), ts.end());
        std::vector<Entry> row;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        {
            double len = ts[i + 1] - ts[i];
            if (len <= 1e-14)
                continue;
            Vec<2> m = x + (0.5 * (ts[i] + ts[i + 1])) * d;
            int pi = static_cast<int>(std::floor((m[0] - lo_[0]) / h_));
            int pj = static_cast<int>(std::floor((m[1] - lo_[1]) / h_));
            if (pi < 0 || pj < 0 || pi >= n_ || pj >= n_)
                continue;
            std::size_t p = static_cast<std::size_t>(pj) * n_ + pi;
            if (!row.empty() && row.back().pixel == p)
                row.back().length += len;
            else
                row.push_back({p, len});
        }
        return row;
    }

  private:
    ConvexDomain<2> domain_;
    int n_;
    Vec<2> lo_;
    double h_;
};

//---------------------------------------------------------------------------//
/*!
 * Kaczmarz (ART) inversion of line-integral data for an isotropic
 * absorption on a pixel grid.
 *
 * Rays are visited in a fixed interleaved order (stride coprime with the
 * ray count) so that consecutive projections are far apart in angle. The
 * residual history holds ||A x - b|| / ||b|| after each sweep. Only pixels
 * whose centers lie in the domain are reported.
 */
inline ReconstructionReport<2>
kaczmarz_xray_invert(LineIntegralData const& data, PixelGrid const& grid,
                     int sweeps, double relaxation = 1.0)
{
    if (data.rays.empty())
        throw ConfigError("no line-integral data");
    if (sweeps < 1)
        throw ConfigError("sweeps must be at least 1");
    if (!(relaxation > 0) || relaxation > 2)
        throw ConfigError("relaxation must lie in (0, 2]");

    std::size_t m = data.rays.size();
    std::vector<std::vector<PixelGrid::Entry>> rows(m);
    std::vector<double> row_norm(m);
    double bnorm = 0;
    for (std::size_t i = 0; i < m; ++i)
    {
        rows[i] = grid.ray_row(data.rays[i].point, data.rays[i].direction);
        for (auto const& e : rows[i])
            row_norm[i] += e.length * e.length;
        bnorm += data.rays[i].value * data.rays[i].value;
    }
    bnorm = std::sqrt(bnorm);

    std::size_t stride = static_cast<std::size_t>(0.618034 * m) | 1;
    while (std::gcd(stride, m) != 1)
        stride += 2;

    std::vector<double> x(grid.count(), 0.0);
    auto residual = [&]() {
        double s = 0;
        for (std::size_t i = 0; i < m; ++i)
        {
            double r = data.rays[i].value;
            for (auto const& e : rows[i])
                r -= e.length * x[e.pixel];
            s += r * r;
        }
        return bnorm > 0 ? std::sqrt(s) / bnorm : std::sqrt(s);
    };

    ReconstructionReport<2> rep;
    rep.quantity = "absorption";
    for (int sweep = 0; sweep < sweeps; ++sweep)
    {
        std::size_t i = 0;
        for (std::size_t c = 0; c < m; ++c, i = (i + stride) % m)
        {
            if (row_norm[i] == 0)
                continue;
            double r = data.rays[i].value;
            for (auto const& e : rows[i])
                r -= e.length * x[e.pixel];
            double s = relaxation * r / row_norm[i];
            for (auto const& e : rows[i])
                x[e.pixel] += s * e.length;
        }
        rep.residual_history.push_back(residual());
    }
    for (std::size_t p = 0; p < grid.count(); ++p)
    {
        Vec<2> c = grid.center(p);
        if (grid.domain().contains(c))
        {
            rep.points.push_back(c);
            rep.recovered.push_back(x[p]);
        }
    }
    return rep;
}

//---------------------------------------------------------------------------//
}  // namespace rte
