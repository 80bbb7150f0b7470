//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/transport/phase_space.hpp
//! \brief Cartesian spatial grid over a domain and fields on grid x sphere
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <span>
#include <vector>

#include "../geometry/domain.hpp"
#include "../geometry/sphere_quadrature.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * Uniform Cartesian grid covering a domain's bounding box.
 *
 * Nodes inside the closed domain carry unknowns. Outside nodes within two
 * layers of the domain are "ghosts": their values are filled by averaging
 * neighbors so that multilinear interpolation is defined at every point of
 * the domain.
 */
template<int D>
class PhaseSpaceGrid
{
  public:
    using Index = std::array<int, D>;

    PhaseSpaceGrid(ConvexDomain<D> const& domain, double step)
        : domain_(domain), step_(step)
    {
        if (!(step > 0))
            throw ConfigError("spatial step must be positive");
        size_ = 1;
        for (int i = 0; i < D; ++i)
        {
            int m = static_cast<int>(std::ceil(domain.semi_axes()[i] / step))
                    + 2;
            dims_[i] = 2 * m + 1;
            origin_[i] = domain.center()[i] - m * step;
            size_ *= dims_[i];
        }
        kind_.assign(size_, Kind::outside);
        for (std::size_t b = 0; b < size_; ++b)
        {
            if (domain.contains(position(b), 0.0))
            {
                kind_[b] = Kind::inside;
                inside_.push_back(b);
            }
        }
        build_ghosts();
    }

    ConvexDomain<D> const& domain() const { return domain_; }
    double step() const { return step_; }
    Index const& dims() const { return dims_; }
    //! Total nodes in the bounding box
    std::size_t box_size() const { return size_; }
    //! Box indices of nodes inside the domain
    std::vector<std::size_t> const& inside() const { return inside_; }
    bool is_inside(std::size_t b) const { return kind_[b] == Kind::inside; }

    Vec<D> position(std::size_t b) const
    {
        Vec<D> x;
        for (int i = D - 1; i >= 0; --i)
        {
            x[i] = origin_[i] + step_ * static_cast<double>(b % dims_[i]);
            b /= dims_[i];
        }
        return x;
    }

    std::size_t flat(Index const& idx) const
    {
        std::size_t b = 0;
        for (int i = 0; i < D; ++i)
            b = b * dims_[i] + idx[i];
        return b;
    }

    //! Fill ghost-node slots of a box-sized array from their neighbors
    void fill_ghosts(std::span<double> values) const
    {
        for (auto const& layer : ghost_layers_)
        {
            for (auto const& g : layer)
            {
                double s = 0;
                for (auto n : g.neighbors)
                    s += values[n];
                values[g.node] = s / g.neighbors.size();
            }
        }
    }

    //! Multilinear interpolation of a ghost-filled box-sized array
    double interpolate(std::span<double const> values, Vec<D> const& y) const
    {
        Index cell;
        std::array<double, D> frac;
        for (int i = 0; i < D; ++i)
        {
            double t = (y[i] - origin_[i]) / step_;
            int c = std::clamp(static_cast<int>(std::floor(t)), 0,
                               dims_[i] - 2);
            cell[i] = c;
            frac[i] = std::clamp(t - c, 0.0, 1.0);
        }
        std::size_t base = flat(cell);
        double result = 0;
        for (int corner = 0; corner < (1 << D); ++corner)
        {
            double w = 1;
            std::size_t offset = 0;
            std::size_t stride = 1;
            for (int i = D - 1; i >= 0; --i)
            {
                bool hi = (corner >> i) & 1;
                w *= hi ? frac[i] : 1 - frac[i];
                if (hi)
                    offset += stride;
                stride *= dims_[i];
            }
            if (w != 0)
                result += w * values[base + offset];
        }
        return result;
    }

  private:
    enum class Kind : char
    {
        outside,
        inside,
        ghost
    };
    struct Ghost
    {
        std::size_t node;
        std::vector<std::size_t> neighbors;
    };

    ConvexDomain<D> domain_;
    double step_;
    Index dims_{};
    Vec<D> origin_{};
    std::size_t size_{0};
    std::vector<Kind> kind_;
    std::vector<std::size_t> inside_;
    std::vector<std::vector<Ghost>> ghost_layers_;

    Index unflat(std::size_t b) const
    {
        Index idx;
        for (int i = D - 1; i >= 0; --i)
        {
            idx[i] = static_cast<int>(b % dims_[i]);
            b /= dims_[i];
        }
        return idx;
    }

    template<class F>
    void for_neighbors(std::size_t b, F&& f) const
    {
        Index idx = unflat(b);
        int count = 1;
        for (int i = 0; i < D; ++i)
            count *= 3;
        for (int n = 0; n < count; ++n)
        {
            Index o = idx;
            int r = n;
            bool self = true;
            bool valid = true;
            for (int i = 0; i < D; ++i)
            {
                int d = r % 3 - 1;
                r /= 3;
                self = self && d == 0;
                o[i] += d;
                valid = valid && o[i] >= 0 && o[i] < dims_[i];
            }
            if (!self && valid)
                f(flat(o));
        }
    }

    void build_ghosts()
    {
        for (int layer = 0; layer < 2; ++layer)
        {
            std::vector<Ghost> ghosts;
            for (std::size_t b = 0; b < size_; ++b)
            {
                if (kind_[b] != Kind::outside)
                    continue;
                Ghost g{b, {}};
                for_neighbors(b, [&](std::size_t n) {
                    if (kind_[n] != Kind::outside)
                        g.neighbors.push_back(n);
                });
                if (!g.neighbors.empty())
                    ghosts.push_back(std::move(g));
            }
            for (auto const& g : ghosts)
                kind_[g.node] = Kind::ghost;
            ghost_layers_.push_back(std::move(ghosts));
        }
    }
};

//---------------------------------------------------------------------------//
/*!
 * Samples u(x_i, theta_j) on grid nodes crossed with quadrature directions.
 *
 * Storage is direction-major: one box-sized slab per direction. Only inside
 * nodes (and ghosts, for interpolated source fields) carry meaningful
 * values. Interpolation is multilinear in x and nearest-node in theta.
 */
template<int D>
class PhaseSpaceField
{
  public:
    PhaseSpaceField() = default;
    PhaseSpaceField(std::shared_ptr<PhaseSpaceGrid<D> const> grid,
                    std::shared_ptr<SphereQuadrature<D> const> quad)
        : grid_(std::move(grid))
        , quad_(std::move(quad))
        , values_(grid_->box_size() * quad_->size(), 0.0)
    {
    }

    PhaseSpaceGrid<D> const& grid() const { return *grid_; }
    SphereQuadrature<D> const& quadrature() const { return *quad_; }
    std::shared_ptr<PhaseSpaceGrid<D> const> grid_ptr() const { return grid_; }
    std::shared_ptr<SphereQuadrature<D> const> quadrature_ptr() const
    {
        return quad_;
    }

    std::span<double> slab(std::size_t j)
    {
        return {values_.data() + j * grid_->box_size(), grid_->box_size()};
    }
    std::span<double const> slab(std::size_t j) const
    {
        return {values_.data() + j * grid_->box_size(), grid_->box_size()};
    }

    double& at(std::size_t box, std::size_t j)
    {
        return values_[j * grid_->box_size() + box];
    }
    double at(std::size_t box, std::size_t j) const
    {
        return values_[j * grid_->box_size() + box];
    }

    //! Value at an arbitrary point for quadrature direction j
    double interpolate(Vec<D> const& y, std::size_t j) const
    {
        return grid_->interpolate(slab(j), y);
    }

    //! Value at an arbitrary point and direction
    double interpolate(Vec<D> const& y, Direction<D> const& theta) const
    {
        return interpolate(y, quad_->nearest(theta));
    }

    void fill_ghosts()
    {
        for (std::size_t j = 0; j < quad_->size(); ++j)
            grid_->fill_ghosts(slab(j));
    }

    //! Sum of |u| h^D w_j over inside nodes (discrete L1 on Omega x S)
    double l1_norm() const
    {
        double cell = std::pow(grid_->step(), D);
        double s = 0;
        for (std::size_t j = 0; j < quad_->size(); ++j)
        {
            double sj = 0;
            auto v = slab(j);
            for (auto b : grid_->inside())
                sj += std::abs(v[b]);
            s += sj * quad_->weight(j);
        }
        return s * cell;
    }

    //! Minimum over inside nodes
    double min_value() const
    {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < quad_->size(); ++j)
            for (auto b : grid_->inside())
                m = std::min(m, at(b, j));
        return m;
    }

    bool all_finite() const
    {
        for (std::size_t j = 0; j < quad_->size(); ++j)
            for (auto b : grid_->inside())
                if (!std::isfinite(at(b, j)))
                    return false;
        return true;
    }

    PhaseSpaceField& operator+=(PhaseSpaceField const& o)
    {
        for (std::size_t i = 0; i < values_.size(); ++i)
            values_[i] += o.values_[i];
        return *this;
    }
    PhaseSpaceField& operator-=(PhaseSpaceField const& o)
    {
        for (std::size_t i = 0; i < values_.size(); ++i)
            values_[i] -= o.values_[i];
        return *this;
    }
    PhaseSpaceField& operator*=(double s)
    {
        for (auto& v : values_)
            v *= s;
        return *this;
    }

    std::vector<double> const& raw() const { return values_; }

  private:
    std::shared_ptr<PhaseSpaceGrid<D> const> grid_;
    std::shared_ptr<SphereQuadrature<D> const> quad_;
    std::vector<double> values_;
};

//---------------------------------------------------------------------------//
}  // namespace rte
