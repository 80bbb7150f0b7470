//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/extraction/exact.hpp
//! \brief Limits of the extraction functionals evaluated from the medium
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <vector>

#include "../core/parallel.hpp"
#include "../transport/attenuation.hpp"
#include "frame.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
/*!
 * J_0(x, theta) = exp(-int_R a(x + t theta, theta) dt) over the full chord.
 */
template<int D>
double j0_exact(MediumPair<D> const& pair, Vec<D> const& x,
                Direction<D> const& theta, double ray_step)
{
    auto ch = pair.domain().chord(x, theta);
    return std::exp(-attenuation_integral(pair, x, theta, -ch.forward,
                                          ch.backward, ray_step));
}

template<int D>
double i00_extended(MediumPair<D> const& pair, Vec<D> const& x,
                    Direction<D> const& theta_prime, Direction<D> const& theta,
                    double ray_step);

//---------------------------------------------------------------------------//
/*!
 * I_00(x, theta', theta): attenuation into x along theta', out of x along
 * theta, times k(x, theta', theta).
 */
template<int D>
double i00_exact(MediumPair<D> const& pair, Vec<D> const& x,
                 Direction<D> const& theta_prime, Direction<D> const& theta,
                 double ray_step)
{
    if (std::abs(dot(theta, theta_prime)) > 1 - parallel_tolerance)
        throw ExcludedConfigurationError(
            "I00 undefined for (anti)parallel directions");
    return i00_extended(pair, x, theta_prime, theta, ray_step);
}

//---------------------------------------------------------------------------//
/*!
 * Continuous extension of I_00 to all direction pairs, including
 * backscattering theta' = -theta.
 */
template<int D>
double i00_extended(MediumPair<D> const& pair, Vec<D> const& x,
                    Direction<D> const& theta_prime, Direction<D> const& theta,
                    double ray_step)
{
    auto const& dom = pair.domain();
    double in = attenuation_integral(pair, x, theta_prime, 0.0,
                                     dom.exit_time(x, -theta_prime), ray_step);
    double out = attenuation_integral(pair, x, theta,
                                      -dom.exit_time(x, theta), 0.0, ray_step);
    return std::exp(-in - out)
           * pair.scattering()(x, theta_prime.vec(), theta.vec());
}

//---------------------------------------------------------------------------//
//! One sample of exact extraction output
template<int D>
struct ExtractionRecord
{
    Vec<D> x;
    Direction<D> theta_prime;
    Direction<D> theta;
    double i00{0};
    double j0_theta{0};
    double j0_theta_prime{0};
};

/*!
 * Records for every point and every ordered non-parallel pair of the given
 * directions, including both orientations (theta', theta) and (theta,
 * theta') so that swapped partners are always present.
 */
template<int D>
std::vector<ExtractionRecord<D>>
extract_exact(MediumPair<D> const& pair, std::vector<Vec<D>> const& points,
              std::vector<Direction<D>> const& directions, double ray_step,
              int threads = 1)
{
    std::size_t nd = directions.size();
    std::vector<std::vector<ExtractionRecord<D>>> per_point(points.size());
    parallel_for(points.size(), threads, [&](std::size_t p) {
        auto const& x = points[p];
        std::vector<double> j0(nd);
        for (std::size_t i = 0; i < nd; ++i)
            j0[i] = j0_exact(pair, x, directions[i], ray_step);
        for (std::size_t i = 0; i < nd; ++i)
        {
            for (std::size_t l = 0; l < nd; ++l)
            {
                if (std::abs(dot(directions[i], directions[l]))
                    > 1 - parallel_tolerance)
                    continue;
                ExtractionRecord<D> r{x, directions[l], directions[i]};
                r.i00 = i00_exact(pair, x, directions[l], directions[i],
                                  ray_step);
                r.j0_theta = j0[i];
                r.j0_theta_prime = j0[l];
                per_point[p].push_back(r);
            }
        }
    });
    std::vector<ExtractionRecord<D>> out;
    for (auto& v : per_point)
        out.insert(out.end(), v.begin(), v.end());
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace rte
