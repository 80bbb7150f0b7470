//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/inversion/report.hpp
//! \brief Recovered samples with error norms against ground truth
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "../core/vector.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
template<int D>
struct ReconstructionReport
{
    std::string quantity;
    std::vector<Vec<D>> points;
    //! Per-sample direction pair when the quantity depends on directions
    std::vector<Vec<D>> theta_prime;
    std::vector<Vec<D>> theta;
    std::vector<double> recovered;
    std::vector<double> truth;
    double sup_error{0};
    double l1_error{0};  //!< mean absolute error
    double relative_l2_error{0};
    std::vector<double> residual_history;
    std::string config;

    bool has_truth() const { return !truth.empty(); }

    //! Attach ground truth on the same samples and compute error norms
    void set_truth(std::vector<double> t)
    {
        truth = std::move(t);
        sup_error = l1_error = 0;
        double num = 0, den = 0;
        for (std::size_t i = 0; i < recovered.size(); ++i)
        {
            double e = std::abs(recovered[i] - truth[i]);
            sup_error = std::max(sup_error, e);
            l1_error += e;
            num += e * e;
            den += truth[i] * truth[i];
        }
        if (!recovered.empty())
            l1_error /= recovered.size();
        relative_l2_error = den > 0 ? std::sqrt(num / den) : std::sqrt(num);
    }
};

//---------------------------------------------------------------------------//
}  // namespace rte
