//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/core/errors.hpp
//! \brief Exception hierarchy
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rte
{
//---------------------------------------------------------------------------//
//! Base class for all library errors
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! A point or segment lies outside the closed domain
class DomainError : public Error
{
  public:
    using Error::Error;
};

//! Invalid configuration values (bad orders, steps, schema errors)
class ConfigError : public Error
{
  public:
    using Error::Error;
};

//! A constructed object violates its defining invariant
class ValidationError : public Error
{
  public:
    using Error::Error;
};

//! Absorption difference has nonvanishing line integrals
class NotGaugeEquivalentError : public Error
{
  public:
    NotGaugeEquivalentError(std::string const& what, double worst)
        : Error(what), worst_(worst)
    {
    }
    double worst_line_integral() const { return worst_; }

  private:
    double worst_;
};

//! Direction pair too close to parallel for broken-ray formulas
class ExcludedConfigurationError : public Error
{
  public:
    using Error::Error;
};

//! Mollifier scale below what the discretization resolves, or support
//! escaping the boundary chart
class ResolutionError : public Error
{
  public:
    using Error::Error;
};

//! Measured data unusable (nonpositive values where positivity is required)
class DataError : public Error
{
  public:
    using Error::Error;
};

//! Data inconsistent beyond the clamping tolerance
class InconsistencyError : public Error
{
  public:
    using Error::Error;
};

//! Source iteration failed to converge; carries the residual history
class ConvergenceError : public Error
{
  public:
    ConvergenceError(std::string const& what, std::vector<double> history)
        : Error(what), history_(std::move(history))
    {
    }
    std::vector<double> const& residual_history() const { return history_; }

  private:
    std::vector<double> history_;
};

//---------------------------------------------------------------------------//
}  // namespace rte
