//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/io/csv.hpp
//! \brief CSV writers for fluxes, extraction data and reports
//---------------------------------------------------------------------------//
#pragma once

#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "../extraction/exact.hpp"
#include "../extraction/mollified.hpp"
#include "../inversion/report.hpp"
#include "../inversion/xray.hpp"
#include "../transport/albedo.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
//! Comment header echoing the configuration hash
inline void write_csv_header(std::ostream& os, std::string const& config_hash,
                             std::string const& what)
{
    os << "# " << what << "\n# config_hash: " << config_hash << "\n";
    os << std::setprecision(17);
}

namespace detail
{
template<int D>
void write_components(std::ostream& os, Vec<D> const& v)
{
    for (int i = 0; i < D; ++i)
        os << v[i] << ',';
}

template<int D>
void component_names(std::ostream& os, char const* prefix)
{
    char const* names = "xyz";
    for (int i = 0; i < D; ++i)
        os << prefix << '_' << names[i] << ',';
}
}  // namespace detail

/*!
 * Exit data, one row per (exit pair, component) with component in
 * {ballistic, single, remainder, total}.
 */
template<int D>
void write_decomposition_csv(std::ostream& os,
                             AlbedoDecomposition<D> const& dec,
                             SphereQuadrature<D> const& quad,
                             std::string const& config_hash)
{
    write_csv_header(os, config_hash, "albedo decomposition");
    detail::component_names<D>(os, "exit_pos");
    detail::component_names<D>(os, "exit_dir");
    detail::component_names<D>(os, "entry_pos");
    detail::component_names<D>(os, "entry_dir");
    os << "value,component\n";
    std::pair<char const*, std::vector<double> const*> parts[]
        = {{"ballistic", &dec.ballistic},
           {"single", &dec.single},
           {"remainder", &dec.remainder},
           {"total", &dec.total}};
    for (std::size_t i = 0; i < dec.pairs.size(); ++i)
    {
        Vec<D> dir = quad.node(dec.pairs[i].direction).vec();
        for (auto const& [name, values] : parts)
        {
            detail::write_components(os, dec.pairs[i].point.position);
            detail::write_components(os, dir);
            detail::write_components(os, dec.entry_positions[i]);
            detail::write_components(os, dir);
            os << (*values)[i] << ',' << name << '\n';
        }
    }
}

//! (x, theta', theta, I00, J0(theta), J0(theta')) tuples
template<int D>
void write_extraction_csv(std::ostream& os,
                          std::vector<ExtractionRecord<D>> const& records,
                          std::string const& config_hash)
{
    write_csv_header(os, config_hash, "exact extraction");
    detail::component_names<D>(os, "x");
    detail::component_names<D>(os, "theta_prime");
    detail::component_names<D>(os, "theta");
    os << "i00,j0_theta,j0_theta_prime\n";
    for (auto const& r : records)
    {
        detail::write_components(os, r.x);
        detail::write_components(os, r.theta_prime.vec());
        detail::write_components(os, r.theta.vec());
        os << r.i00 << ',' << r.j0_theta << ',' << r.j0_theta_prime << '\n';
    }
}

inline void write_ladder_csv(std::ostream& os,
                             std::vector<LadderRow> const& rows,
                             std::string const& config_hash,
                             std::string const& what)
{
    write_csv_header(os, config_hash, what);
    os << "eps,delta,value,reference,abs_error\n";
    for (auto const& r : rows)
        os << r.eps << ',' << r.delta << ',' << r.value << ',' << r.reference
           << ',' << r.abs_error << '\n';
}

template<int D>
void write_report_csv(std::ostream& os, ReconstructionReport<D> const& rep,
                      std::string const& config_hash)
{
    write_csv_header(os, config_hash, rep.quantity + " reconstruction");
    bool dirs = !rep.theta.empty();
    detail::component_names<D>(os, "x");
    if (dirs)
    {
        detail::component_names<D>(os, "theta_prime");
        detail::component_names<D>(os, "theta");
    }
    os << "recovered" << (rep.has_truth() ? ",truth,abs_error" : "") << '\n';
    for (std::size_t i = 0; i < rep.recovered.size(); ++i)
    {
        detail::write_components(os, rep.points[i]);
        if (dirs)
        {
            detail::write_components(os, rep.theta_prime[i]);
            detail::write_components(os, rep.theta[i]);
        }
        os << rep.recovered[i];
        if (rep.has_truth())
            os << ',' << rep.truth[i] << ','
               << std::abs(rep.recovered[i] - rep.truth[i]);
        os << '\n';
    }
}

inline void write_line_data_csv(std::ostream& os, LineIntegralData const& d,
                                std::string const& config_hash)
{
    write_csv_header(os, config_hash, "line integrals");
    os << "x_x,x_y,dir_x,dir_y,value,provenance\n";
    for (auto const& r : d.rays)
        os << r.point[0] << ',' << r.point[1] << ',' << r.direction[0] << ','
           << r.direction[1] << ',' << r.value << ','
           << (d.provenance == LineDataProvenance::exact ? "exact"
                                                         : "mollified")
           << '\n';
}

//---------------------------------------------------------------------------//
}  // namespace rte
