//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/io/config.hpp
//! \brief JSON run configuration: schema validation and object construction
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "../gauge/gauge.hpp"
#include "../transport/boundary_flux.hpp"
#include "../transport/solver.hpp"

namespace rte
{
using Json = nlohmann::json;

namespace detail
{
//---------------------------------------------------------------------------//
inline void
require_keys(Json const& j, std::string const& where,
             std::initializer_list<char const*> allowed,
             std::initializer_list<char const*> required = {})
{
    if (!j.is_object())
        throw ConfigError(where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
    for (auto const* r : required)
        if (!j.contains(r))
            throw ConfigError(where + ": missing key '" + r + "'");
}

inline double get_number(Json const& j, char const* key, std::string const& where)
{
    auto const& v = j.at(key);
    if (!v.is_number())
        throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

inline double get_number(Json const& j, char const* key,
                         std::string const& where, double fallback)
{
    return j.contains(key) ? get_number(j, key, where) : fallback;
}

inline int get_int(Json const& j, char const* key, std::string const& where,
                   int fallback)
{
    if (!j.contains(key))
        return fallback;
    auto const& v = j.at(key);
    if (!v.is_number_integer())
        throw ConfigError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

inline std::vector<double>
get_numbers(Json const& j, char const* key, std::string const& where)
{
    auto const& v = j.at(key);
    if (!v.is_array())
        throw ConfigError(where + "." + key + ": expected an array");
    std::vector<double> out;
    for (auto const& e : v)
    {
        if (!e.is_number())
            throw ConfigError(where + "." + key + ": expected numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

template<int D>
Vec<D> get_vec(Json const& j, char const* key, std::string const& where)
{
    auto v = get_numbers(j, key, where);
    if (v.size() != D)
        throw ConfigError(where + "." + key + ": expected "
                          + std::to_string(D) + " components");
    Vec<D> r;
    for (int i = 0; i < D; ++i)
        r[i] = v[i];
    return r;
}

inline std::string get_type(Json const& j, std::string const& where)
{
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw ConfigError(where + ": missing string 'type'");
    return j.at("type").get<std::string>();
}

inline void require_positive(double v, std::string const& what)
{
    if (!(v > 0))
        throw ConfigError(what + " must be positive");
}
}  // namespace detail

//---------------------------------------------------------------------------//
// SCHEMA PARSERS
//---------------------------------------------------------------------------//
template<int D>
ConvexDomain<D> parse_domain(Json const& j)
{
    using namespace detail;
    std::string w = "domain";
    auto type = get_type(j, w);
    if (type == "ball")
    {
        require_keys(j, w, {"type", "center", "radius"}, {"radius"});
        Vec<D> c = j.contains("center") ? get_vec<D>(j, "center", w) : Vec<D>{};
        double r = get_number(j, "radius", w);
        require_positive(r, "domain.radius");
        return ConvexDomain<D>::ball(c, r);
    }
    if (type == "ellipsoid")
    {
        require_keys(j, w, {"type", "center", "semi_axes"}, {"semi_axes"});
        Vec<D> c = j.contains("center") ? get_vec<D>(j, "center", w) : Vec<D>{};
        return ConvexDomain<D>::ellipsoid(c, get_vec<D>(j, "semi_axes", w));
    }
    throw ConfigError("domain: unknown type '" + type + "'");
}

template<int D>
SpatialField<D> parse_field(Json const& j, std::string const& w)
{
    using namespace detail;
    auto type = get_type(j, w);
    if (type == "constant")
    {
        require_keys(j, w, {"type", "value"}, {"value"});
        return SpatialField<D>::constant(get_number(j, "value", w));
    }
    if (type == "polynomial")
    {
        require_keys(j, w, {"type", "terms"}, {"terms"});
        std::vector<Monomial<D>> terms;
        for (auto const& t : j.at("terms"))
        {
            require_keys(t, w + ".terms", {"coef", "pow"}, {"coef", "pow"});
            Monomial<D> m;
            m.coef = get_number(t, "coef", w);
            auto p = get_numbers(t, "pow", w);
            if (p.size() != D)
                throw ConfigError(w + ".terms.pow: wrong length");
            for (int i = 0; i < D; ++i)
                m.pow[i] = static_cast<int>(p[i]);
            terms.push_back(m);
        }
        return SpatialField<D>::polynomial(terms);
    }
    if (type == "gaussian" || type == "bump")
    {
        require_keys(j, w, {"type", "center", "width", "amplitude"},
                     {"width"});
        Vec<D> c = j.contains("center") ? get_vec<D>(j, "center", w) : Vec<D>{};
        double width = get_number(j, "width", w);
        double amp = get_number(j, "amplitude", w, 1.0);
        return type == "gaussian" ? SpatialField<D>::gaussian(c, width, amp)
                                  : SpatialField<D>::bump(c, width, amp);
    }
    throw ConfigError(w + ": unknown field type '" + type + "'");
}

template<int D>
GaugeField<D> parse_gauge(Json const& j, ConvexDomain<D> const& domain)
{
    using namespace detail;
    std::string w = "gauge";
    auto type = get_type(j, w);
    if (type == "identity")
    {
        require_keys(j, w, {"type"});
        return {};
    }
    if (type == "scaled_boundary")
    {
        require_keys(j, w, {"type", "scale"}, {"scale"});
        return make_scaled_boundary_gauge<D>(domain, get_number(j, "scale", w));
    }
    if (type == "boundary_poly")
    {
        require_keys(j, w, {"type", "terms"}, {"terms"});
        std::vector<SeparableTerm<D>> terms;
        for (auto const& t : j.at("terms"))
        {
            require_keys(t, w + ".terms", {"space", "axis", "coeffs"},
                         {"space"});
            SeparableTerm<D> st{parse_field<D>(t.at("space"), w + ".space"),
                                {}};
            if (t.contains("axis"))
                st.angle.axis = get_vec<D>(t, "axis", w);
            if (t.contains("coeffs"))
                st.angle.coeffs = get_numbers(t, "coeffs", w);
            terms.push_back(st);
        }
        return make_boundary_poly_gauge<D>(domain, terms);
    }
    if (type == "compose")
    {
        require_keys(j, w, {"type", "parts"}, {"parts"});
        std::vector<GaugeField<D>> parts;
        for (auto const& p : j.at("parts"))
            parts.push_back(parse_gauge<D>(p, domain));
        return compose_gauges<D>(parts);
    }
    throw ConfigError("gauge: unknown type '" + type + "'");
}

template<int D>
AbsorptionField<D> parse_absorption(Json const& j,
                                    ConvexDomain<D> const& domain)
{
    using namespace detail;
    std::string w = "absorption";
    auto type = get_type(j, w);
    if (type == "constant")
    {
        require_keys(j, w, {"type", "value"}, {"value"});
        return make_constant_absorption<D>(get_number(j, "value", w));
    }
    if (type == "isotropic")
    {
        require_keys(j, w, {"type", "field"}, {"field"});
        return make_isotropic_absorption<D>(
            parse_field<D>(j.at("field"), w + ".field"));
    }
    if (type == "line_symmetric")
    {
        require_keys(j, w, {"type", "p", "q", "axis"}, {"p", "q"});
        Vec<D> axis = j.contains("axis") ? get_vec<D>(j, "axis", w)
                                         : Vec<D>::axis(0);
        return make_line_symmetric_absorption<D>(
            parse_field<D>(j.at("p"), w + ".p"),
            parse_field<D>(j.at("q"), w + ".q"), axis);
    }
    if (type == "general_sum")
    {
        require_keys(j, w, {"type", "parts", "gauges"});
        std::vector<typename GeneralSumAbsorption<D>::Part> parts;
        std::vector<typename GeneralSumAbsorption<D>::GaugePart> gauges;
        if (j.contains("parts"))
        {
            for (auto const& p : j.at("parts"))
            {
                require_keys(p, w + ".parts", {"coef", "absorption"},
                             {"absorption"});
                parts.push_back({get_number(p, "coef", w, 1.0),
                                 parse_absorption<D>(p.at("absorption"),
                                                     domain)});
            }
        }
        if (j.contains("gauges"))
        {
            for (auto const& g : j.at("gauges"))
            {
                require_keys(g, w + ".gauges", {"coef", "gauge"}, {"gauge"});
                gauges.push_back({get_number(g, "coef", w, 1.0),
                                  parse_gauge<D>(g.at("gauge"), domain)});
            }
        }
        return make_general_sum_absorption<D>({}, parts, gauges);
    }
    throw ConfigError("absorption: unknown type '" + type + "'");
}

template<int D>
ScatteringKernel<D> parse_scattering(Json const& j)
{
    using namespace detail;
    std::string w = "scattering";
    auto type = get_type(j, w);
    if (type == "zero")
    {
        require_keys(j, w, {"type"});
        return ScatteringKernel<D>::zero();
    }
    if (type == "constant")
    {
        require_keys(j, w, {"type", "value"}, {"value"});
        return ScatteringKernel<D>::constant(get_number(j, "value", w));
    }
    if (type == "dot_product")
    {
        require_keys(j, w, {"type", "field", "poly"}, {"field", "poly"});
        return ScatteringKernel<D>::dot_product(
            parse_field<D>(j.at("field"), w + ".field"),
            get_numbers(j, "poly", w));
    }
    if (type == "separable")
    {
        require_keys(j, w, {"type", "field", "poly", "skew_axis", "skew"},
                     {"field", "poly"});
        Vec<D> axis = j.contains("skew_axis") ? get_vec<D>(j, "skew_axis", w)
                                              : Vec<D>::axis(0);
        return ScatteringKernel<D>::separable(
            parse_field<D>(j.at("field"), w + ".field"),
            get_numbers(j, "poly", w), axis, get_number(j, "skew", w, 0.0));
    }
    throw ConfigError("scattering: unknown type '" + type + "'");
}

template<int D>
MediumPair<D> parse_medium(Json const& j, ConvexDomain<D> const& domain)
{
    detail::require_keys(j, "medium", {"absorption", "scattering"},
                         {"absorption", "scattering"});
    return MediumPair<D>(domain, parse_absorption<D>(j.at("absorption"), domain),
                         parse_scattering<D>(j.at("scattering")));
}

template<int D>
IncomingFlux<D> parse_boundary_flux(Json const& j)
{
    using namespace detail;
    std::string w = "boundary_flux";
    auto type = get_type(j, w);
    if (type == "uniform")
    {
        require_keys(j, w, {"type", "value"});
        return IncomingFlux<D>::uniform(get_number(j, "value", w, 1.0));
    }
    if (type == "beam")
    {
        require_keys(j, w,
                     {"type", "center", "direction", "width", "angular_width",
                      "amplitude"},
                     {"center", "direction", "width", "angular_width"});
        return IncomingFlux<D>::beam(get_vec<D>(j, "center", w),
                                     Direction<D>(get_vec<D>(j, "direction", w)),
                                     get_number(j, "width", w),
                                     get_number(j, "angular_width", w),
                                     get_number(j, "amplitude", w, 1.0));
    }
    throw ConfigError("boundary_flux: unknown type '" + type + "'");
}

inline SolverConfig parse_solver(Json const& j)
{
    using namespace detail;
    std::string w = "solver";
    require_keys(j, w,
                 {"spatial_step", "angular_order", "ray_step", "tol",
                  "max_iter", "boundary_points"});
    SolverConfig c;
    c.spatial_step = get_number(j, "spatial_step", w, c.spatial_step);
    c.angular_order = get_int(j, "angular_order", w, c.angular_order);
    c.ray_step = get_number(j, "ray_step", w, c.ray_step);
    c.tol = get_number(j, "tol", w, c.tol);
    c.max_iter = get_int(j, "max_iter", w, c.max_iter);
    c.boundary_points = get_int(j, "boundary_points", w, c.boundary_points);
    if (c.ray_step < 0)
        throw ConfigError("solver.ray_step must be nonnegative");
    c.validate();
    return c;
}

//---------------------------------------------------------------------------//
struct ExtractionConfig
{
    double ray_step{1e-3};
    int points{20};
    int directions{8};
    std::vector<double> eps{0.4, 0.2, 0.1};
    std::vector<double> delta{0.2, 0.1, 0.05};
    std::vector<double> x;  //!< ladder evaluation point (default: origin-ish)
    std::vector<double> theta;
    std::vector<double> theta_prime;
};

struct InversionConfig
{
    double fd_step{1e-2};
    int points{50};
    int pixels{64};
    int angles{180};
    int offsets{64};
    int sweeps{30};
    double relaxation{1.0};
};

/*!
 * Complete run configuration parsed from a single JSON document.
 */
struct RunConfig
{
    int dimension{2};
    Json domain;
    Json medium;
    std::optional<Json> medium_tilde;
    std::optional<Json> gauge;
    Json boundary_flux = Json{{"type", "uniform"}, {"value", 1.0}};
    SolverConfig solver;
    ExtractionConfig extraction;
    InversionConfig inversion;
    std::string output_dir{"out"};
    std::uint64_t seed{0};
    int check_sample{2000};
    std::string hash;  //!< FNV-1a of the canonical document
    Json raw;
};

//! 64-bit FNV-1a hash as 16 hex digits
inline std::string fnv1a_hex(std::string const& s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

namespace detail
{
template<int D>
void validate_objects(RunConfig const& c)
{
    auto dom = parse_domain<D>(c.domain);
    parse_medium<D>(c.medium, dom);
    if (c.medium_tilde)
        parse_medium<D>(*c.medium_tilde, dom);
    if (c.gauge)
        parse_gauge<D>(*c.gauge, dom);
    parse_boundary_flux<D>(c.boundary_flux);
    auto check_len = [](std::vector<double> const& v, char const* what) {
        if (!v.empty() && v.size() != D)
            throw ConfigError(std::string("extraction.") + what
                              + ": wrong number of components");
    };
    check_len(c.extraction.x, "x");
    check_len(c.extraction.theta, "theta");
    check_len(c.extraction.theta_prime, "theta_prime");
}
}  // namespace detail

/*!
 * Parse and validate a run configuration. Unknown keys, wrong types and
 * out-of-range values raise ConfigError.
 */
inline RunConfig parse_run_config(std::string const& text)
{
    using namespace detail;
    RunConfig c;
    try
    {
        c.raw = Json::parse(text);
    }
    catch (Json::exception const& e)
    {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    try
    {
        auto const& j = c.raw;
        require_keys(j, "config",
                     {"dimension", "domain", "medium", "medium_tilde",
                      "gauge", "boundary_flux", "solver", "extraction",
                      "inversion", "output_dir", "seed", "check_sample"},
                     {"dimension", "domain", "medium"});
        c.dimension = get_int(j, "dimension", "config", 2);
        if (c.dimension != 2 && c.dimension != 3)
            throw ConfigError("dimension must be 2 or 3");
        c.domain = j.at("domain");
        c.medium = j.at("medium");
        if (j.contains("medium_tilde"))
            c.medium_tilde = j.at("medium_tilde");
        if (j.contains("gauge"))
            c.gauge = j.at("gauge");
        if (j.contains("boundary_flux"))
            c.boundary_flux = j.at("boundary_flux");
        if (j.contains("solver"))
            c.solver = parse_solver(j.at("solver"));
        if (j.contains("extraction"))
        {
            auto const& e = j.at("extraction");
            std::string w = "extraction";
            require_keys(e, w,
                         {"ray_step", "points", "directions", "eps", "delta",
                          "x", "theta", "theta_prime"});
            auto& x = c.extraction;
            x.ray_step = get_number(e, "ray_step", w, x.ray_step);
            require_positive(x.ray_step, "extraction.ray_step");
            x.points = get_int(e, "points", w, x.points);
            x.directions = get_int(e, "directions", w, x.directions);
            if (x.points < 1 || x.directions < 4)
                throw ConfigError("extraction needs points >= 1 and "
                                  "directions >= 4");
            if (e.contains("eps"))
                x.eps = get_numbers(e, "eps", w);
            if (e.contains("delta"))
                x.delta = get_numbers(e, "delta", w);
            if (x.eps.size() != x.delta.size())
                throw ConfigError("extraction.eps and delta differ in length");
            for (double v : x.eps)
                require_positive(v, "extraction.eps");
            for (double v : x.delta)
                require_positive(v, "extraction.delta");
            if (e.contains("x"))
                x.x = get_numbers(e, "x", w);
            if (e.contains("theta"))
                x.theta = get_numbers(e, "theta", w);
            if (e.contains("theta_prime"))
                x.theta_prime = get_numbers(e, "theta_prime", w);
        }
        if (j.contains("inversion"))
        {
            auto const& v = j.at("inversion");
            std::string w = "inversion";
            require_keys(v, w,
                         {"fd_step", "points", "pixels", "angles", "offsets",
                          "sweeps", "relaxation"});
            auto& x = c.inversion;
            x.fd_step = get_number(v, "fd_step", w, x.fd_step);
            require_positive(x.fd_step, "inversion.fd_step");
            x.points = get_int(v, "points", w, x.points);
            x.pixels = get_int(v, "pixels", w, x.pixels);
            x.angles = get_int(v, "angles", w, x.angles);
            x.offsets = get_int(v, "offsets", w, x.offsets);
            x.sweeps = get_int(v, "sweeps", w, x.sweeps);
            x.relaxation = get_number(v, "relaxation", w, x.relaxation);
            if (x.points < 1 || x.pixels < 1 || x.angles < 1 || x.offsets < 1
                || x.sweeps < 1)
                throw ConfigError("inversion counts must be positive");
            if (!(x.relaxation > 0) || x.relaxation > 1)
                throw ConfigError("inversion.relaxation must lie in (0, 1]");
        }
        if (j.contains("output_dir"))
        {
            if (!j.at("output_dir").is_string())
                throw ConfigError("output_dir must be a string");
            c.output_dir = j.at("output_dir").get<std::string>();
        }
        if (j.contains("seed"))
        {
            if (!j.at("seed").is_number_unsigned())
                throw ConfigError("seed must be a nonnegative integer");
            c.seed = j.at("seed").get<std::uint64_t>();
        }
        c.check_sample = get_int(j, "check_sample", "config", c.check_sample);
        if (c.check_sample < 1)
            throw ConfigError("check_sample must be positive");
        if (c.dimension == 2)
            validate_objects<2>(c);
        else
            validate_objects<3>(c);
    }
    catch (Json::exception const& e)
    {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    catch (ConfigError const&)
    {
        throw;
    }
    catch (Error const& e)
    {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    c.hash = fnv1a_hex(c.raw.dump());
    return c;
}

//---------------------------------------------------------------------------//
}  // namespace rte
