//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rte/cli/commands.hpp
//! \brief Batch commands: check, forward, gauge, extract, reconstruct
//---------------------------------------------------------------------------//
#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "../core/sampling.hpp"
#include "../extraction/mollified.hpp"
#include "../inversion/recover.hpp"
#include "../inversion/xray.hpp"
#include "../io/config.hpp"
#include "../io/csv.hpp"

namespace rte
{
//---------------------------------------------------------------------------//
enum ExitCode : int
{
    exit_success = 0,
    exit_failure = 1,
    exit_usage = 2
};

struct CommandContext
{
    RunConfig config;
    std::string out_dir;
    int threads{1};
    bool verbose{false};
    std::ostream* out{&std::cout};
    std::ostream* err{&std::cerr};
};

namespace detail
{
//---------------------------------------------------------------------------//
inline std::filesystem::path output_path(CommandContext const& ctx,
                                         std::string const& name)
{
    std::filesystem::path dir(ctx.out_dir);
    std::filesystem::create_directories(dir);
    return dir / name;
}

inline void write_json(CommandContext const& ctx, std::string const& name,
                       Json report)
{
    report["config_hash"] = ctx.config.hash;
    std::ofstream f(output_path(ctx, name));
    f << report.dump(2) << '\n';
    *ctx.out << report.dump(2) << '\n';
}

template<class F>
void write_csv(CommandContext const& ctx, std::string const& name, F&& fn)
{
    std::ofstream f(output_path(ctx, name));
    fn(f);
}

template<int D>
Json vec_json(Vec<D> const& v)
{
    Json a = Json::array();
    for (int i = 0; i < D; ++i)
        a.push_back(v[i]);
    return a;
}

template<int D>
SolverConfig solver_config(CommandContext const& ctx)
{
    SolverConfig c = ctx.config.solver;
    c.threads = ctx.threads;
    return c;
}

//! Interior sample points with a margin from the boundary
template<int D>
std::vector<Vec<D>> interior_points(ConvexDomain<D> const& dom, int count,
                                    std::uint64_t seed, double scale = 0.7)
{
    Halton h(seed);
    std::vector<Vec<D>> pts;
    for (int i = 0; i < count; ++i)
    {
        Vec<D> u = scale
                   * uniform_ball_point<D>(h(i, 0), h(i, 1), h(i, 2));
        pts.push_back(dom.from_unit(u));
    }
    return pts;
}

template<int D>
struct Subcriticality
{
    CheckReport<D> admissible;
    CheckReport<D> cs;
    CheckReport<D> dl;
};

template<int D>
Subcriticality<D> run_checks(MediumPair<D> const& pair, RunConfig const& c)
{
    return {check_admissible(pair, c.check_sample, c.seed),
            check_subcritical_cs(pair, c.check_sample, c.seed),
            check_subcritical_dl(pair, c.check_sample, c.seed)};
}

//---------------------------------------------------------------------------//
template<int D>
int check_impl(CommandContext const& ctx)
{
    auto const& c = ctx.config;
    auto dom = parse_domain<D>(c.domain);
    auto pair = parse_medium<D>(c.medium, dom);
    auto s = run_checks(pair, c);
    auto sym = check_symmetries(pair, c.check_sample, c.seed);
    Json r;
    r["command"] = "check";
    r["admissible"] = {{"satisfied", s.admissible.satisfied},
                       {"sup_a_plus_sigma", s.admissible.worst_value}};
    r["subcritical_cs"] = {{"satisfied", s.cs.satisfied},
                           {"sup_tau_sigma", s.cs.worst_value}};
    r["subcritical_dl"] = {{"satisfied", s.dl.satisfied},
                           {"min_a_minus_sigma", s.dl.worst_value}};
    r["symmetries"] = {{"sym_atten", sym.sym_atten},
                       {"sym_scat", sym.sym_scat},
                       {"k_positive", sym.k_positive}};
    bool ok = s.admissible.satisfied && (s.cs.satisfied || s.dl.satisfied);
    r["verdict"] = ok ? "admissible and subcritical" : "rejected";
    write_json(ctx, "check.json", r);
    return ok ? exit_success : exit_failure;
}

template<int D>
int forward_impl(CommandContext const& ctx)
{
    auto const& c = ctx.config;
    auto dom = parse_domain<D>(c.domain);
    auto pair = parse_medium<D>(c.medium, dom);
    auto f = parse_boundary_flux<D>(c.boundary_flux);
    auto s = run_checks(pair, c);
    Json r;
    r["command"] = "forward";
    if (!s.cs.satisfied && !s.dl.satisfied)
    {
        *ctx.err << "warning: medium satisfies neither subcriticality "
                    "condition (sup tau sigma = "
                 << s.cs.worst_value
                 << ", min a - sigma = " << s.dl.worst_value << ")\n";
        r["warning"] = "not subcritical";
    }
    TransportSolver<D> solver(pair, solver_config<D>(ctx));
    try
    {
        auto sol = solver.solve(f);
        auto dec = evaluate_exit(solver, sol, f, exit_pairs(solver));
        write_csv(ctx, "forward_decomposition.csv", [&](std::ostream& os) {
            write_decomposition_csv(os, dec, solver.quadrature(), c.hash);
        });
        r["converged"] = true;
        r["iterations"] = dec.iterations;
        r["residual_history"] = dec.residual_history;
        r["norms"] = {{"ballistic", dec.component(dec.ballistic).l1_norm()},
                      {"single", dec.component(dec.single).l1_norm()},
                      {"remainder", dec.component(dec.remainder).l1_norm()},
                      {"total", dec.total_flux().l1_norm()}};
        write_json(ctx, "forward.json", r);
        return exit_success;
    }
    catch (ConvergenceError const& e)
    {
        r["converged"] = false;
        r["error"] = e.what();
        r["residual_history"] = e.residual_history();
        write_json(ctx, "forward.json", r);
        *ctx.err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

template<int D>
int gauge_impl(CommandContext const& ctx)
{
    auto const& c = ctx.config;
    auto dom = parse_domain<D>(c.domain);
    auto pair = parse_medium<D>(c.medium, dom);
    MediumPair<D> tilde = pair;
    bool identity = false;
    if (c.medium_tilde)
        tilde = parse_medium<D>(*c.medium_tilde, dom);
    else if (c.gauge)
    {
        auto g = parse_gauge<D>(*c.gauge, dom);
        identity = g.is_identity();
        tilde = apply_gauge(pair, g);
    }
    else
        throw ConfigError("gauge command needs 'gauge' or 'medium_tilde'");

    Json r;
    r["command"] = "gauge";
    auto verdict = verify_gauge_class(pair, tilde);
    r["equivalent"] = verdict.report.equivalent;
    r["verdict"] = verdict.report.message;
    r["worst_line_integral"] = verdict.report.worst_line_integral;
    r["max_boundary_violation"] = verdict.report.max_boundary_violation;
    r["max_k_ratio_violation"] = verdict.report.max_k_ratio_violation;

    auto f = parse_boundary_flux<D>(c.boundary_flux);
    auto cfg = solver_config<D>(ctx);
    auto d0 = decompose_albedo(pair, f, cfg);
    auto d1 = decompose_albedo(tilde, f, cfg);
    double diff = d1.total_flux().relative_difference(d0.total_flux());
    bool identical = d0.total == d1.total;
    r["relative_l1_discrepancy"] = diff;
    r["bitwise_identical"] = identical;
    if (identity)
        r["identity_gauge"] = true;
    write_csv(ctx, "gauge_original.csv", [&](std::ostream& os) {
        write_decomposition_csv(os, d0,
                                make_sphere_quadrature<D>(cfg.angular_order),
                                c.hash);
    });
    write_csv(ctx, "gauge_transformed.csv", [&](std::ostream& os) {
        write_decomposition_csv(os, d1,
                                make_sphere_quadrature<D>(cfg.angular_order),
                                c.hash);
    });
    write_json(ctx, "gauge.json", r);
    return verdict.report.equivalent ? exit_success : exit_failure;
}

template<int D>
Json ladder_json(std::vector<LadderRow> const& rows)
{
    Json a = Json::array();
    for (auto const& row : rows)
        a.push_back({{"eps", row.eps},
                     {"delta", row.delta},
                     {"value", row.value},
                     {"reference", row.reference},
                     {"abs_error", row.abs_error}});
    return a;
}

template<int D>
std::vector<ExtractionRecord<D>> exact_records(CommandContext const& ctx,
                                               MediumPair<D> const& pair)
{
    auto const& x = ctx.config.extraction;
    auto pts = interior_points<D>(pair.domain(), x.points, ctx.config.seed);
    auto dirs = make_sphere_quadrature<D>(x.directions).nodes();
    return extract_exact(pair, pts, dirs, x.ray_step, ctx.threads);
}

template<int D>
Vec<D> config_vec(std::vector<double> const& v, Vec<D> fallback)
{
    if (v.empty())
        return fallback;
    Vec<D> r;
    for (int i = 0; i < D; ++i)
        r[i] = v[i];
    return r;
}

template<int D>
int extract_impl(CommandContext const& ctx)
{
    auto const& c = ctx.config;
    auto dom = parse_domain<D>(c.domain);
    auto pair = parse_medium<D>(c.medium, dom);
    auto records = exact_records(ctx, pair);
    write_csv(ctx, "extraction.csv", [&](std::ostream& os) {
        write_extraction_csv(os, records, c.hash);
    });
    Json r;
    r["command"] = "extract";
    r["records"] = records.size();
    if constexpr (D == 3)
    {
        auto const& x = c.extraction;
        auto kernel = AlbedoKernel<D>::from_forward_solve(
            pair, solver_config<D>(ctx), x.ray_step);
        Vec<D> p = config_vec<D>(x.x, dom.center());
        Direction<D> th(config_vec<D>(x.theta, Vec<D>{{1, 0.3, 0.2}}));
        Direction<D> tp(config_vec<D>(x.theta_prime, Vec<D>{{-0.2, 1, 0.4}}));
        auto jl = j_eps_ladder(kernel, p, th, x.eps);
        auto il = i_eps_delta_ladder(kernel, p, tp, th, x.eps, x.delta);
        write_csv(ctx, "ladder_j.csv", [&](std::ostream& os) {
            write_ladder_csv(os, jl, c.hash, "J_eps ladder");
        });
        write_csv(ctx, "ladder_i.csv", [&](std::ostream& os) {
            write_ladder_csv(os, il, c.hash, "I_eps_delta ladder");
        });
        r["j_ladder"] = ladder_json<D>(jl);
        r["i_ladder"] = ladder_json<D>(il);
    }
    else
    {
        r["note"] = "mollified extraction is three-dimensional only";
    }
    write_json(ctx, "extract.json", r);
    return exit_success;
}

template<int D>
Json report_json(ReconstructionReport<D> const& rep)
{
    return {{"quantity", rep.quantity},
            {"samples", rep.recovered.size()},
            {"sup_error", rep.sup_error},
            {"l1_error", rep.l1_error},
            {"relative_l2_error", rep.relative_l2_error},
            {"residual_history", rep.residual_history}};
}

template<int D>
int reconstruct_impl(CommandContext const& ctx)
{
    auto const& c = ctx.config;
    auto dom = parse_domain<D>(c.domain);
    auto pair = parse_medium<D>(c.medium, dom);
    auto sym = check_symmetries(pair, c.check_sample, c.seed);
    Json r;
    r["command"] = "reconstruct";
    if (!sym.sym_scat || !sym.k_positive)
    {
        std::string failed = !sym.sym_scat ? "symmetric scattering"
                                           : "positive scattering kernel";
        r["error"] = "hypothesis violated: " + failed;
        write_json(ctx, "reconstruct.json", r);
        *ctx.err << "error: hypothesis violated: " << failed << '\n';
        return exit_failure;
    }

    auto records = exact_records(ctx, pair);
    auto krep = recover_k_symmetric(records);
    krep.set_truth(k_truth(krep, pair.scattering()));
    krep.config = c.hash;
    write_csv(ctx, "reconstruct_k.csv", [&](std::ostream& os) {
        write_report_csv(os, krep, c.hash);
    });
    r["k"] = report_json(krep);

    ExactExtraction<D> data(pair, c.extraction.ray_step);
    ReconstructionReport<D> arep;
    arep.quantity = sym.sym_atten ? "a" : "a_even_part";
    auto pts = interior_points<D>(dom, c.inversion.points, c.seed + 1, 0.6);
    auto dirs = make_sphere_quadrature<D>(c.extraction.directions).nodes();
    std::vector<double> truth;
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        auto const& th = dirs[i % dirs.size()];
        arep.points.push_back(pts[i]);
        arep.recovered.push_back(
            recover_a_line_symmetric(data, pts[i], th, c.inversion.fd_step));
        auto const& a = pair.absorption();
        truth.push_back(0.5 * (a(pts[i], th.vec()) + a(pts[i], -th.vec())));
    }
    arep.set_truth(truth);
    write_csv(ctx, "reconstruct_a.csv", [&](std::ostream& os) {
        write_report_csv(os, arep, c.hash);
    });
    r["a"] = report_json(arep);

    if constexpr (D == 2)
    {
        if (pair.absorption().isotropic())
        {
            auto const& a = pair.absorption();
            auto fn = [&](Vec<2> const& y) { return a(y, Vec<2>::axis(0)); };
            auto ld = make_parallel_beam_data(fn, dom, c.inversion.angles,
                                              c.inversion.offsets,
                                              c.extraction.ray_step);
            PixelGrid grid(dom, c.inversion.pixels);
            auto xrep = kaczmarz_xray_invert(ld, grid, c.inversion.sweeps,
                                             c.inversion.relaxation);
            std::vector<double> t;
            for (auto const& p : xrep.points)
                t.push_back(fn(p));
            xrep.set_truth(t);
            write_csv(ctx, "xray_data.csv", [&](std::ostream& os) {
                write_line_data_csv(os, ld, c.hash);
            });
            write_csv(ctx, "reconstruct_xray.csv", [&](std::ostream& os) {
                write_report_csv(os, xrep, c.hash);
            });
            r["xray"] = report_json(xrep);
        }
    }
    write_json(ctx, "reconstruct.json", r);
    return exit_success;
}


template<class F2, class F3>
int run_guarded(CommandContext const& ctx, F2&& f2, F3&& f3)
{
    try
    {
        return ctx.config.dimension == 2 ? f2(ctx) : f3(ctx);
    }
    catch (ConfigError const& e)
    {
        *ctx.err << "configuration error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (ConvergenceError const& e)
    {
        *ctx.err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    catch (Error const& e)
    {
        *ctx.err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}
}  // namespace detail

inline int cmd_check(CommandContext const& ctx)
{
    return detail::run_guarded(ctx, detail::check_impl<2>,
                               detail::check_impl<3>);
}
inline int cmd_forward(CommandContext const& ctx)
{
    return detail::run_guarded(ctx, detail::forward_impl<2>,
                               detail::forward_impl<3>);
}
inline int cmd_gauge(CommandContext const& ctx)
{
    return detail::run_guarded(ctx, detail::gauge_impl<2>,
                               detail::gauge_impl<3>);
}
inline int cmd_extract(CommandContext const& ctx)
{
    return detail::run_guarded(ctx, detail::extract_impl<2>,
                               detail::extract_impl<3>);
}
inline int cmd_reconstruct(CommandContext const& ctx)
{
    return detail::run_guarded(ctx, detail::reconstruct_impl<2>,
                               detail::reconstruct_impl<3>);
}

/*!
 * Parse the configuration file and run the named command. Returns the
 * process exit code; parse failures give exit_usage.
 */
inline int run_command(std::string const& command,
                       std::string const& config_path,
                       std::string const& out_dir, int threads, bool verbose,
                       std::ostream& out = std::cout,
                       std::ostream& err = std::cerr)
{
    CommandContext ctx;
    ctx.threads = threads;
    ctx.verbose = verbose;
    ctx.out = &out;
    ctx.err = &err;
    try
    {
        std::ifstream f(config_path);
        if (!f)
            throw ConfigError("cannot read config file '" + config_path + "'");
        std::string text((std::istreambuf_iterator<char>(f)),
                         std::istreambuf_iterator<char>());
        ctx.config = parse_run_config(text);
    }
    catch (ConfigError const& e)
    {
        err << "configuration error: " << e.what() << '\n';
        return exit_usage;
    }
    if (threads < 1)
    {
        err << "configuration error: --threads must be at least 1\n";
        return exit_usage;
    }
    ctx.out_dir = out_dir.empty() ? ctx.config.output_dir : out_dir;
    if (command == "check")
        return cmd_check(ctx);
    if (command == "forward")
        return cmd_forward(ctx);
    if (command == "gauge")
        return cmd_gauge(ctx);
    if (command == "extract")
        return cmd_extract(ctx);
    if (command == "reconstruct")
        return cmd_reconstruct(ctx);
    err << "unknown command '" << command << "'\n";
    return exit_usage;
}

//---------------------------------------------------------------------------//
}  // namespace rte
