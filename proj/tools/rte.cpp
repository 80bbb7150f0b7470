//---------------------------------*-C++-*-----------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/rte.cpp
//! \brief Command-line front end
//---------------------------------------------------------------------------//
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "rte/cli/commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Forward and inverse transport experiments"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    int threads = 1;
    bool verbose = false;
    app.add_option("--config", config, "JSON run configuration")
        ->required();
    app.add_option("--out", out, "output directory (overrides output_dir)");
    app.add_option("--threads", threads, "worker threads")
        ->check(CLI::PositiveNumber);
    app.add_flag("--verbose", verbose, "verbose diagnostics");

    // options may follow the subcommand
    app.fallthrough();
    std::string command;
    for (char const* name :
         {"check", "forward", "gauge", "extract", "reconstruct"})
    {
        auto* sub = app.add_subcommand(name);
        sub->callback([&command, name] { command = name; });
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : rte::exit_usage;
    }
    return rte::run_command(command, config, out, threads, verbose);
}
