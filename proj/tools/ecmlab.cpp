// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Runs one verification command against a JSON
// configuration and writes the report to stdout or a file. Exit code 0:
// all checks passed; 1: at least one check failed; 2: usage, config,
// alignment, or window error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ecm/commands.hpp"
#include "ecm/version.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::string csv_dir;
    unsigned threads = 0;  // 0: config/env decide
};

int run(const std::string& command, const Options& opt) {
    nlohmann::json config;
    {
        std::ifstream in(opt.config_path);
        if (!in) {
            std::cerr << "ecmlab: cannot open config file " << opt.config_path << "\n";
            return 2;
        }
        try {
            in >> config;
        } catch (const std::exception& e) {
            std::cerr << "ecmlab: config parse error: " << e.what() << "\n";
            return 2;
        }
    }
    const ecm::cli::CommandResult result =
        ecm::cli::run_command(command, config, opt.csv_dir, opt.threads);
    const std::string text = result.report.dump(2) + "\n";
    if (opt.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.out_path);
        if (!out) {
            std::cerr << "ecmlab: cannot open report output " << opt.out_path << "\n";
            return 2;
        }
        out << text;
    }
    if (result.report.contains("error"))
        std::cerr << "ecmlab: " << result.report["error"].get<std::string>() << "\n";
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification laboratory for the elliptic many-body quantum curve"};
    app.set_version_flag("--version", std::string(ecm::version));
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::string> commands = {"involution-check", "curve-scan", "qcurve-solve",
                                               "toda-verify", "observables-eval"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "JSON configuration file")->required();
        sub->add_option("--out", opt.out_path, "write the JSON report here (default stdout)");
        sub->add_option("--csv", opt.csv_dir, "directory for CSV tables");
        sub->add_option("--threads", opt.threads, "worker threads (overrides config and env)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return run(app.get_subcommands().front()->get_name(), opt);
}
