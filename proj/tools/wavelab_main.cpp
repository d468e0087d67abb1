// wavelab: batch front end for the radial quasilinear wave lab.
//
//   wavelab <subcommand> --config <path> [--out <dir>] [--threads N] [--deterministic]
//
// Subcommands: solve, iterate, verify-identity, check-inequalities,
// verify-estimate, norms, lifespan, continuity, continue.
//
// Exit status: 0 success, 1 run-level failure (blow-up is not a failure for
// lifespan), 2 configuration error.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wavelab/common.hpp"
#include "wavelab/config.hpp"
#include "wavelab/parallel.hpp"

namespace {

const char* kCommands[] = {"solve",          "iterate",    "verify-identity",
                           "check-inequalities", "verify-estimate", "norms",
                           "lifespan",       "continuity", "continue"};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw wavelab::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"wavelab: radial quasilinear wave equation laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = 0;
    bool deterministic = false;

    for (const char* name : kCommands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "run configuration (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory override");
        sub->add_option("--threads", threads, "worker threads (enables parallel reductions)");
        sub->add_flag("--deterministic", deterministic,
                      "fixed-order serial reductions (bitwise reproducible outputs)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    // Elementwise maps are reproducible at any thread count; reductions default
    // to fixed serial order. Passing --threads without --deterministic opts in
    // to parallel reductions (1e-12 reassociation tolerance).
    if (threads > 0) {
        wavelab::par::set_threads(threads);
        wavelab::par::set_deterministic(deterministic);
    } else {
        wavelab::par::set_deterministic(true);
    }

    try {
        wavelab::RunConfig cfg = wavelab::parse_config(read_file(config_path));
        if (!cfg.command.empty() && cfg.command != command)
            throw wavelab::ConfigError("config command '" + cfg.command +
                                       "' does not match subcommand '" + command + "'");
        cfg.command = command;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        return wavelab::dispatch(cfg);
    } catch (const wavelab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
