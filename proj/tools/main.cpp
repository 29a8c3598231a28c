#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bdgsol/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Multi-soliton constructor and verifier for matrix spectral gap systems"};
    app.require_subcommand(1);

    bdgsol::cli::Options opt;
    if (const char* env = std::getenv("BDGSOL_THREADS")) opt.threads = std::atoi(env);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config_path, "path to the JSON run config")->required();
        cmd->add_option("--out", opt.out_dir, "output directory");
        cmd->add_option("--tol-scale", opt.tol_scale, "scale factor on pass/fail tolerances");
        cmd->add_option("--threads", opt.threads, "worker threads for scans and sweeps");
        cmd->add_option("--guard-band", opt.guard_band, "override of the band-edge guard");
    };

    CLI::App* validate = app.add_subcommand("validate", "check the scattering data");
    CLI::App* construct = app.add_subcommand("construct", "write gap-field and bound-state CSVs");
    CLI::App* verify = app.add_subcommand("verify", "run the consistency report");
    CLI::App* scatter = app.add_subcommand("scatter", "reflection/transmission table");
    CLI::App* evolve = app.add_subcommand("evolve", "time snapshots under the NLS flow");
    CLI::App* asymptote = app.add_subcommand("asymptote", "print the asymptotic decomposition");
    for (CLI::App* cmd : {validate, construct, verify, scatter, evolve, asymptote})
        add_common(cmd);
    scatter->add_option("--input-csv", opt.input_csv, "sampled gap-field CSV instead of the analytic slab");
    evolve->add_flag("--scan", opt.scan_snapshots, "run the reflection gate on every snapshot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    if (validate->parsed()) return bdgsol::cli::cmd_validate(opt, std::cout, std::cerr);
    if (construct->parsed()) return bdgsol::cli::cmd_construct(opt, std::cout, std::cerr);
    if (verify->parsed()) return bdgsol::cli::cmd_verify(opt, std::cout, std::cerr);
    if (scatter->parsed()) return bdgsol::cli::cmd_scatter(opt, std::cout, std::cerr);
    if (evolve->parsed()) return bdgsol::cli::cmd_evolve(opt, std::cout, std::cerr);
    if (asymptote->parsed()) return bdgsol::cli::cmd_asymptote(opt, std::cout, std::cerr);
    return 2;
}
