// Library-level entry points behind the CLI subcommands.  Each returns the
// process exit code: 0 success/PASS, 1 verification FAIL, 2 input error,
// 3 numeric error.

#pragma once

#include <iosfwd>
#include <string>

namespace bdgsol::cli {

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    double tol_scale = 1.0;
    int threads = 1;
    double guard_band = -1.0;  // < 0: use the config value
    std::string input_csv;     // cmd_scatter: sampled slab instead of analytic
    bool scan_snapshots = false;
};

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_construct(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_scatter(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_evolve(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_asymptote(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace bdgsol::cli
