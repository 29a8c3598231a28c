#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bdgsol/commands.hpp"
#include "bdgsol/config.hpp"
#include "bdgsol/csv.hpp"
#include "bdgsol/direct_scattering.hpp"
#include "bdgsol/report.hpp"
#include "support.hpp"

using namespace bdgsol;
namespace fs = std::filesystem;

namespace {

// Scratch directory and a config file inside it.
struct Workspace {
    fs::path dir;
    explicit Workspace(const std::string& name) {
        dir = fs::temp_directory_path() / ("bdgsol_test_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }

    std::string write_config(const std::string& text) {
        const fs::path p = dir / "config.json";
        std::ofstream(p) << text;
        return p.string();
    }
};

const char* kKinkConfig = R"({
  "background": {"m": 1.0, "symmetry": "none", "delta_minus": [[[1, 0]]]},
  "solitons": [{"theta": 1.5707963267948966, "p_hat": [[1, 0]], "x": 0.0}],
  "grid": {"x_min": -20.0, "x_max": 20.0, "n_points": 801},
  "s_scan": {"s_min": 0.2, "s_max": 5.0, "count": 21, "guard_band": 0.001}
})";

std::string config_with(const std::string& base, const std::string& key,
                        const std::string& json_value) {
    std::string text = base;
    const auto pos = text.rfind('}');
    text.insert(pos, ",\n  \"" + key + "\": " + json_value + "\n");
    return text;
}

}  // namespace

TEST_CASE("config parsing round trip and validation") {
    const RunConfig cfg = parse_config(kKinkConfig);
    CHECK(cfg.background.m == 1.0);
    CHECK(cfg.solitons.size() == 1);
    CHECK(cfg.grid.n_points == 801);

    const RunConfig echo = parse_config(resolved_config_json(cfg));
    CHECK(echo.grid.x_min == cfg.grid.x_min);
    CHECK(echo.s_scan.count == cfg.s_scan.count);
    CHECK(echo.solitons[0].theta == cfg.solitons[0].theta);
    CHECK(echo.tolerances.gap_residual == cfg.tolerances.gap_residual);

    SUBCASE("grid and scan limits are enforced") {
        CHECK_THROWS_AS(
            parse_config(config_with(kKinkConfig, "grid",
                                     R"({"x_min": -1.0, "x_max": 1.0, "n_points": 5})")),
            Error);
        CHECK_THROWS_AS(
            parse_config(config_with(kKinkConfig, "s_scan", R"({"count": 3})")), Error);
    }
    SUBCASE("malformed documents are input errors") {
        try {
            parse_config("{ not json");
            FAIL("expected ConfigParseError");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ConfigParseError);
            CHECK(e.exit_code() == 2);
        }
    }
}

TEST_CASE("construct writes the kink profile") {
    Workspace ws("construct");
    cli::Options opt;
    opt.config_path = ws.write_config(kKinkConfig);
    opt.out_dir = (ws.dir / "out").string();
    std::ostringstream out, err;
    REQUIRE(cli::cmd_construct(opt, out, err) == 0);

    const CsvTable gap = read_csv(ws.dir / "out" / "gap_field.csv");
    REQUIRE(gap.header.size() == 3);  // x, re, im
    CHECK(gap.header[0] == "x");
    REQUIRE(gap.rows.size() == 801);
    for (const auto& row : gap.rows) {
        CHECK(std::abs(row[1] - (-std::tanh(row[0]))) <= 1e-12);
        CHECK(std::abs(row[2]) <= 1e-13);
    }

    const CsvTable bound = read_csv(ws.dir / "out" / "bound_states.csv");
    REQUIRE(bound.header.size() == 5);  // x + 2 components x re/im
    REQUIRE(bound.rows.size() == 801);
}

TEST_CASE("construct: constant background and row-count contract") {
    Workspace ws("construct_n0");
    const std::string cfg = R"({
      "background": {"m": 2.0, "symmetry": "none",
                     "delta_minus": [[[0, 1], [0, 0]], [[0, 0], [0, -1]]]},
      "solitons": [],
      "grid": {"x_min": -5.0, "x_max": 5.0, "n_points": 101}
    })";
    cli::Options opt;
    opt.config_path = ws.write_config(cfg);
    opt.out_dir = (ws.dir / "out").string();
    std::ostringstream out, err;
    REQUIRE(cli::cmd_construct(opt, out, err) == 0);
    const CsvTable gap = read_csv(ws.dir / "out" / "gap_field.csv");
    REQUIRE(gap.rows.size() == 101);
    for (const auto& row : gap.rows) {
        CHECK(row[2] == gap.rows[0][2]);  // constant column
        CHECK(row[1] == 0.0);
    }
}

TEST_CASE("verify: canonical kink passes, filling override fails only the gap section") {
    Workspace ws("verify");
    cli::Options opt;
    opt.config_path = ws.write_config(kKinkConfig);
    opt.out_dir = (ws.dir / "out").string();
    std::ostringstream out, err;
    CHECK(cli::cmd_verify(opt, out, err) == 0);
    CHECK(out.str().find("overall: PASS") != std::string::npos);

    std::ostringstream out2, err2;
    cli::Options opt2 = opt;
    opt2.config_path = ws.write_config(config_with(kKinkConfig, "nu_override", "[0.7]"));
    CHECK(cli::cmd_verify(opt2, out2, err2) == 1);
    const std::string text = out2.str();
    CHECK(text.find("overall: FAIL") != std::string::npos);
    CHECK(text.find("[FAIL] gap_residual") != std::string::npos);
    CHECK(text.find("[FAIL] orthonormality") == std::string::npos);
    CHECK(text.find("[FAIL] reflection_scan") == std::string::npos);
}

TEST_CASE("verify: inadequate truncation is a numeric error") {
    Workspace ws("verify_trunc");
    cli::Options opt;
    opt.config_path = ws.write_config(config_with(
        kKinkConfig, "grid", R"({"x_min": -3.0, "x_max": 3.0, "n_points": 101})"));
    std::ostringstream out, err;
    CHECK(cli::cmd_verify(opt, out, err) == 3);
    CHECK(err.str().find("TruncationInadequate") != std::string::npos);
}

TEST_CASE("scatter round-trips through the sampled CSV") {
    Workspace ws("roundtrip");
    const std::string cfg = config_with(
        kKinkConfig, "grid", R"({"x_min": -22.0, "x_max": 22.0, "n_points": 2201})");
    cli::Options opt;
    opt.config_path = ws.write_config(cfg);
    opt.out_dir = (ws.dir / "analytic").string();
    std::ostringstream out, err;
    REQUIRE(cli::cmd_construct(opt, out, err) == 0);
    REQUIRE(cli::cmd_scatter(opt, out, err) == 0);
    const CsvTable analytic = read_csv(fs::path(opt.out_dir) / "reflection_table.csv");

    cli::Options opt_csv = opt;
    opt_csv.input_csv = (fs::path(opt.out_dir) / "gap_field.csv").string();
    opt_csv.out_dir = (ws.dir / "sampled").string();
    REQUIRE(cli::cmd_scatter(opt_csv, out, err) == 0);
    const CsvTable sampled = read_csv(ws.dir / "sampled" / "reflection_table.csv");

    auto column = [](const CsvTable& t, const std::string& name) {
        for (size_t c = 0; c < t.header.size(); ++c)
            if (t.header[c] == name) return c;
        throw std::runtime_error("missing column " + name);
    };
    const size_t r_raw = column(sampled, "r_norm_raw");
    const size_t floor_col = column(sampled, "floor");
    double max_sampled = 0.0, floor_sampled = 0.0, max_analytic = 0.0;
    for (const auto& row : sampled.rows) {
        max_sampled = std::max(max_sampled, row[r_raw]);
        floor_sampled = std::max(floor_sampled, row[floor_col]);
    }
    for (const auto& row : analytic.rows)
        max_analytic = std::max(max_analytic, row[column(analytic, "r_norm_raw")]);

    // same verdict: nothing resolvable above the sampled slab's own floor
    CHECK(floor_sampled > 0.0);
    CHECK(max_sampled <= max_analytic + 2.0 * floor_sampled);
    CHECK(max_sampled <= 1e-6);
}

TEST_CASE("evolve writes snapshots and a manifest") {
    Workspace ws("evolve");
    cli::Options opt;
    opt.config_path = ws.write_config(config_with(kKinkConfig, "times", "[0.0, 1.5]"));
    opt.out_dir = (ws.dir / "out").string();
    std::ostringstream out, err;
    REQUIRE(cli::cmd_evolve(opt, out, err) == 0);
    CHECK(fs::exists(ws.dir / "out" / "snapshot_000.csv"));
    CHECK(fs::exists(ws.dir / "out" / "snapshot_001.csv"));
    std::ifstream manifest(ws.dir / "out" / "manifest.csv");
    std::string line;
    int lines = 0;
    while (std::getline(manifest, line)) ++lines;
    CHECK(lines == 3);  // header + 2 rows

    SUBCASE("missing times is an input error") {
        cli::Options bare = opt;
        bare.config_path = ws.write_config(kKinkConfig);
        std::ostringstream o2, e2;
        CHECK(cli::cmd_evolve(bare, o2, e2) == 2);
    }
}

TEST_CASE("validate and asymptote subcommands run") {
    Workspace ws("validate");
    cli::Options opt;
    opt.config_path = ws.write_config(kKinkConfig);
    std::ostringstream out, err;
    CHECK(cli::cmd_validate(opt, out, err) == 0);
    CHECK(out.str().find("n = 1") != std::string::npos);

    std::ostringstream out2, err2;
    CHECK(cli::cmd_asymptote(opt, out2, err2) == 0);
    CHECK(out2.str().find("soliton 0") != std::string::npos);

    SUBCASE("missing config file") {
        cli::Options bad = opt;
        bad.config_path = (ws.dir / "nope.json").string();
        std::ostringstream o3, e3;
        CHECK(cli::cmd_validate(bad, o3, e3) == 2);
    }
    SUBCASE("invalid spec: bad angle") {
        cli::Options bad = opt;
        bad.config_path = ws.write_config(R"({
          "background": {"m": 1.0, "delta_minus": [[[1, 0]]]},
          "solitons": [{"theta": 9.0, "p_hat": [[1, 0]], "x": 0.0}]
        })");
        std::ostringstream o3, e3;
        CHECK(cli::cmd_validate(bad, o3, e3) == 2);
        CHECK(e3.str().find("BadAngle") != std::string::npos);
    }
}

TEST_CASE("report embeds the resolved config") {
    const RunConfig cfg = parse_config(kKinkConfig);
    const ConsistencyReport report = run_verification(cfg, 1.0, 2);
    CHECK(report.pass);
    // the echoed config alone must reproduce the run
    const auto echo_start = report.render().find("## resolved config");
    REQUIRE(echo_start != std::string::npos);
    const std::string echo = report.render().substr(echo_start + 19);
    const RunConfig replay = parse_config(echo);
    CHECK(replay.grid.n_points == cfg.grid.n_points);
    CHECK(replay.solitons.size() == cfg.solitons.size());
}
