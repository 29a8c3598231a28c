#include "bdgsol/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "bdgsol/asymptotics.hpp"
#include "bdgsol/config.hpp"
#include "bdgsol/csv.hpp"
#include "bdgsol/direct_scattering.hpp"
#include "bdgsol/nls_evolution.hpp"
#include "bdgsol/report.hpp"
#include "bdgsol/soliton_construct.hpp"

namespace bdgsol::cli {

namespace fs = std::filesystem;

namespace {

int run_guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error[" << e.code_name() << "]: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::invalid_argument& e) {
        err << "error[InvalidArgument]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

RunConfig load(const Options& opt) {
    RunConfig cfg = load_config(opt.config_path);
    if (opt.guard_band >= 0.0) cfg.s_scan.guard_band = opt.guard_band;
    return cfg;
}

fs::path ensure_out_dir(const Options& opt) {
    fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    return dir;
}

void append_complex_matrix_header(std::vector<std::string>& header, const std::string& stem,
                                  int rows, int cols) {
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const std::string tag = stem + std::to_string(i) + std::to_string(j);
            header.push_back("re_" + tag);
            header.push_back("im_" + tag);
        }
}

CsvTable sample_gap_table(const ValidatedSpec& spec, const Grid& grid) {
    const int d = spec.d();
    CsvTable table;
    table.header.push_back("x");
    append_complex_matrix_header(table.header, "delta_", d, d);
    table.rows.reserve(grid.n_points);
    for (int g = 0; g < grid.n_points; ++g) {
        const double x = grid.point(g);
        const Mat delta = gap_function(spec, x);
        std::vector<double> row;
        row.reserve(1 + 2 * d * d);
        row.push_back(x);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                row.push_back(delta(i, j).real());
                row.push_back(delta(i, j).imag());
            }
        table.rows.push_back(std::move(row));
    }
    return table;
}

PotentialSlab slab_from_csv(const RunConfig& cfg, const fs::path& csv_path) {
    const CsvTable table = read_csv(csv_path);
    const int d = cfg.background.dim();
    if (static_cast<int>(table.header.size()) != 1 + 2 * d * d)
        throw Error(ErrorCode::ConfigParseError,
                    "sampled slab must have 1 + 2 d^2 columns matching the background");
    std::vector<double> xs;
    std::vector<Mat> deltas;
    xs.reserve(table.rows.size());
    deltas.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        xs.push_back(row[0]);
        Mat delta(d, d);
        int c = 1;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                delta(i, j) = cd(row[c], row[c + 1]);
                c += 2;
            }
        deltas.push_back(std::move(delta));
    }
    const ValidatedSpec spec = build_spec(cfg);
    const Mat delta_plus = spec.n() > 0 ? decompose(spec).backgrounds.back()
                                        : cfg.background.delta_minus;
    return slab_from_samples(xs, deltas, cfg.background.m, cfg.background.delta_minus,
                             delta_plus, cfg.background.symmetry);
}

CsvTable scan_table(const ReflectionScan& scan) {
    CsvTable table;
    table.header = {"s",           "r_norm",          "r_norm_raw",     "unitarity_residual",
                    "det_residual", "sigma3_residual", "symmetry_residual", "floor"};
    for (const ScatteringSample& sm : scan.samples)
        table.rows.push_back({sm.s, sm.r_norm, sm.r_norm_raw, sm.unitarity_residual,
                              sm.det_residual, sm.sigma3_residual, sm.symmetry_residual,
                              sm.floor});
    return table;
}

}  // namespace

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const RunConfig cfg = load(opt);
        const ValidatedSpec spec = build_spec(cfg);
        out << "valid spec: d = " << spec.d() << ", n = " << spec.n() << ", m = " << spec.m()
            << ", symmetry = " << to_string(spec.background().symmetry) << "\n";
        for (int j = 0; j < spec.n(); ++j) {
            const DerivedSoliton ds = spec.derived(j);
            out << "  soliton " << j << ": theta = " << spec.theta(j)
                << ", kappa = " << ds.kappa << ", epsilon = " << ds.epsilon
                << ", x = " << spec.x(j) << "\n";
        }
        return 0;
    });
}

int cmd_construct(const Options& opt, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const RunConfig cfg = load(opt);
        const ValidatedSpec spec = build_spec(cfg);
        const fs::path dir = ensure_out_dir(opt);

        const CsvTable gap = sample_gap_table(spec, cfg.grid);
        write_csv(dir / "gap_field.csv", gap);

        const int d = spec.d();
        CsvTable bound;
        bound.header.push_back("x");
        for (int j = 0; j < spec.n(); ++j)
            append_complex_matrix_header(bound.header, "h" + std::to_string(j) + "_", 2 * d, 1);
        for (int g = 0; g < cfg.grid.n_points; ++g) {
            const double x = cfg.grid.point(g);
            const Mat h = bound_states(spec, x);
            std::vector<double> row;
            row.push_back(x);
            for (int j = 0; j < spec.n(); ++j)
                for (int i = 0; i < 2 * d; ++i) {
                    row.push_back(h(i, j).real());
                    row.push_back(h(i, j).imag());
                }
            bound.rows.push_back(std::move(row));
        }
        write_csv(dir / "bound_states.csv", bound);

        out << "wrote " << (dir / "gap_field.csv").string() << " and "
            << (dir / "bound_states.csv").string() << " (" << cfg.grid.n_points << " rows)\n";
        return 0;
    });
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const RunConfig cfg = load(opt);
        const ConsistencyReport report = run_verification(cfg, opt.tol_scale, opt.threads);
        const std::string text = report.render();
        out << text;
        const fs::path dir = ensure_out_dir(opt);
        std::ofstream file(dir / "report.txt");
        file << text;
        return report.pass ? 0 : 1;
    });
}

int cmd_scatter(const Options& opt, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const RunConfig cfg = load(opt);
        PotentialSlab slab;
        if (!opt.input_csv.empty()) {
            slab = slab_from_csv(cfg, opt.input_csv);
        } else {
            const ValidatedSpec spec = build_spec(cfg);
            slab = make_slab(spec, cfg.grid.x_min, cfg.grid.x_max);
        }
        ScatterOptions sopt;
        sopt.guard_band = cfg.s_scan.guard_band;
        const auto grid =
            make_s_grid(cfg.s_scan.s_min, cfg.s_scan.s_max, cfg.s_scan.count, sopt.guard_band);
        const ReflectionScan scan = reflection_scan(slab, grid, sopt, opt.threads);

        const fs::path dir = ensure_out_dir(opt);
        write_csv(dir / "reflection_table.csv", scan_table(scan));
        out << "max ||R|| = " << scan.max_r;
        if (scan.max_r_raw < scan.floor) out << " (<= truncation floor " << scan.floor << ")";
        out << " over " << grid.size() << " samples; wrote "
            << (dir / "reflection_table.csv").string() << "\n";
        return 0;
    });
}

int cmd_evolve(const Options& opt, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const RunConfig cfg = load(opt);
        if (cfg.times.empty())
            throw Error(ErrorCode::ConfigParseError, "evolve requires a nonempty times list");
        const ValidatedSpec spec = build_spec(cfg);
        const fs::path dir = ensure_out_dir(opt);

        std::ofstream manifest(dir / "manifest.csv");
        manifest << "t,filename,max_r\n";
        for (size_t i = 0; i < cfg.times.size(); ++i) {
            const double t = cfg.times[i];
            const ValidatedSpec at_t = evolve(spec, t);
            std::ostringstream name;
            name << "snapshot_" << std::setfill('0') << std::setw(3) << i << ".csv";
            write_csv(dir / name.str(), sample_gap_table(at_t, cfg.grid));

            double max_r = -1.0;
            if (opt.scan_snapshots) {
                ScatterOptions sopt;
                sopt.guard_band = cfg.s_scan.guard_band;
                const auto grid = make_s_grid(cfg.s_scan.s_min, cfg.s_scan.s_max,
                                              cfg.s_scan.count, sopt.guard_band);
                max_r = reflection_scan(make_slab(at_t), grid, sopt, opt.threads).max_r;
            }
            manifest << format_double(t) << "," << name.str() << "," << format_double(max_r)
                     << "\n";
        }
        out << "wrote " << cfg.times.size() << " snapshots and "
            << (dir / "manifest.csv").string() << "\n";
        return 0;
    });
}

int cmd_asymptote(const Options& opt, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        const RunConfig cfg = load(opt);
        const ValidatedSpec spec = build_spec(cfg);
        const AsymptoticDecomposition dec = decompose(spec);
        out << "asymptotic decomposition (x-sorted), n = " << dec.sorted.n() << "\n";
        if (dec.min_kappa_separation < kSeparationWarning)
            out << "warning: kappa_min * separation = " << dec.min_kappa_separation
                << " < " << kSeparationWarning << "; isolated-soliton formulas degrade\n";
        for (int j = 0; j < dec.sorted.n(); ++j) {
            out << "soliton " << j << " (input index " << dec.permutation[j]
                << "): theta = " << dec.sorted.theta(j) << ", x = " << dec.sorted.x(j)
                << ", y = " << dec.shifts[j] << ", X = " << dec.positions[j] << "\n";
            out << "  q_hat = [" << dec.q_hat.col(j).transpose() << "]\n";
            out << "  r_hat = [" << dec.r_hat.col(j).transpose() << "]\n";
        }
        for (size_t j = 0; j < dec.backgrounds.size(); ++j)
            out << "background " << j << ":\n" << dec.backgrounds[j] << "\n";
        return 0;
    });
}

}  // namespace bdgsol::cli
