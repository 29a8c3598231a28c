#include "bdgsol/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bdgsol {

namespace {

using json = nlohmann::ordered_json;

cd parse_complex(const json& node) {
    if (!node.is_array() || node.size() != 2)
        throw Error(ErrorCode::ConfigParseError, "complex entries must be [re, im] pairs");
    return cd(node[0].get<double>(), node[1].get<double>());
}

Mat parse_matrix(const json& node) {
    if (!node.is_array() || node.empty())
        throw Error(ErrorCode::ConfigParseError, "matrix must be a nonempty array of rows");
    const int rows = static_cast<int>(node.size());
    const int cols = static_cast<int>(node[0].size());
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(node[i].size()) != cols)
            throw Error(ErrorCode::ConfigParseError, "ragged matrix rows");
        for (int j = 0; j < cols; ++j) m(i, j) = parse_complex(node[i][j]);
    }
    return m;
}

Vec parse_vector(const json& node) {
    if (!node.is_array() || node.empty())
        throw Error(ErrorCode::ConfigParseError, "vector must be a nonempty array");
    Vec v(node.size());
    for (size_t i = 0; i < node.size(); ++i) v(static_cast<int>(i)) = parse_complex(node[i]);
    return v;
}

Symmetry parse_symmetry(const std::string& tag) {
    if (tag == "none") return Symmetry::NonSymmetric;
    if (tag == "symmetric") return Symmetry::Symmetric;
    if (tag == "antisymmetric") return Symmetry::Antisymmetric;
    throw Error(ErrorCode::ConfigParseError,
                "symmetry must be one of none|symmetric|antisymmetric, got '" + tag + "'");
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json vector_json(const Vec& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_json(v(i)));
    return arr;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigParseError, e.what());
    }

    RunConfig cfg;
    try {
        const json& bg = doc.at("background");
        cfg.background.m = bg.at("m").get<double>();
        cfg.background.delta_minus = parse_matrix(bg.at("delta_minus"));
        cfg.background.symmetry = parse_symmetry(bg.value("symmetry", std::string("none")));

        for (const json& s : doc.value("solitons", json::array())) {
            Soliton sol;
            sol.theta = s.at("theta").get<double>();
            sol.p_hat = parse_vector(s.at("p_hat"));
            sol.x = s.at("x").get<double>();
            cfg.solitons.push_back(std::move(sol));
        }
        cfg.antisymmetric_completion = doc.value("antisymmetric_completion", true);

        if (doc.contains("grid")) {
            const json& g = doc["grid"];
            cfg.grid.x_min = g.at("x_min").get<double>();
            cfg.grid.x_max = g.at("x_max").get<double>();
            cfg.grid.n_points = g.at("n_points").get<int>();
        }
        if (doc.contains("s_scan")) {
            const json& s = doc["s_scan"];
            cfg.s_scan.s_min = s.value("s_min", cfg.s_scan.s_min);
            cfg.s_scan.s_max = s.value("s_max", cfg.s_scan.s_max);
            cfg.s_scan.count = s.value("count", cfg.s_scan.count);
            cfg.s_scan.guard_band = s.value("guard_band", cfg.s_scan.guard_band);
        }
        cfg.times = doc.value("times", std::vector<double>{});
        if (doc.contains("nu_override"))
            cfg.nu_override = doc["nu_override"].get<std::vector<double>>();
        cfg.nu_split = doc.value("nu_split", std::vector<double>{});
        cfg.seed = doc.value("seed", cfg.seed);

        if (doc.contains("tolerances")) {
            const json& t = doc["tolerances"];
            Tolerances& tol = cfg.tolerances;
            tol.orthonormality = t.value("orthonormality", tol.orthonormality);
            tol.gap_residual = t.value("gap_residual", tol.gap_residual);
            tol.reflection_gate = t.value("reflection_gate", tol.reflection_gate);
            tol.zs_ratio_low = t.value("zs_ratio_low", tol.zs_ratio_low);
            tol.zs_ratio_high = t.value("zs_ratio_high", tol.zs_ratio_high);
            tol.asym_match = t.value("asym_match", tol.asym_match);
            tol.recurrence = t.value("recurrence", tol.recurrence);
            tol.symmetry_closure = t.value("symmetry_closure", tol.symmetry_closure);
            tol.delta_bar_match = t.value("delta_bar_match", tol.delta_bar_match);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigParseError, e.what());
    }

    if (cfg.grid.n_points < 11)
        throw Error(ErrorCode::ConfigParseError, "grid.n_points must be >= 11");
    if (cfg.grid.x_min >= cfg.grid.x_max)
        throw Error(ErrorCode::ConfigParseError, "grid.x_min must be below grid.x_max");
    if (cfg.s_scan.count < 5)
        throw Error(ErrorCode::ConfigParseError, "s_scan.count must be >= 5");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigParseError, "cannot open config " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string resolved_config_json(const RunConfig& cfg) {
    json doc;
    doc["background"]["m"] = cfg.background.m;
    doc["background"]["symmetry"] = to_string(cfg.background.symmetry);
    doc["background"]["delta_minus"] = matrix_json(cfg.background.delta_minus);
    doc["solitons"] = json::array();
    for (const Soliton& s : cfg.solitons) {
        json node;
        node["theta"] = s.theta;
        node["p_hat"] = vector_json(s.p_hat);
        node["x"] = s.x;
        doc["solitons"].push_back(node);
    }
    doc["antisymmetric_completion"] = cfg.antisymmetric_completion;
    doc["grid"] = {{"x_min", cfg.grid.x_min}, {"x_max", cfg.grid.x_max},
                   {"n_points", cfg.grid.n_points}};
    doc["s_scan"] = {{"s_min", cfg.s_scan.s_min}, {"s_max", cfg.s_scan.s_max},
                     {"count", cfg.s_scan.count}, {"guard_band", cfg.s_scan.guard_band}};
    doc["times"] = cfg.times;
    if (cfg.nu_override) doc["nu_override"] = *cfg.nu_override;
    doc["nu_split"] = cfg.nu_split;
    const Tolerances& tol = cfg.tolerances;
    doc["tolerances"] = {{"orthonormality", tol.orthonormality},
                         {"gap_residual", tol.gap_residual},
                         {"reflection_gate", tol.reflection_gate},
                         {"zs_ratio_low", tol.zs_ratio_low},
                         {"zs_ratio_high", tol.zs_ratio_high},
                         {"asym_match", tol.asym_match},
                         {"recurrence", tol.recurrence},
                         {"symmetry_closure", tol.symmetry_closure},
                         {"delta_bar_match", tol.delta_bar_match}};
    doc["seed"] = cfg.seed;
    return doc.dump(2);
}

ValidatedSpec build_spec(const RunConfig& cfg) {
    if (cfg.background.symmetry == Symmetry::NonSymmetric)
        return validate(cfg.background, cfg.solitons);
    return apply_symmetry(cfg.background, cfg.solitons, cfg.antisymmetric_completion);
}

}  // namespace bdgsol
