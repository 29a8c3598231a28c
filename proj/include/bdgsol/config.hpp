// Run configuration: a single JSON document with complex entries as [re, im]
// pairs and angles in radians.  Parsing fills defaults; the resolved form is
// echoed into every report so runs are reproducible from the report alone.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bdgsol/scattering_data.hpp"
#include "bdgsol/types.hpp"

namespace bdgsol {

struct Tolerances {
    double orthonormality = 1e-8;
    double gap_residual = 1e-10;
    double reflection_gate = 1e-6;
    double zs_ratio_low = 3.5;
    double zs_ratio_high = 4.5;
    double asym_match = 1e-6;        // relative to m
    double recurrence = 1e-10;
    double symmetry_closure = 1e-11;
    double delta_bar_match = 1e-8;
};

struct ScanConfig {
    double s_min = 0.2;
    double s_max = 5.0;
    int count = 41;
    double guard_band = 1e-3;
};

struct RunConfig {
    Background background;
    std::vector<Soliton> solitons;
    bool antisymmetric_completion = true;
    Grid grid{-25.0, 25.0, 1001};
    ScanConfig s_scan;
    std::vector<double> times;
    std::optional<std::vector<double>> nu_override;
    std::vector<double> nu_split;
    Tolerances tolerances;
    std::uint64_t seed = 1;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

// Fully-resolved echo (defaults filled), stable key order.
std::string resolved_config_json(const RunConfig& config);

// validate() plus apply_symmetry() for the symmetric classes.
ValidatedSpec build_spec(const RunConfig& config);

}  // namespace bdgsol
