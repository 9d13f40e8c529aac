// Run configuration: a flat key-value text file, validated strictly
// (unknown keys rejected), plus factories realizing the configured objects.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shellbound/bounds.hpp"
#include "shellbound/grid.hpp"
#include "shellbound/layout.hpp"
#include "shellbound/profile.hpp"

namespace shellbound {

inline constexpr const char* kVersion = "shellbound 0.1.0";

struct RunConfig {
    int grid_n = 65;

    double lambda1 = 1.0, mu1 = 1.0;
    double lambda2 = 2.0, mu2 = 2.0;

    std::string inclusion_kind = "disk";  // disk | rect
    double disk_cx = 0.5, disk_cy = 0.5, disk_r = 0.25;
    double rect_x0 = 0.25, rect_x1 = 0.75, rect_y0 = 0.25, rect_y1 = 0.75;
    double smoothing_width = 2.0;  // in units of h

    std::string theta_kind = "flat";  // flat | affine | paraboloid | sinusoidal
    double theta_p0 = 0.0, theta_p1 = 0.0, theta_p2 = 0.0;

    std::string loading_name = "uniaxial-stretch";
    double loading_amplitude = 1.0;
    int fourier_k = 1;

    int scan_grid = 4096;
    double scan_epsilon = 1e-3;
    double scan_tol = -1.0;  // negative => default 1e-8 * max(1, |e0|)

    std::uint64_t seed = 1;
    std::string output_dir = "out";

    Grid make_grid() const { return Grid(grid_n); }
    PhaseMaterial make_material() const { return {lambda1, mu1, lambda2, mu2}; }
    InclusionGeometry make_geometry() const;
    PhaseLayout make_layout(const Grid& g) const;
    ShellProfile make_theta() const;
    ScanParams make_scan() const { return {scan_grid, scan_epsilon, 1e-6, scan_tol}; }

    /// All keys with their resolved values, for embedding in reports.
    std::vector<std::pair<std::string, std::string>> resolved() const;
};

/// Parse `key = value` lines (with # comments); unknown keys and malformed
/// values throw std::invalid_argument with the offending line.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace shellbound
