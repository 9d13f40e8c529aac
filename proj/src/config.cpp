#include "shellbound/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace shellbound {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for " + key + ": '" + v + "'");
    }
    if (used != v.size())
        throw std::invalid_argument("config: trailing characters in value for " + key);
    return x;
}

long long parse_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer value for " + key + ": '" + v + "'");
    }
    if (used != v.size())
        throw std::invalid_argument("config: trailing characters in value for " + key);
    return x;
}

void apply(RunConfig& c, const std::string& key, const std::string& val) {
    if (key == "grid.n") c.grid_n = static_cast<int>(parse_int(key, val));
    else if (key == "material.lambda1") c.lambda1 = parse_double(key, val);
    else if (key == "material.mu1") c.mu1 = parse_double(key, val);
    else if (key == "material.lambda2") c.lambda2 = parse_double(key, val);
    else if (key == "material.mu2") c.mu2 = parse_double(key, val);
    else if (key == "inclusion.kind") c.inclusion_kind = val;
    else if (key == "inclusion.cx") c.disk_cx = parse_double(key, val);
    else if (key == "inclusion.cy") c.disk_cy = parse_double(key, val);
    else if (key == "inclusion.r") c.disk_r = parse_double(key, val);
    else if (key == "inclusion.x0") c.rect_x0 = parse_double(key, val);
    else if (key == "inclusion.x1") c.rect_x1 = parse_double(key, val);
    else if (key == "inclusion.y0") c.rect_y0 = parse_double(key, val);
    else if (key == "inclusion.y1") c.rect_y1 = parse_double(key, val);
    else if (key == "inclusion.smoothing_width") c.smoothing_width = parse_double(key, val);
    else if (key == "theta.kind") c.theta_kind = val;
    else if (key == "theta.p0") c.theta_p0 = parse_double(key, val);
    else if (key == "theta.p1") c.theta_p1 = parse_double(key, val);
    else if (key == "theta.p2") c.theta_p2 = parse_double(key, val);
    else if (key == "loading.name") c.loading_name = val;
    else if (key == "loading.amplitude") c.loading_amplitude = parse_double(key, val);
    else if (key == "loading.fourier_k") c.fourier_k = static_cast<int>(parse_int(key, val));
    else if (key == "bounds.scan_grid") c.scan_grid = static_cast<int>(parse_int(key, val));
    else if (key == "bounds.epsilon") c.scan_epsilon = parse_double(key, val);
    else if (key == "bounds.tol") c.scan_tol = parse_double(key, val);
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_int(key, val));
    else if (key == "output_dir") c.output_dir = val;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void validate(const RunConfig& c) {
    if (c.grid_n < 17 || c.grid_n % 2 == 0)
        throw std::invalid_argument("config: grid.n must be odd and >= 17");
    if (c.inclusion_kind != "disk" && c.inclusion_kind != "rect")
        throw std::invalid_argument("config: inclusion.kind must be disk or rect");
    if (c.smoothing_width < 0.0)
        throw std::invalid_argument("config: inclusion.smoothing_width must be >= 0");
    if (c.scan_grid < 2) throw std::invalid_argument("config: bounds.scan_grid must be >= 2");
    if (!(c.scan_epsilon > 0.0 && c.scan_epsilon < 0.5))
        throw std::invalid_argument("config: bounds.epsilon must lie in (0, 0.5)");
    // Material convexity and the profile kind are validated by their factories.
    (void)c.make_material();
    (void)c.make_theta();
}

}  // namespace

InclusionGeometry RunConfig::make_geometry() const {
    if (inclusion_kind == "disk") return InclusionGeometry::disk(disk_cx, disk_cy, disk_r);
    return InclusionGeometry::rect(rect_x0, rect_x1, rect_y0, rect_y1);
}

PhaseLayout RunConfig::make_layout(const Grid& g) const {
    return make_phase_layout(make_geometry(), make_material(), g, smoothing_width);
}

ShellProfile RunConfig::make_theta() const {
    return make_profile(theta_kind, theta_p0, theta_p1, theta_p2);
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
    auto num = [](double x) {
        std::ostringstream os;
        os.precision(17);
        os << x;
        return os.str();
    };
    std::vector<std::pair<std::string, std::string>> out = {
        {"grid.n", std::to_string(grid_n)},
        {"material.lambda1", num(lambda1)},
        {"material.mu1", num(mu1)},
        {"material.lambda2", num(lambda2)},
        {"material.mu2", num(mu2)},
        {"inclusion.kind", inclusion_kind},
        {"inclusion.smoothing_width", num(smoothing_width)},
        {"theta.kind", theta_kind},
        {"theta.p0", num(theta_p0)},
        {"theta.p1", num(theta_p1)},
        {"theta.p2", num(theta_p2)},
        {"loading.name", loading_name},
        {"loading.amplitude", num(loading_amplitude)},
        {"loading.fourier_k", std::to_string(fourier_k)},
        {"bounds.scan_grid", std::to_string(scan_grid)},
        {"bounds.epsilon", num(scan_epsilon)},
        {"bounds.tol", num(scan_tol)},
        {"seed", std::to_string(seed)},
        {"output_dir", output_dir},
    };
    if (inclusion_kind == "disk") {
        out.insert(out.begin() + 6, {{"inclusion.cx", num(disk_cx)},
                                     {"inclusion.cy", num(disk_cy)},
                                     {"inclusion.r", num(disk_r)}});
    } else {
        out.insert(out.begin() + 6, {{"inclusion.x0", num(rect_x0)},
                                     {"inclusion.x1", num(rect_x1)},
                                     {"inclusion.y0", num(rect_y0)},
                                     {"inclusion.y1", num(rect_y1)}});
    }
    return out;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value': " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::invalid_argument("config: empty key or value at line " +
                                        std::to_string(lineno));
        apply(c, key, val);
    }
    validate(c);
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace shellbound
