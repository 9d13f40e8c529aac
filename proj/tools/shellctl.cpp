// Command-line driver: forward solves, boundary-vs-volume identity checks,
// volume-fraction bounds, oracle sweeps, and convergence tables.  All reports
// are JSON (embedding the resolved config and version); field dumps are CSV.
#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "shellbound/airy.hpp"
#include "shellbound/boundary.hpp"
#include "shellbound/bounds.hpp"
#include "shellbound/config.hpp"
#include "shellbound/forward.hpp"
#include "shellbound/grid.hpp"
#include "shellbound/kernels.hpp"
#include "shellbound/layout.hpp"
#include "shellbound/moments.hpp"
#include "shellbound/oracle.hpp"
#include "shellbound/profile.hpp"
#include "shellbound/tensor.hpp"

namespace sb = shellbound;
using json = nlohmann::ordered_json;

namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json report_base(const sb::RunConfig* cfg) {
    json j;
    j["version"] = sb::kVersion;
    j["timestamp"] = timestamp_utc();
    if (cfg) {
        json c;
        for (const auto& [k, v] : cfg->resolved()) c[k] = v;
        j["config"] = c;
    }
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_report(const std::filesystem::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
    std::cout << path.string() << "\n";
}

json moments_json(const sb::MomentSet& m) {
    auto sym = [](const sb::SymMat2& a) {
        return json{{"a11", a.a11}, {"a12", a.a12}, {"a22", a.a22}};
    };
    json j;
    j["a0"] = sym(m.a0);
    j["b0"] = sym(m.b0);
    j["c0"] = m.c0;
    j["a0t"] = sym(m.a0t);
    j["b0t"] = sym(m.b0t);
    j["c0t"] = m.c0t;
    j["e0"] = m.e0;
    j["B"] = m.B;
    j["provenance"] = {{"a0", sb::to_string(m.a0_tag)}, {"b0", sb::to_string(m.b0_tag)},
                       {"c0", sb::to_string(m.c0_tag)}, {"e0", sb::to_string(m.e0_tag)},
                       {"B", sb::to_string(m.B_tag)}};
    return j;
}

struct ForwardRun {
    sb::Grid grid;
    sb::PhaseLayout layout;
    sb::ShellProfile theta;
    sb::BoundaryFrame frame;
    sb::ShellState state;
    sb::SolveReport report;
};

ForwardRun run_forward(const sb::RunConfig& cfg) {
    const sb::Grid g = cfg.make_grid();
    sb::PhaseLayout layout = cfg.make_layout(g);
    const sb::ShellProfile theta = cfg.make_theta();
    const sb::BoundaryFrame frame(g);
    const sb::BoundaryConditions bc =
        sb::make_loading(cfg.loading_name, cfg.loading_amplitude, cfg.fourier_k, g, frame);
    auto [state, report] = sb::solve_shell(g, layout, theta, bc);
    return {g, std::move(layout), theta, frame, std::move(state), report};
}

void write_fields_csv(const std::filesystem::path& path, const ForwardRun& run) {
    std::ofstream out(path);
    out << "i,j,x,y,u1,u2,u3,s11,s12,s22,m11,m12,m22\n";
    const sb::Grid& g = run.grid;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const int k = g.idx(i, j);
            out << i << ',' << j << ',' << fmt_double(g.x(i)) << ',' << fmt_double(g.y(j)) << ','
                << fmt_double(run.state.u1[k]) << ',' << fmt_double(run.state.u2[k]) << ','
                << fmt_double(run.state.u3[k]) << ',' << fmt_double(run.state.stress.a11[k]) << ','
                << fmt_double(run.state.stress.a12[k]) << ','
                << fmt_double(run.state.stress.a22[k]) << ','
                << fmt_double(run.state.moment.a11[k]) << ','
                << fmt_double(run.state.moment.a12[k]) << ','
                << fmt_double(run.state.moment.a22[k]) << '\n';
        }
    std::cout << path.string() << "\n";
}

void write_cauchy_csv(const std::filesystem::path& path, const ForwardRun& run,
                      const sb::CauchyBundle& cb) {
    std::ofstream out(path);
    out << "edge,k,i,j,x,y,u1,u2,u3,u3n,sn_x,sn_y,sn_t,sn_n,divm_n,mn_t,mn_n,s_gradtheta_n,"
           "shear_combined\n";
    const sb::Grid& g = run.grid;
    for (int e = 0; e < 4; ++e) {
        const auto& nodes = run.frame.edges[e].nodes;
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            const int i = nodes[q] % g.n, j = nodes[q] / g.n;
            out << e << ',' << q << ',' << i << ',' << j << ',' << fmt_double(g.x(i)) << ','
                << fmt_double(g.y(j)) << ',' << fmt_double(cb.u1[e][q]) << ','
                << fmt_double(cb.u2[e][q]) << ',' << fmt_double(cb.u3[e][q]) << ','
                << fmt_double(cb.u3n[e][q]) << ',' << fmt_double(cb.sn_x[e][q]) << ','
                << fmt_double(cb.sn_y[e][q]) << ',' << fmt_double(cb.sn_t[e][q]) << ','
                << fmt_double(cb.sn_n[e][q]) << ',' << fmt_double(cb.divm_n[e][q]) << ','
                << fmt_double(cb.mn_t[e][q]) << ',' << fmt_double(cb.mn_n[e][q]) << ','
                << fmt_double(cb.s_gradtheta_n[e][q]) << ','
                << fmt_double(cb.shear_combined[e][q]) << '\n';
        }
    }
    std::cout << path.string() << "\n";
}

// ---------------------------------------------------------------------------
// Deterministic smooth test functions (bicubic + low-mode trigonometric).

struct SmoothFn {
    std::array<double, 16> c{};  // bicubic coefficients c[p*4+q] x^p y^q
    double amp = 0.0;
    int k1 = 1, k2 = 1;

    double value(double x, double y) const {
        double acc = 0.0;
        double xp = 1.0;
        for (int p = 0; p < 4; ++p) {
            double yq = 1.0;
            for (int q = 0; q < 4; ++q) {
                acc += c[p * 4 + q] * xp * yq;
                yq *= y;
            }
            xp *= x;
        }
        return acc + amp * std::sin(M_PI * k1 * x) * std::sin(M_PI * k2 * y);
    }

    static SmoothFn random(std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::uniform_int_distribution<int> ki(1, 2);
        SmoothFn f;
        for (auto& ci : f.c) ci = u(rng);
        f.amp = 0.25 * u(rng);
        f.k1 = ki(rng);
        f.k2 = ki(rng);
        return f;
    }
};

sb::ScalarField sample(const sb::Grid& g, const SmoothFn& f) {
    sb::ScalarField out(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) out[g.idx(i, j)] = f.value(g.x(i), g.y(j));
    return out;
}

double rel_err(double approx, double exact) {
    return std::abs(approx - exact) / std::max(1.0, std::abs(exact));
}

double rel_err(const sb::SymMat2& approx, const sb::SymMat2& exact) {
    return (approx - exact).norm() / std::max(1.0, exact.norm());
}

/// One grid level of the boundary-vs-volume identity checks for a fixed pair
/// of smooth functions (psi, u3) and profile theta.
struct IdentityErrors {
    double a0 = 0, a0_skew = 0, c0 = 0, c0_spread = 0;
    double a0t = 0, a0t_skew = 0, c0t = 0, c0t_spread = 0;
    double B = 0, eq18 = 0;
};

IdentityErrors identity_errors(const sb::Grid& g, const SmoothFn& fpsi, const SmoothFn& fu3,
                               const sb::ShellProfile& theta, const sb::PhaseLayout& layout) {
    const sb::BoundaryFrame frame(g);
    const sb::ScalarField psi = sample(g, fpsi);
    const sb::ScalarField u3 = sample(g, fu3);
    const sb::MomentSet vol = sb::moments_from_field(g, psi, u3, theta, layout);

    const sb::ScalarTraces tp = sb::boundary_trace(g, frame, psi);
    const sb::ScalarTraces tu = sb::boundary_trace(g, frame, u3);

    IdentityErrors e;
    const auto a0b = sb::a0_from_boundary(g, frame, tp.value, tp.dn);
    e.a0 = rel_err(a0b.sym, vol.a0);
    e.a0_skew = a0b.skew / std::max(1.0, vol.a0.norm());
    const auto c0b = sb::c0_from_boundary(g, frame, tp.value, tp.dn);
    e.c0 = rel_err(c0b.value, vol.c0);
    e.c0_spread = std::abs(c0b.form1 - c0b.form2) / std::max(1.0, std::abs(vol.c0));
    const auto a0tb = sb::a0_from_boundary(g, frame, tu.value, tu.dn);
    e.a0t = rel_err(a0tb.sym, vol.a0t);
    e.a0t_skew = a0tb.skew / std::max(1.0, vol.a0t.norm());
    const auto c0tb = sb::c0_from_boundary(g, frame, tu.value, tu.dn);
    e.c0t = rel_err(c0tb.value, vol.c0t);
    e.c0t_spread = std::abs(c0tb.form1 - c0tb.form2) / std::max(1.0, std::abs(vol.c0t));

    // Transformed Neumann traces need only the (u3, u3_n) side here.
    sb::CauchyBundle cb;
    cb.u1 = sb::EdgeValues(frame);
    cb.u2 = sb::EdgeValues(frame);
    cb.u3 = tu.value;
    cb.u3n = tu.dn;
    const sb::TransformedNeumann tn = sb::cauchy_from_displacement(g, frame, cb, theta);
    const sb::PsiTraces pt{tp.value, tp.dn};
    const double Bb = sb::B_term(g, frame, pt, tu.value, tn, theta);
    e.B = rel_err(Bb, vol.B);

    // Pointwise contraction identity (grad_theta x grad_u3) . RH = (RH grad_theta) . grad_u3.
    const sb::TensorField H = sb::kernels::hessian(g, psi);
    const sb::VecField gu = sb::kernels::gradient(g, u3);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const int k = g.idx(i, j);
            const auto gt = theta.gradient(g.x(i), g.y(j));
            const sb::SymMat2 rh = sb::rperp_conjugate(H.at(k));
            const double lhs = gt[0] * gu.x[k] * rh.a11 + gt[0] * gu.y[k] * rh.a12 +
                               gt[1] * gu.x[k] * rh.a12 + gt[1] * gu.y[k] * rh.a22;
            const auto rhg = rh.apply({gt[0], gt[1]});
            const double rhs = rhg[0] * gu.x[k] + rhg[1] * gu.y[k];
            e.eq18 = std::max(e.eq18,
                              std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs) + std::abs(rhs)));
        }
    return e;
}

json identity_level_json(const IdentityErrors& e) {
    return json{{"a0_rel", e.a0},        {"a0_skew", e.a0_skew},
                {"c0_rel", e.c0},        {"c0_form_spread", e.c0_spread},
                {"a0t_rel", e.a0t},      {"a0t_skew", e.a0t_skew},
                {"c0t_rel", e.c0t},      {"c0t_form_spread", e.c0t_spread},
                {"B_rel", e.B},          {"eq18_pointwise", e.eq18}};
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_forward(const sb::RunConfig& cfg) {
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    const ForwardRun run = run_forward(cfg);
    const sb::CauchyBundle cb = sb::extract_cauchy(run.state, run.frame);

    write_fields_csv(dir / "fields.csv", run);
    write_cauchy_csv(dir / "cauchy.csv", run, cb);

    json j = report_base(&cfg);
    j["solve"] = {{"residual", run.report.residual},
                  {"energy", run.report.energy},
                  {"free_dofs", run.report.free_dofs},
                  {"method", run.report.method},
                  {"cg_iterations", run.report.cg_iterations}};
    j["layout"] = {{"f1_exact", run.layout.f1_exact}, {"f1_grid", run.layout.f1_grid()}};
    write_report(dir / "solve_report.json", j);
    return 0;
}

int cmd_identities(const sb::RunConfig& cfg) {
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);

    std::mt19937_64 rng(cfg.seed);
    const SmoothFn fpsi = SmoothFn::random(rng);
    const SmoothFn fu3 = SmoothFn::random(rng);
    const sb::ShellProfile theta = cfg.make_theta();

    const int n_fine = cfg.grid_n;
    const int n_coarse = (n_fine + 1) / 2;
    std::vector<int> levels;
    if (n_coarse >= 17 && n_coarse % 2 == 1) levels.push_back(n_coarse);
    levels.push_back(n_fine);

    json j = report_base(&cfg);
    json jl = json::array();
    std::vector<IdentityErrors> errs;
    for (int n : levels) {
        const sb::Grid g(n);
        const sb::PhaseLayout layout = cfg.make_layout(g);
        errs.push_back(identity_errors(g, fpsi, fu3, theta, layout));
        json row = identity_level_json(errs.back());
        row["n"] = n;
        jl.push_back(std::move(row));
    }
    j["levels"] = jl;

    bool pass = true;
    const IdentityErrors& fine = errs.back();
    for (double v : {fine.a0, fine.c0, fine.a0t, fine.c0t, fine.B}) pass = pass && v <= 1e-2;
    pass = pass && fine.eq18 <= 1e-14;
    if (errs.size() == 2) {
        auto order = [](double ec, double ef) {
            if (ef < 1e-13) return std::numeric_limits<double>::quiet_NaN();
            return std::log2(ec / ef);
        };
        j["orders"] = {{"a0", order(errs[0].a0, fine.a0)},
                       {"c0", order(errs[0].c0, fine.c0)},
                       {"a0t", order(errs[0].a0t, fine.a0t)},
                       {"c0t", order(errs[0].c0t, fine.c0t)},
                       {"B", order(errs[0].B, fine.B)}};
    }
    j["all_pass"] = pass;

    // Bounds-stage degeneracy probe: with zero phase contrast the feasible
    // set is the whole interval and the verdict says so.
    {
        const sb::Grid g(levels.back());
        const sb::PhaseLayout layout = cfg.make_layout(g);
        const sb::MomentSet vol =
            sb::moments_from_field(g, sample(g, fpsi), sample(g, fu3), theta, layout);
        const sb::BoundInputs in = sb::make_bound_inputs(vol, cfg.make_material());
        json bs;
        bs["degenerate"] = in.degenerate_membrane || in.degenerate_bending;
        if (bs["degenerate"].get<bool>()) {
            bs["verdict"] = sb::feasible_fraction_set(in, cfg.make_scan()).verdict;
        } else {
            bs["verdict"] = "informative contrast; run the bounds command for intervals";
        }
        j["bounds_stage"] = bs;
    }

    write_report(dir / "identities_report.json", j);
    return pass ? 0 : 3;
}

int cmd_bounds(const sb::RunConfig& cfg) {
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);

    const ForwardRun run = run_forward(cfg);
    const sb::BoundInputs probe = sb::make_bound_inputs(sb::MomentSet{}, cfg.make_material());

    sb::MomentSet moments;
    if (probe.degenerate_membrane || probe.degenerate_bending) {
        // Zero contrast: the scan is uninformative regardless of moments.
        moments = sb::moments_from_field(run.grid, sb::ScalarField(run.grid), run.state.u3,
                                         run.theta, run.layout);
    } else {
        // Solver output is divergence-free only up to interface-layer
        // discretization error, so the precondition is applied loosely here;
        // genuinely non-equilibrated inputs fail at O(1).
        const sb::AiryField airy = sb::airy_reconstruct(run.grid, run.state.stress, 0.5);
        moments =
            sb::moments_from_field(run.grid, airy.psi, run.state.u3, run.theta, run.layout);
    }

    sb::BoundInputs in = sb::make_bound_inputs(moments, cfg.make_material());
    const double true_f1 = run.layout.f1_exact;
    const sb::FeasibilityReport rep =
        sb::feasible_fraction_set(in, cfg.make_scan(), true_f1);

    json j = report_base(&cfg);
    j["moments"] = moments_json(moments);
    json corners = json::array();
    for (const auto& c : sb::corner_points(in)) {
        corners.push_back({{"zeta", c[0]},
                           {"zeta_tilde", c[1]},
                           {"gap_at_true_f1",
                            rep.degenerate ? 0.0 : sb::bound_gap(true_f1, c[0], c[1], in)}});
    }
    j["corners"] = corners;
    json intervals = json::array();
    for (const auto& iv : rep.intervals) intervals.push_back({{"lo", iv.lo}, {"hi", iv.hi}});
    j["feasibility"] = {{"degenerate", rep.degenerate},
                        {"gap_tol", rep.gap_tol},
                        {"intervals", intervals},
                        {"verdict", rep.verdict}};
    {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "true f1 = %.5g %s feasible interval", true_f1,
                      rep.true_f1_feasible ? "∈" : "∉");
        j["true_f1"] = true_f1;
        j["true_f1_feasible"] = rep.true_f1_feasible;
        j["true_f1_verdict"] = buf;
    }
    write_report(dir / "bounds_report.json", j);

    if (!rep.degenerate) {
        std::ofstream out(dir / "gap_curves.csv");
        out << "f1,gap_corner0,gap_corner1,gap_corner2,gap_corner3\n";
        for (std::size_t k = 0; k < rep.scan_f1.size(); ++k) {
            out << fmt_double(rep.scan_f1[k]);
            for (int c = 0; c < 4; ++c) out << ',' << fmt_double(rep.corner_gaps[c][k]);
            out << '\n';
        }
        std::cout << (dir / "gap_curves.csv").string() << "\n";
    }
    return rep.true_f1_feasible ? 0 : 4;
}

int cmd_oracle(const sb::RunConfig& cfg, int trials) {
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> pos(0.5, 3.0);
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    std::uniform_real_distribution<double> mom(-1.0, 1.0);

    double worst = 0.0;
    json cases = json::array();
    for (int t = 0; t < trials; ++t) {
        sb::IsoTensor2D s1{pos(rng), pos(rng)};
        sb::IsoTensor2D s2{pos(rng), pos(rng)};
        // Enforce nonzero contrast in both components.
        while (std::abs(s1.alpha - s2.alpha) < 0.05) s2.alpha = pos(rng);
        while (std::abs(s1.beta - s2.beta) < 0.05) s2.beta = pos(rng);
        const double f1 = frac(rng);
        const sb::MandelVec a0{mom(rng), mom(rng), mom(rng)};
        const sb::MandelVec g0{mom(rng), mom(rng), mom(rng)};
        const double closed = sb::mn_min_value(s1, s2, f1, a0, g0);
        const sb::KktSolution kkt = sb::kkt_two_phase(s1, s2, f1, a0, g0);
        const double err = std::abs(closed - kkt.energy) / std::max(1.0, std::abs(kkt.energy));
        worst = std::max(worst, err);
        if (t < 10) {
            cases.push_back({{"f1", f1},
                             {"closed_form", closed},
                             {"oracle", kkt.energy},
                             {"rel_err", err},
                             {"constraint_residual", kkt.constraint_residual}});
        }
    }

    // Pinned worked example: S1 = 2I, S2 = I, f = 1/2, a0 = (1,0,0), g0 = (2,0,0) -> 4.
    const double worked =
        sb::mn_min_value({2.0, 2.0}, {1.0, 1.0}, 0.5, {1.0, 0.0, 0.0}, {2.0, 0.0, 0.0});

    json j = report_base(&cfg);
    j["trials"] = trials;
    j["worst_rel_err"] = worst;
    j["worked_example_value"] = worked;
    j["worked_example_expected"] = 4.0;
    j["sample_cases"] = cases;
    j["pass"] = worst <= 1e-10 && std::abs(worked - 4.0) <= 1e-14;
    write_report(dir / "oracle_report.json", j);
    return j["pass"].get<bool>() ? 0 : 5;
}

int cmd_convergence(const sb::RunConfig& cfg, std::vector<int> levels) {
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    if (levels.empty()) levels = {33, 65, 129};

    std::mt19937_64 rng(cfg.seed);
    const SmoothFn fpsi = SmoothFn::random(rng);
    const SmoothFn fu3 = SmoothFn::random(rng);
    const sb::ShellProfile theta = cfg.make_theta();

    json j = report_base(&cfg);
    json table = json::array();
    std::vector<double> ea0, ec0, eB;
    for (int n : levels) {
        const sb::Grid g(n);
        const sb::PhaseLayout layout = cfg.make_layout(g);
        const IdentityErrors e = identity_errors(g, fpsi, fu3, theta, layout);
        ea0.push_back(e.a0);
        ec0.push_back(e.c0);
        eB.push_back(e.B);
        json row = identity_level_json(e);
        row["n"] = n;
        table.push_back(std::move(row));
    }
    j["table"] = table;
    j["orders"] = {{"a0", sb::convergence_order(ea0)},
                   {"c0", sb::convergence_order(ec0)},
                   {"B", sb::convergence_order(eB)}};
    write_report(dir / "convergence_report.json", j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shellbound: two-phase shallow-shell bounds from one set of Cauchy data"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false, out_set = false;
    int trials = 100;
    std::string levels_arg;

    app.add_option("--config", config_path, "configuration file (key = value lines)");
    app.add_option("--out", out_dir, "output directory (overrides output_dir)")
        ->each([&](const std::string&) { out_set = true; });
    app.add_option("--seed", seed, "RNG seed (overrides config seed)")
        ->each([&](const std::string&) { seed_set = true; });
    app.add_option("--trials", trials, "number of oracle trials");
    app.add_option("--levels", levels_arg, "comma-separated grid sizes for convergence");

    auto* c_forward = app.add_subcommand("forward", "solve and dump fields + Cauchy data");
    auto* c_ident = app.add_subcommand("identities", "boundary-vs-volume identity checks");
    auto* c_bounds = app.add_subcommand("bounds", "moments and volume-fraction bounds");
    auto* c_oracle = app.add_subcommand("oracle", "closed form vs KKT oracle sweep");
    auto* c_conv = app.add_subcommand("convergence", "identity-error convergence table");

    CLI11_PARSE(app, argc, argv);

    try {
        sb::RunConfig cfg =
            config_path.empty() ? sb::RunConfig{} : sb::parse_config_file(config_path);
        if (seed_set) cfg.seed = seed;
        if (out_set) cfg.output_dir = out_dir;

        if (c_forward->parsed()) return cmd_forward(cfg);
        if (c_ident->parsed()) return cmd_identities(cfg);
        if (c_bounds->parsed()) return cmd_bounds(cfg);
        if (c_oracle->parsed()) return cmd_oracle(cfg, trials);
        if (c_conv->parsed()) {
            std::vector<int> levels;
            std::stringstream ss(levels_arg);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) levels.push_back(std::stoi(tok));
            return cmd_convergence(cfg, levels);
        }
        return 2;
    } catch (const std::exception& ex) {
        json err;
        err["error"] = {{"type", "runtime"}, {"message", ex.what()}};
        std::cerr << err.dump(2) << "\n";
        return 1;
    }
}
