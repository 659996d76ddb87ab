// grspin: spin transport and EPR/CHSH analysis for circular and infalling
// worldlines in Schwarzschild spacetime. Subcommands: scenario, delta-surface,
// critical-radius, kruskal, verify.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "grspin/analysis.hpp"
#include "grspin/jsonio.hpp"
#include "grspin/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.
enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kDomain = 3 };

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw grspin::DomainError("cannot open output file: " + out_path);
    f << payload;
}

struct SpeedFlags {
    double v = -1.0;
    double xi = -1.0;
    double resolve_xi() const {
        if (xi >= 0.0) return xi;
        if (v >= 0.0) {
            if (v >= 1.0) throw grspin::DomainError("v/c must lie in [0, 1)");
            return std::atanh(v);
        }
        return 0.0;
    }
};

struct GeomFlags {
    double rs_over_r = -1.0;
    double rs = -1.0;
    double r = -1.0;
    double resolve_rho() const {
        if (rs_over_r >= 0.0) return rs_over_r;
        if (rs >= 0.0 && r > 0.0) return rs / r;
        return 0.0;
    }
};

void add_speed_flags(CLI::App* cmd, SpeedFlags& s) {
    auto* v = cmd->add_option("--v", s.v, "speed v/c in [0, 1)");
    auto* xi = cmd->add_option("--xi", s.xi, "rapidity, v/c = tanh(xi)");
    v->excludes(xi);
    xi->excludes(v);
}

void add_geom_flags(CLI::App* cmd, GeomFlags& g) {
    auto* ratio = cmd->add_option("--rs-over-r", g.rs_over_r, "r_s / r in [0, 1)");
    auto* rs = cmd->add_option("--rs", g.rs, "Schwarzschild radius (with --r)");
    auto* r = cmd->add_option("--r", g.r, "orbit radius (with --rs)");
    ratio->excludes(rs)->excludes(r);
    rs->needs(r);
    r->needs(rs);
}

void write_meta(grspin::JsonWriter& jw) {
    jw.object_field("meta");
    jw.field("tool", std::string("grspin"));
    jw.field("version", std::string(kVersion));
    jw.field("timestamp", timestamp_utc());
    jw.end_object();
}

// ---- scenario ---------------------------------------------------------------

int run_scenario(const GeomFlags& gf, const SpeedFlags& sf, double phi, double dphi,
                 long steps, const std::string& out_path) {
    using namespace grspin;
    const double rho = gf.resolve_rho();
    const double xi = sf.resolve_xi();
    const ScenarioConfig cfg = make_scenario(rho, std::tanh(xi), phi, dphi);

    const double theta = theta_angle(cfg);
    const double delta = delta_angle(cfg);

    // Transport both particles through the full machinery; the spin rotations
    // drive the reported state and CHSH values. xi = 0 is the v -> 0 limit:
    // the transport degenerates (infinite proper time) but the accumulated
    // rotation angle stays Theta, so the limit rotations are applied directly.
    if (steps <= 0)
        steps = std::min<long>(100000000,
                               std::max<long>(1, std::llround(1e5 * phi / kTwoPi)));
    SpinRotation u_plus{su2_exp({0.0, theta, 0.0})};
    SpinRotation u_minus{su2_exp({0.0, -theta, 0.0})};
    double transported_angle = theta;
    if (xi > 0.0) {
        const double tau_f = phi * cfg.r / std::sinh(xi);
        const TransportResult plus =
            transport_wigner(CircularOrbit{cfg.r_s, cfg.r, xi, +1}, 0.0, tau_f, steps);
        const TransportResult minus =
            transport_wigner(CircularOrbit{cfg.r_s, cfg.r, xi, -1}, 0.0, tau_f, steps);
        u_plus = plus.spin;
        u_minus = minus.spin;
        transported_angle = plus.angle;
    }

    const TwoSpinState state = evolve_pair(singlet(), u_plus, u_minus);

    const MeasurementAxis axis1{{1.0, 0.0, 0.0}};
    const double corr_equal = correlation(state, axis1, axis1);
    const double corr_recovered = correlation(state, rotate_axis_about_2(axis1, -theta),
                                              rotate_axis_about_2(axis1, +theta));
    const double chsh_unprimed = chsh(state, standard_chsh_axes());
    const double chsh_primed = chsh(state, standard_chsh_axes_primed(phi));
    const double chsh_optimal = chsh(state, standard_chsh_axes_optimal(theta));

    JsonWriter jw;
    jw.begin_object();
    jw.object_field("config");
    jw.field("rs_over_r", rho);
    jw.field("v_over_c", std::tanh(xi));
    jw.field("xi", xi);
    jw.field("phi", phi);
    jw.field("dphi", dphi);
    jw.field("steps", steps);
    jw.end_object();

    jw.object_field("results");
    jw.field("theta", theta);
    jw.field("delta", delta);
    jw.field("delta_over_phi", delta / phi);
    jw.field("theta_transported", transported_angle);
    jw.begin_array("state_re");
    for (int i = 0; i < 4; ++i) jw.element(state.amp[i].real());
    jw.end_array();
    jw.begin_array("state_im");
    for (int i = 0; i < 4; ++i) jw.element(state.amp[i].imag());
    jw.end_array();
    jw.object_field("correlation");
    jw.field("equal_axis_1", corr_equal);
    jw.field("recovered", corr_recovered);
    jw.end_object();
    jw.object_field("chsh");
    jw.field("unprimed", chsh_unprimed);
    jw.field("primed", chsh_primed);
    jw.field("optimal", chsh_optimal);
    jw.end_object();
    jw.object_field("bounds");
    jw.field("theta_error", theta_error(dphi, cfg));
    jw.field("epr_dphi_max", epr_position_bound(cfg));
    jw.field("bell_dphi_max_literal", bell_position_bound(cfg, BellBoundMode::PaperLiteral));
    jw.field("bell_dphi_max_exact", bell_position_bound(cfg, BellBoundMode::Exact));
    jw.end_object();
    jw.end_object();

    write_meta(jw);
    jw.end_object();
    emit(jw.str() + "\n", out_path);
    return kOk;
}

// ---- delta-surface ----------------------------------------------------------

int run_surface(const grspin::SurfaceGrid& grid, bool contour, bool serial,
                const std::string& out_path) {
    using namespace grspin;
    // Malformed grids are usage errors (exit 2), not domain errors.
    if (!(grid.n_rho >= 1 && grid.n_v >= 1 && grid.rho_min >= 0.0 && grid.rho_max < 1.0 &&
          grid.rho_min <= grid.rho_max && grid.v_min >= 0.0 && grid.v_max < 1.0 &&
          grid.v_min <= grid.v_max)) {
        std::cerr << "error: grid must lie inside [0,1) x [0,1) with >= 1 point per axis\n";
        return kUsage;
    }
    const DeltaSurface surf = serial ? delta_surface_serial(grid) : delta_surface(grid);

    std::string csv = contour ? "rs_over_r,v_over_c,delta_over_phi,rs_over_r0\n"
                              : "rs_over_r,v_over_c,delta_over_phi\n";
    const double drho =
        grid.n_rho > 1 ? (grid.rho_max - grid.rho_min) / (grid.n_rho - 1) : 0.0;
    const double dv = grid.n_v > 1 ? (grid.v_max - grid.v_min) / (grid.n_v - 1) : 0.0;
    char buf[160];
    for (int i = 0; i < grid.n_rho; ++i) {
        for (int j = 0; j < grid.n_v; ++j) {
            const double rho = grid.rho_min + i * drho;
            const double v = grid.v_min + j * dv;
            const double val = surf.delta_over_phi[static_cast<size_t>(i) * grid.n_v + j];
            if (contour) {
                const double c = surf.r0_contour_rho[j];
                if (std::isnan(c))
                    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,\n", rho, v, val);
                else
                    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", rho, v, val,
                                  c);
            } else {
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", rho, v, val);
            }
            csv += buf;
        }
    }
    emit(csv, out_path);
    return kOk;
}

// ---- critical-radius ---------------------------------------------------------

int run_critical(const SpeedFlags& sf, double dphi, const std::string& out_path) {
    using namespace grspin;
    const double xi = sf.resolve_xi();
    const double v = std::tanh(xi);

    JsonWriter jw;
    jw.begin_object();
    jw.object_field("config");
    jw.field("v_over_c", v);
    jw.field("xi", xi);
    jw.field("dphi", dphi);
    jw.end_object();

    jw.object_field("results");
    const RootResult r0 = solve_r0(1.0, v);
    if (r0.finite) {
        jw.field("r0_over_rs", r0.value);
        jw.field("r0_residual", r0.residual);
    } else {
        jw.field("r0_over_rs", std::string("infinite"));
        jw.field("r0_reason", std::string("Delta never vanishes at v = 0"));
    }
    if (dphi > 0.0) {
        const CriticalRadius rc = solve_rc(1.0, xi, dphi);
        if (rc.constraining) {
            jw.field("rc_over_rs", rc.r);
            jw.field("rc_residual", rc.residual);
        } else {
            jw.null_field("rc_over_rs");
            jw.field("rc_reason", rc.reason);
        }
        const CriticalRadius rb = solve_rb(1.0, xi, dphi);
        if (rb.constraining) {
            jw.field("rb_over_rs", rb.r);
            jw.field("rb_residual", rb.residual);
        } else {
            jw.null_field("rb_over_rs");
            jw.field("rb_reason", rb.reason);
        }
    } else {
        jw.null_field("rc_over_rs");
        jw.field("rc_reason", std::string("dphi = 0 imposes no constraint"));
        jw.null_field("rb_over_rs");
        jw.field("rb_reason", std::string("dphi = 0 imposes no constraint"));
    }
    jw.end_object();

    write_meta(jw);
    jw.end_object();
    emit(jw.str() + "\n", out_path);
    return kOk;
}

// ---- kruskal ------------------------------------------------------------------

int run_kruskal(const SpeedFlags& sf, double r_min, double r_max, int n, double T_slice,
                const std::string& out_path) {
    using namespace grspin;
    if (!(r_min > 0.0 && r_max > r_min && n >= 2))
        throw DomainError("need 0 < r-min < r-max and n >= 2");
    const double xi = sf.resolve_xi();

    JsonWriter jw;
    jw.begin_object();
    jw.object_field("config");
    jw.field("xi", xi);
    jw.field("v_over_c", std::tanh(xi));
    jw.field("r_min_over_rs", r_min);
    jw.field("r_max_over_rs", r_max);
    jw.field("n", n);
    jw.field("T_slice_over_rs", T_slice);
    jw.end_object();

    jw.begin_array("rows");
    for (int i = 0; i < n; ++i) {
        const double r = r_min + (r_max - r_min) * i / (n - 1);
        const double q = 4.0 * (r - 1.0) * std::exp(r); // r_s = 1 units
        const double t2 = T_slice * T_slice;
        jw.begin_object_element();
        jw.field("r_over_rs", r);
        if (q + t2 > 0.0) {
            const double R = std::sqrt(q + t2);
            const SpacetimePoint x{ChartId::Kruskal, {T_slice, R, kPi / 2.0, 0.0}};
            jw.field("infalling_rate", kruskal_precession_rate(1.0, x, xi));
        } else {
            jw.null_field("infalling_rate");
        }
        if (r > 1.0 + 1e-12)
            jw.field("static_rate", static_precession_rate(1.0, r, xi));
        else
            jw.null_field("static_rate");
        jw.end_object();
    }
    jw.end_array();

    write_meta(jw);
    jw.end_object();
    emit(jw.str() + "\n", out_path);
    return kOk;
}

// ---- verify -------------------------------------------------------------------

int run_verify(std::uint64_t seed, std::optional<double> tol) {
    const std::vector<grspin::SuiteResult> results = grspin::run_verification(seed, tol);
    bool all_ok = true;
    for (const auto& r : results) {
        std::printf("%s  %-50s  residual=%.3e  tol=%.3e%s%s\n", r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.max_residual, r.tolerance,
                    r.detail.empty() ? "" : "  worst: ", r.detail.c_str());
        all_ok = all_ok && r.passed;
    }
    std::printf("%s: %zu suites\n", all_ok ? "OK" : "FAILED", results.size());
    return all_ok ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin precession and EPR/CHSH analysis around a Schwarzschild black hole"};
    app.require_subcommand(1);

    // scenario
    auto* sc = app.add_subcommand("scenario", "two-observer EPR report at one configuration");
    GeomFlags sc_geom;
    SpeedFlags sc_speed;
    double sc_phi = 1.0, sc_dphi = 0.0;
    long sc_steps = 0;
    std::string sc_out;
    add_geom_flags(sc, sc_geom);
    add_speed_flags(sc, sc_speed);
    sc->add_option("--phi", sc_phi, "observer half-separation (radians)");
    sc->add_option("--dphi", sc_dphi, "position uncertainty (radians)");
    sc->add_option("--steps", sc_steps, "transport steps (default 1e5 per 2 pi)");
    sc->add_option("--out", sc_out, "output path (default stdout)");
    std::string sc_format = "json";
    sc->add_option("--format", sc_format)->check(CLI::IsMember({"json"}));

    // delta-surface
    auto* ds = app.add_subcommand("delta-surface", "Delta/Phi over the (rs/r, v/c) grid, CSV");
    grspin::SurfaceGrid grid;
    bool ds_contour = false, ds_serial = false;
    std::string ds_out, ds_format = "csv";
    ds->add_option("--rho-min", grid.rho_min, "lower rs/r bound");
    ds->add_option("--rho-max", grid.rho_max, "upper rs/r bound (< 1)");
    ds->add_option("--n-rho", grid.n_rho, "rs/r samples");
    ds->add_option("--v-min", grid.v_min, "lower v/c bound");
    ds->add_option("--v-max", grid.v_max, "upper v/c bound (< 1)");
    ds->add_option("--n-v", grid.n_v, "v/c samples");
    ds->add_flag("--contour", ds_contour, "append the rs/r0 zero contour column");
    ds->add_flag("--serial", ds_serial, "use the serial reference kernel");
    ds->add_option("--format", ds_format)->check(CLI::IsMember({"csv"}));
    ds->add_option("--out", ds_out, "output path (default stdout)");

    // critical-radius
    auto* cr = app.add_subcommand("critical-radius", "r0, rc, rb solvers (units of rs)");
    SpeedFlags cr_speed;
    double cr_dphi = 0.0;
    std::string cr_out;
    add_speed_flags(cr, cr_speed);
    cr->add_option("--dphi", cr_dphi, "position uncertainty (radians)");
    cr->add_option("--out", cr_out, "output path (default stdout)");
    std::string cr_format = "json";
    cr->add_option("--format", cr_format)->check(CLI::IsMember({"json"}));

    // kruskal
    auto* kr = app.add_subcommand("kruskal", "static vs infalling precession rates");
    SpeedFlags kr_speed;
    double kr_rmin = 0.5, kr_rmax = 3.0, kr_T = 2.0;
    int kr_n = 26;
    std::string kr_out;
    add_speed_flags(kr, kr_speed);
    kr->add_option("--r-min", kr_rmin, "lower r/rs bound (> 0)");
    kr->add_option("--r-max", kr_rmax, "upper r/rs bound");
    kr->add_option("--n", kr_n, "rows");
    kr->add_option("--T", kr_T, "Kruskal time slice T/rs for the infalling rate");
    kr->add_option("--out", kr_out, "output path (default stdout)");

    // verify
    auto* vf = app.add_subcommand("verify", "run every invariant suite");
    std::uint64_t vf_seed = 20240811ULL;
    double vf_tol = -1.0;
    vf->add_option("--seed", vf_seed, "seed for randomized sweeps");
    vf->add_option("--tol", vf_tol, "override residual tolerances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kUsage;
    }

    try {
        if (sc->parsed())
            return run_scenario(sc_geom, sc_speed, sc_phi, sc_dphi, sc_steps, sc_out);
        if (ds->parsed()) return run_surface(grid, ds_contour, ds_serial, ds_out);
        if (cr->parsed()) return run_critical(cr_speed, cr_dphi, cr_out);
        if (kr->parsed()) return run_kruskal(kr_speed, kr_rmin, kr_rmax, kr_n, kr_T, kr_out);
        if (vf->parsed())
            return run_verify(vf_seed,
                              vf_tol > 0.0 ? std::optional<double>(vf_tol) : std::nullopt);
    } catch (const grspin::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
