#include "grspin/analysis.hpp"

#include <cmath>
#include <limits>

namespace grspin {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Horizon guard consistent with the geometry module.
double require_exterior(double r_s, double r) {
    if (r_s > 0.0 && !(r > r_s * (1.0 + 1e-12)))
        throw HorizonSingularity("static-chart quantity requested at r <= r_s");
    return r;
}

// h(r) = [1 - r_s/(2 r f)] sqrt(f); Theta/Phi = cosh(xi) h(r).
double h_of_r(double r_s, double r) {
    const double f = (r_s == 0.0) ? 1.0 : schwarzschild_f(r_s, r);
    return (1.0 - r_s / (2.0 * r * f)) * std::sqrt(f);
}

double dh_dr(double r_s, double r) {
    // h = [1 - r_s/(2(r - r_s))] sqrt(1 - r_s/r)
    const double f = schwarzschild_f(r_s, r);
    const double sf = std::sqrt(f);
    const double k = 1.0 - r_s / (2.0 * (r - r_s));
    const double dk = r_s / (2.0 * (r - r_s) * (r - r_s));
    const double dsf = r_s / (2.0 * r * r * sf);
    return dk * sf + k * dsf;
}

} // namespace

ScenarioConfig make_scenario(double rs_over_r, double v_over_c, double phi, double dphi) {
    if (!(rs_over_r >= 0.0 && rs_over_r < 1.0))
        throw DomainError("rs_over_r must lie in [0, 1)");
    if (!(v_over_c >= 0.0 && v_over_c < 1.0)) throw DomainError("v/c must lie in [0, 1)");
    if (!(phi > 0.0)) throw DomainError("phi must be positive");
    if (dphi < 0.0) throw DomainError("dphi must be nonnegative");
    ScenarioConfig cfg;
    cfg.r_s = rs_over_r; // lengths in units of the orbit radius
    cfg.r = 1.0;
    cfg.xi = std::atanh(v_over_c);
    cfg.phi = phi;
    cfg.dphi = dphi;
    return cfg;
}

double theta_angle(const ScenarioConfig& cfg) {
    require_exterior(cfg.r_s, cfg.r);
    return cfg.phi * std::cosh(cfg.xi) * h_of_r(cfg.r_s, cfg.r);
}

double delta_angle(const ScenarioConfig& cfg) { return theta_angle(cfg) - cfg.phi; }

double nonrelativistic_delta(const ScenarioConfig& cfg) {
    const double v = std::tanh(cfg.xi);
    return cfg.phi * (v * v / 2.0 - cfg.r_s / cfg.r);
}

RootResult solve_r0(double r_s, double v_over_c) {
    if (!(v_over_c >= 0.0 && v_over_c < 1.0)) throw DomainError("v/c must lie in [0, 1)");
    if (v_over_c == 0.0) {
        // h -> 1 only as r -> infinity.
        return RootResult{false, std::numeric_limits<double>::infinity(), 0.0};
    }
    const double target = std::sqrt(1.0 - v_over_c * v_over_c);

    // h is 0 at r = 3 r_s/2, increases monotonically to 1: bracket and bisect.
    double lo = 1.5 * r_s * (1.0 + 1e-12);
    double hi = 2.0 * r_s;
    while (h_of_r(r_s, hi) < target) hi *= 2.0;
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * r; ++it) {
        if (h_of_r(r_s, r) < target)
            lo = r;
        else
            hi = r;
        r = 0.5 * (lo + hi);
    }
    for (int it = 0; it < 12; ++it) {
        const double res = h_of_r(r_s, r) - target;
        const double step = res / dh_dr(r_s, r);
        const double rn = r - step;
        if (!(rn > 1.5 * r_s) || rn == r) break;
        r = rn;
    }
    return RootResult{true, r, std::fabs(h_of_r(r_s, r) - target)};
}

double theta_error(double dphi, const ScenarioConfig& cfg) {
    if (dphi < 0.0) throw DomainError("dphi must be nonnegative");
    return dphi * std::fabs(theta_angle(cfg) / cfg.phi);
}

double epr_position_bound(const ScenarioConfig& cfg) {
    return kPi / std::fabs(theta_angle(cfg) / cfg.phi);
}

double bell_position_bound(const ScenarioConfig& cfg, BellBoundMode mode) {
    const double c = (mode == BellBoundMode::PaperLiteral)
                         ? std::sqrt(2.0)
                         : std::acos(std::pow(2.0, -0.25));
    return c / std::fabs(theta_angle(cfg) / cfg.phi);
}

namespace {

CriticalRadius solve_bound_radius(double r_s, double xi, double dphi, double constant) {
    if (!(dphi > 0.0)) throw DomainError("critical radius needs dphi > 0");
    if (!(r_s > 0.0)) throw DomainError("critical radius needs r_s > 0");
    const double ch = std::cosh(xi);
    // bound(r) = constant / (ch |h(r)|). On (r_s, 3 r_s/2) the bound rises
    // from 0 to infinity, so the smallest crossing lives there whenever the
    // innermost probe is below dphi.
    auto bound = [&](double r) { return constant / (ch * std::fabs(h_of_r(r_s, r))); };

    const double r_in = r_s * (1.0 + 1e-9);
    if (bound(r_in) >= dphi) {
        return CriticalRadius{false, 0.0, 0.0,
                              "bound exceeds dphi down to r_s (1 + 1e-9); not constraining"};
    }
    double lo = r_in, hi = 1.5 * r_s * (1.0 - 1e-12);
    // bound(hi) -> infinity as h -> 0, so the bracket is guaranteed. Bisect
    // to near machine precision: the bound is steep here and the residual
    // contract is 1e-9 relative in the bound itself.
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 200 && (hi - lo) > 4e-16 * r; ++it) {
        if (bound(r) < dphi)
            lo = r;
        else
            hi = r;
        r = 0.5 * (lo + hi);
    }
    return CriticalRadius{true, r, std::fabs(bound(r) - dphi), ""};
}

} // namespace

CriticalRadius solve_rc(double r_s, double xi, double dphi) {
    return solve_bound_radius(r_s, xi, dphi, kPi);
}

CriticalRadius solve_rb(double r_s, double xi, double dphi, BellBoundMode mode) {
    const double c = (mode == BellBoundMode::PaperLiteral)
                         ? std::sqrt(2.0)
                         : std::acos(std::pow(2.0, -0.25));
    return solve_bound_radius(r_s, xi, dphi, c);
}

double kruskal_precession_rate(double r_s, const SpacetimePoint& x, double xi,
                               int direction) {
    validate_point(ChartId::Kruskal, r_s, x);
    const double r = kruskal_r(r_s, x);
    const double ch = std::cosh(xi), sh = std::sinh(xi);
    return direction * (ch * sh / r) * (3.0 + r / r_s) * std::sqrt(kruskal_F(r_s, r)) *
           x.coords[1] / (4.0 * r_s);
}

double static_precession_rate(double r_s, double r, double xi) {
    require_exterior(r_s, r);
    return std::fabs(std::cosh(xi) * std::sinh(xi) / r * h_of_r(r_s, r));
}

double delta_over_phi_cell(double rho, double v_over_c) {
    const double ch = 1.0 / std::sqrt(1.0 - v_over_c * v_over_c);
    const double f = 1.0 - rho;
    const double h = (1.0 - rho / (2.0 * f)) * std::sqrt(f);
    return ch * h - 1.0;
}

namespace {

DeltaSurface surface_common(const SurfaceGrid& grid, bool parallel) {
    if (!(grid.n_rho >= 1 && grid.n_v >= 1)) throw DomainError("grid needs >= 1 point per axis");
    if (!(grid.rho_min >= 0.0 && grid.rho_max < 1.0 && grid.rho_min <= grid.rho_max))
        throw DomainError("rho grid must lie inside [0, 1)");
    if (!(grid.v_min >= 0.0 && grid.v_max < 1.0 && grid.v_min <= grid.v_max))
        throw DomainError("v grid must lie inside [0, 1)");

    DeltaSurface out;
    out.grid = grid;
    out.delta_over_phi.assign(static_cast<size_t>(grid.n_rho) * grid.n_v, 0.0);
    const double drho =
        grid.n_rho > 1 ? (grid.rho_max - grid.rho_min) / (grid.n_rho - 1) : 0.0;
    const double dv = grid.n_v > 1 ? (grid.v_max - grid.v_min) / (grid.n_v - 1) : 0.0;

    const long total = static_cast<long>(grid.n_rho) * grid.n_v;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long cell = 0; cell < total; ++cell) {
        const int i = static_cast<int>(cell) / grid.n_v;
        const int j = static_cast<int>(cell) % grid.n_v;
        out.delta_over_phi[cell] =
            delta_over_phi_cell(grid.rho_min + i * drho, grid.v_min + j * dv);
    }

    out.r0_contour_rho.assign(grid.n_v, std::numeric_limits<double>::quiet_NaN());
    for (int j = 0; j < grid.n_v; ++j) {
        const double v = grid.v_min + j * dv;
        if (v <= 0.0) continue;
        const RootResult r0 = solve_r0(1.0, v); // r_s = 1: contour is r_s/r0
        if (r0.finite) out.r0_contour_rho[j] = 1.0 / r0.value;
    }
    return out;
}

} // namespace

DeltaSurface delta_surface(const SurfaceGrid& grid) { return surface_common(grid, true); }

DeltaSurface delta_surface_serial(const SurfaceGrid& grid) {
    return surface_common(grid, false);
}

} // namespace grspin
