#pragma once
#include <string>
#include <vector>

#include "grspin/correlation.hpp"

// Scenario-level quantities: the Theta and Delta maps, non-relativistic
// limits, the critical radii r0 / r_c / r_b, position-uncertainty error
// propagation, and the infalling (Kruskal) precession rate.

namespace grspin {

struct ScenarioConfig {
    double r_s = 0.0;     // horizon radius; 0 selects the flat chart
    double r = 1.0;       // orbit radius
    double xi = 0.0;      // rapidity, v/c = tanh(xi)
    double phi = 1.0;     // observer half-separation (radians), > 0
    double dphi = 0.0;    // position uncertainty (radians), >= 0
    int direction = +1;
};

ScenarioConfig make_scenario(double rs_over_r, double v_over_c, double phi, double dphi = 0.0);

// Theta = Phi cosh(xi) [1 - r_s/(2 r f)] sqrt(f); unwrapped, not reduced mod 2 pi.
double theta_angle(const ScenarioConfig& cfg);

// Delta = Theta - Phi.
double delta_angle(const ScenarioConfig& cfg);

// Leading-order Delta ~ Phi (v^2/2 - r_s/r).
double nonrelativistic_delta(const ScenarioConfig& cfg);

// Root result carrying an explicit infinity sentinel (serialized as a string,
// never a float infinity).
struct RootResult {
    bool finite = true;
    double value = 0.0;
    double residual = 0.0;
};

// Radius where Delta vanishes: [1 - r_s/(2 r0 f)] sqrt(f(r0)) = 1/cosh(xi),
// unique in (3 r_s/2, inf). v = 0 has no root (reported as infinite).
RootResult solve_r0(double r_s, double v_over_c);

// dTheta = dPhi |1 + Delta/Phi| = dPhi |Theta/Phi|.
double theta_error(double dphi, const ScenarioConfig& cfg);

// Largest position uncertainty still allowing EPR extraction: pi / |Theta/Phi|.
double epr_position_bound(const ScenarioConfig& cfg);

enum class BellBoundMode {
    PaperLiteral, // sqrt(2) / |Theta/Phi|
    Exact         // acos(2^{-1/4}) / |Theta/Phi|, from 2 sqrt2 cos^2 x = 2
};
double bell_position_bound(const ScenarioConfig& cfg, BellBoundMode mode);

// Smallest radius at which the respective bound equals dphi; below it the
// bound is violated. Not constraining when dphi stays below the bound all the
// way down to r_s (1 + 1e-9).
struct CriticalRadius {
    bool constraining = true;
    double r = 0.0;
    double residual = 0.0;
    std::string reason;
};
CriticalRadius solve_rc(double r_s, double xi, double dphi);
CriticalRadius solve_rb(double r_s, double xi, double dphi, BellBoundMode mode = BellBoundMode::PaperLiteral);

// Infalling precession rate, finite and continuous across the horizon:
// +- (cosh sh /r) [3 + r/r_s] sqrt(F) R / (4 r_s).
double kruskal_precession_rate(double r_s, const SpacetimePoint& x, double xi,
                               int direction = +1);

// Static-chart precession rate (magnitude of the per-proper-time generator).
double static_precession_rate(double r_s, double r, double xi);

// ---------------------------------------------------------------------------
// Delta surface sweep (embarrassingly parallel; bit-identical across thread
// counts because every cell is a pure function evaluated independently).

struct SurfaceGrid {
    double rho_min = 0.0, rho_max = 0.99; // r_s / r
    int n_rho = 101;
    double v_min = 0.0, v_max = 0.99; // v / c
    int n_v = 101;
};

struct DeltaSurface {
    SurfaceGrid grid;
    std::vector<double> delta_over_phi; // row-major, rho outer, v inner
    std::vector<double> r0_contour_rho; // per v column: r_s/r0(v); NaN when no root
};

double delta_over_phi_cell(double rho, double v_over_c);

DeltaSurface delta_surface(const SurfaceGrid& grid);        // OpenMP kernel
DeltaSurface delta_surface_serial(const SurfaceGrid& grid); // reference implementation

} // namespace grspin
