#pragma once
#include <utility>

#include "grspin/errors.hpp"
#include "grspin/mat.hpp"

// Metrics, vierbeins, Christoffel symbols, spin connections and chart maps
// for three charts of Schwarzschild spacetime (geometric units, c = 1):
//
//   Minkowski            spherical (t, r, theta, phi), flat
//   SchwarzschildStatic  (t, r, theta, phi), valid only for r > r_s
//   Kruskal              (T, R, theta, phi), regular at the horizon,
//                        regions I and II (R > 0, r > 0)
//
// Conventions: signature (-,+,+,+); local-frame labels a,b = 0..3; the frame
// field e_a^mu is stored with rows indexed by a, columns by mu, and likewise
// for its inverse e^a_mu.

namespace grspin {

enum class ChartId { Minkowski, SchwarzschildStatic, Kruskal };

struct SpacetimePoint {
    ChartId chart;
    Vec4 coords; // (t, r, theta, phi) or (T, R, theta, phi)
};

inline bool same_point(const SpacetimePoint& x, const SpacetimePoint& y) {
    return x.chart == y.chart && x.coords == y.coords;
}

struct MetricTensor {
    Mat4 g;
    Mat4 g_inv;
};

struct Vierbein {
    Mat4 e;     // e[a][mu]     = e_a^mu  (frame field)
    Mat4 e_inv; // e_inv[a][mu] = e^a_mu  (its inverse)
    SpacetimePoint x;
};

struct ConnectionOneForm {
    double w[4][4][4]; // w[mu][a][b] = omega_mu^a_b
    SpacetimePoint x;
};

struct Christoffel {
    double g[4][4][4]; // g[lam][mu][nu] = Gamma^lam_{mu nu}
};

// Lorentz transformation in mixed form, Lambda^a_b.
struct LorentzMatrix {
    Mat4 lam;
};

inline double schwarzschild_f(double r_s, double r) { return 1.0 - r_s / r; }

// F(r) = (r_s/r) exp(-r/r_s); metric function of the Kruskal chart.
inline double kruskal_F(double r_s, double r) { return (r_s / r) * std::exp(-r / r_s); }

// Radius r(T,R) implied by a Kruskal point (root of the defining relation).
double kruskal_r(double r_s, const SpacetimePoint& x);

MetricTensor metric_at(ChartId chart, double r_s, const SpacetimePoint& x);

// Static-frame vierbein of the static chart; diverges at the horizon.
Vierbein static_vierbein(double r_s, const SpacetimePoint& x);

// Infalling-frame vierbein of the Kruskal chart; finite at the horizon.
Vierbein kruskal_vierbein(double r_s, const SpacetimePoint& x);

// Chart-appropriate vierbein (static/flat charts share the static gauge).
Vierbein vierbein_at(ChartId chart, double r_s, const SpacetimePoint& x);

// omega_mu^a_b = e^a_nu (d_mu e_b^nu + Gamma^nu_{mu rho} e_b^rho),
// assembled from analytic vierbein derivatives and analytic Christoffels.
ConnectionOneForm spin_connection(ChartId chart, double r_s, const SpacetimePoint& x,
                                  const Vierbein& vb);

// Christoffel symbols from closed-form metric derivatives.
Christoffel christoffel_at(ChartId chart, double r_s, const SpacetimePoint& x);

// Central-difference fallback built on metric_at only; test oracle for the
// analytic path. Default relative step 1e-6 (static charts); the Kruskal
// chart uses 1e-5 because the signal q = R^2 - T^2 changes by only ~1e-8 of
// itself across a 1e-6 stencil at large coordinates, drowning in roundoff.
// rel_step > 0 overrides, h = rel_step * max(|coordinate|, r_s).
Christoffel christoffel_fd(ChartId chart, double r_s, const SpacetimePoint& x,
                           double rel_step = 0.0);

// Exterior map (t, r) -> (T, R) with R > 0; rejects r <= r_s.
std::pair<double, double> kruskal_from_static(double r_s, double t, double r);

// Inverse radius map: unique r > 0 with 4 r_s (r - r_s) e^{r/r_s} = R^2 - T^2.
// Returns r < r_s for interior points (R^2 - T^2 < 0).
double r_from_kruskal(double r_s, double T, double R);

// Boost along axis 1 relating the static frame to the infalling frame at an
// exterior point; returned in mixed form Lambda^a_b.
LorentzMatrix boost_between_frames(double r_s, const SpacetimePoint& x);

// Jacobian d x_Kruskal / d x_static at an exterior event, rows (T,R,th,ph),
// columns (t,r,th,ph). Used to compare vierbeins across charts.
Mat4 static_to_kruskal_jacobian(double r_s, double t, double r);

// Throws the typed error appropriate to an invalid point in the chart.
void validate_point(ChartId chart, double r_s, const SpacetimePoint& x);

} // namespace grspin
