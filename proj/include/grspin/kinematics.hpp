#pragma once
#include <variant>

#include "grspin/geometry.hpp"

// Four-velocities, accelerations, local-frame momenta and the infinitesimal
// Lorentz generators chi (frame change) and lambda (frame change + thrust)
// along the prescribed worldlines.

namespace grspin {

enum class FrameTag { Coordinate, Local };

struct FourVector {
    FrameTag frame;
    Vec4 v;
    SpacetimePoint x;
};

// Equatorial circular motion at fixed r in the static chart. direction is the
// sign of u^phi. Rapidity xi is the canonical speed parameter, v/c = tanh(xi).
struct CircularOrbit {
    double r_s;
    double r;
    double xi;
    int direction = +1;
};

// Flat-space circular motion; the r_s = 0 special case.
struct FlatCircular {
    double r;
    double xi;
    int direction = +1;
};

// Infalling family in the Kruskal chart, moving in +-phi while falling. Only
// the pointwise precession rate is defined for it; no trajectory x(tau) is
// prescribed, so it cannot be transported.
struct KruskalFall {
    double r_s;
    double xi;
    int direction = +1;
    double T0 = 0.0;
    double R0 = 0.0;
};

using WorldlineSpec = std::variant<CircularOrbit, FlatCircular, KruskalFall>;

// Antisymmetric-when-lowered generator in mixed form, stored as m[a][b] = X^a_b.
struct LorentzGenerator {
    Mat4 m;
    SpacetimePoint x;
};

// u^t = cosh(xi)/sqrt(f), u^phi = +-sinh(xi)/r on the equator; u.u = -1.
FourVector circular_velocity(double r_s, double r, double xi, int direction = +1);

// External-force acceleration of the circular orbit; purely radial,
// a^r = (r_s/2r^2) cosh^2(xi) - (f/r) sinh^2(xi), regular at xi = 0.
FourVector circular_acceleration(double r_s, double r, double xi);

// u~^T = cosh(xi)/sqrt(F), u~^phi = +-sinh(xi)/r; finite at the horizon.
FourVector kruskal_velocity(double r_s, const SpacetimePoint& x, double xi,
                            int direction = +1);

// Covariant derivative of the prescribed Kruskal velocity field along itself.
FourVector kruskal_field_acceleration(double r_s, const SpacetimePoint& x, double xi,
                                      int direction = +1);

// chi^a_b = -u^mu omega_mu^a_b: generator of the local-frame change.
LorentzGenerator chi_generator(const FourVector& u, const ConnectionOneForm& om);

// lambda^a_b = -(a^a p_b - p^a a_b)/m + chi^a_b with a, p in the local frame.
LorentzGenerator lambda_generator(const FourVector& a_local, const FourVector& p_local,
                                  const LorentzGenerator& chi, double mass);

// p^a = e^a_mu m u^mu.
FourVector local_momentum(const Vierbein& vb, double mass, const FourVector& u);

// Frame transform of any coordinate vector (used for the local acceleration).
FourVector to_local_frame(const Vierbein& vb, const FourVector& v);

// Trivial rotation rate about axis 2, varphi^1_3 = u^phi = sinh(xi)/r.
double trivial_rotation_rate(double r, double xi);

} // namespace grspin
