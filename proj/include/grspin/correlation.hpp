#pragma once
#include <array>
#include <cstdint>

#include "grspin/transport.hpp"

// Bipartite spin-1/2 states, local spin rotations, spin-spin correlations and
// the CHSH combination, with the measurement-axis sets for the two-observer
// setup (axes expressed in each observer's local triad 1,2,3).

namespace grspin {

// Amplitudes ordered (uu, ud, du, dd) in the product basis of the two local
// frames; kept normalized to 1.
struct TwoSpinState {
    std::array<cplx, 4> amp;
};

struct MeasurementAxis {
    Vec3 n; // unit components along local axes 1, 2, 3
};

struct ChshAxes {
    MeasurementAxis q, r, s, t;
};

// (0, 1, -1, 0)/sqrt(2).
TwoSpinState singlet();

double state_norm(const TwoSpinState& s);

// |<a|b>|: overlap magnitude, insensitive to global phase.
double fidelity(const TwoSpinState& a, const TwoSpinState& b);

// (U+ (x) U-) s: particle at +Phi gets U+, particle at -Phi gets U-.
TwoSpinState evolve_pair(const TwoSpinState& s, const SpinRotation& u_plus,
                         const SpinRotation& u_minus);

// Amplitude transformation into the primed bases that rotate the kets at
// phi = +-Phi about axis 2 through -+Phi; applying it after an evolution by
// angle Theta leaves the state in the Delta = Theta - Phi form.
SpinRotation primed_basis_rotation(double Phi, int side);

// Axis rotated about axis 2: (a1, a2, a3) -> (a1 c - a3 s, a2, a1 s + a3 c).
MeasurementAxis rotate_axis_about_2(const MeasurementAxis& a, double angle);

// <(a.sigma) (x) (b.sigma)>; exact dense expectation in [-1, 1].
double correlation(const TwoSpinState& s, const MeasurementAxis& a,
                   const MeasurementAxis& b);

// <QS> + <RS> + <RT> - <QT> with Q,R on particle +, S,T on particle -.
double chsh(const TwoSpinState& s, const MeasurementAxis& q, const MeasurementAxis& r,
            const MeasurementAxis& s_axis, const MeasurementAxis& t);
double chsh(const TwoSpinState& s, const ChshAxes& axes);

// Q = (1,0,0), R = (0,1,0), S = (-1,-1,0)/sqrt2, T = (1,-1,0)/sqrt2.
ChshAxes standard_chsh_axes();
// The same set with both observers' axes counter-rotated through -+Phi.
ChshAxes standard_chsh_axes_primed(double Phi);
// Counter-rotated through -+Theta; restores the maximal violation.
ChshAxes standard_chsh_axes_optimal(double Theta);

// Entanglement entropy of the reduced one-particle state (natural log).
double entanglement_entropy(const TwoSpinState& s);

// Seeded Monte-Carlo estimate of correlation(); cross-check only.
double correlation_sampled(const TwoSpinState& s, const MeasurementAxis& a,
                           const MeasurementAxis& b, long shots, std::uint64_t seed);

} // namespace grspin
