#pragma once
#include "grspin/kinematics.hpp"

// Builds infinitesimal Wigner rotations from Lorentz generators and carries
// spins along worldlines as ordered products of per-step propagators, with an
// independent little-group route W = L^{-1}(Lambda p) Lambda L(p) as oracle.

namespace grspin {

// vartheta^a_b with zero time row/column and antisymmetric spatial block.
struct RotationGenerator {
    Mat4 m;
    SpacetimePoint x;
};

struct SpinRotation {
    Mat2c u;
};

// Element of the rotation little group: W^T eta W = eta, W^0_0 = 1.
struct LittleGroupElement {
    Mat4 w;
};

enum class StepKind {
    ExactExponential, // default: exact exponential of the per-step generator
    FirstOrder        // literal first-order factor 1 + generator * dtau
};

// vartheta^i_k = lambda^i_k + (lambda^i_0 p_k - lambda_k0 p^i)/(p^0 + m).
RotationGenerator wigner_generator(const LorentzGenerator& lam, const FourVector& p_local,
                                   double mass);

// Spin-1/2 propagator over dtau: 1 + (i/2)(th_23 sx + th_31 sy + th_12 sz) dtau,
// or its exact special-unitary exponential (default).
SpinRotation spin_half_step(const RotationGenerator& th, double dtau,
                            StepKind kind = StepKind::ExactExponential);

// Little-group propagator over dtau (Rodrigues form for the exact variant).
LittleGroupElement little_group_step(const RotationGenerator& th, double dtau,
                                     StepKind kind = StepKind::ExactExponential);

// Pointwise kinematic state of a worldline used by the transports.
struct GeneratorSample {
    RotationGenerator theta;
    LorentzGenerator lambda;
    FourVector p_local;
};
GeneratorSample generators_at(const WorldlineSpec& w, double tau);

struct TransportResult {
    LittleGroupElement little_group;
    SpinRotation spin;
    double angle; // unwrapped rotation angle about axis 2, atan2(W13, W33) + winding
};

// Ordered product of per-step propagators of vartheta(x(tau_k)) h/N; the
// earliest factor acts first (latest factor leftmost).
TransportResult transport_wigner(const WorldlineSpec& w, double tau_i, double tau_f,
                                 long steps, StepKind kind = StepKind::ExactExponential);

// Ordered product of per-step local Lorentz factors of lambda(x(tau_k)) h/N.
LorentzMatrix transport_lorentz(const WorldlineSpec& w, double tau_i, double tau_f,
                                long steps, StepKind kind = StepKind::ExactExponential);

// Theta = +-Phi cosh(xi) [1 - r_s/(2 r f)] sqrt(f): accumulated Wigner angle of
// the circular orbit over azimuthal advance Phi.
double closed_form_circular(double r_s, double r, double xi, double Phi,
                            int direction = +1);

// Standard boost L(p) with L(p) (m,0,0,0) = p; identity in the rest frame.
LorentzMatrix standard_boost(const Vec4& p_local, double mass);

// W(Lambda, p) = L^{-1}(Lambda p) Lambda L(p); fixes the rest momentum.
LittleGroupElement wigner_from_lorentz(const LorentzMatrix& lam, const Vec4& p_local,
                                       double mass);

// Wrapped rotation angle of a little-group element about axis 2.
double rotation_angle(const LittleGroupElement& w);

struct ThomasRate {
    double exact;  // (vartheta^3_1 - chi^3_1) dtau/dt from the flat-space machinery
    double approx; // -v a / 2, a = sinh^2(xi)/r
};
ThomasRate thomas_rate(double r, double xi);

} // namespace grspin
