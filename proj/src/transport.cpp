#include "grspin/transport.hpp"

#include <cmath>

namespace grspin {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_phi(double phi) {
    double p = std::fmod(phi, kTwoPi);
    if (p < 0.0) p += kTwoPi;
    return p;
}

// Axial vector of the spatial block: omega = (th^3_2, th^1_3, th^2_1).
Vec3 axial(const Mat4& th) { return {th[3][2], th[1][3], th[2][1]}; }

struct CircularParams {
    double r_s, r, xi;
    int direction;
};

CircularParams circular_params(const WorldlineSpec& w) {
    if (std::holds_alternative<CircularOrbit>(w)) {
        const auto& c = std::get<CircularOrbit>(w);
        return {c.r_s, c.r, c.xi, c.direction};
    }
    if (std::holds_alternative<FlatCircular>(w)) {
        const auto& c = std::get<FlatCircular>(w);
        return {0.0, c.r, c.xi, c.direction};
    }
    throw DomainError(
        "infalling worldline is specified pointwise only and cannot be transported");
}

} // namespace

RotationGenerator wigner_generator(const LorentzGenerator& lam, const FourVector& p_local,
                                   double mass) {
    if (p_local.frame != FrameTag::Local)
        throw FrameMismatch("wigner_generator needs a local-frame momentum");
    if (!same_point(lam.x, p_local.x))
        throw FrameMismatch("generator and momentum at different points");
    const Mat4 eta = eta4();
    Vec4 p_low{};
    for (int i = 0; i < 4; ++i) p_low[i] = eta[i][i] * p_local.v[i];
    const double denom = p_local.v[0] + mass;

    RotationGenerator th{Mat4::zero(), lam.x};
    for (int i = 1; i < 4; ++i)
        for (int k = 1; k < 4; ++k) {
            const double lam_k0 = eta[k][k] * lam.m[k][0]; // lambda_{k0}
            th.m[i][k] =
                lam.m[i][k] + (lam.m[i][0] * p_low[k] - lam_k0 * p_local.v[i]) / denom;
        }
    return th;
}

SpinRotation spin_half_step(const RotationGenerator& th, double dtau, StepKind kind) {
    const Vec3 w = axial(th.m);
    if (kind == StepKind::ExactExponential)
        return SpinRotation{su2_exp({w[0] * dtau, w[1] * dtau, w[2] * dtau})};
    // 1 + (i/2)(th_23 sx + th_31 sy + th_12 sz) dtau  ==  1 - (i/2)(w . sigma) dtau
    Mat2c u = Mat2c::identity();
    const cplx i(0.0, 1.0);
    const double h = 0.5 * dtau;
    u[0][0] += -i * (h * w[2]);
    u[0][1] += -i * (h * w[0]) - h * w[1];
    u[1][0] += -i * (h * w[0]) + h * w[1];
    u[1][1] += i * (h * w[2]);
    return SpinRotation{u};
}

LittleGroupElement little_group_step(const RotationGenerator& th, double dtau,
                                     StepKind kind) {
    if (kind == StepKind::FirstOrder) {
        LittleGroupElement w{Mat4::identity()};
        for (int i = 1; i < 4; ++i)
            for (int k = 1; k < 4; ++k) w.w[i][k] += th.m[i][k] * dtau;
        return w;
    }
    // Rodrigues rotation on the spatial block.
    const Vec3 om = axial(th.m);
    const double rate = std::sqrt(om[0] * om[0] + om[1] * om[1] + om[2] * om[2]);
    LittleGroupElement w{Mat4::identity()};
    if (rate == 0.0 || dtau == 0.0) return w;
    const double ang = rate * dtau;
    const Vec3 n{om[0] / rate, om[1] / rate, om[2] / rate};
    const double c = std::cos(ang), s = std::sin(ang), v = 1.0 - c;
    const double K[3][3] = {{0, -n[2], n[1]}, {n[2], 0, -n[0]}, {-n[1], n[0], 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double k2 = 0.0;
            for (int l = 0; l < 3; ++l) k2 += K[i][l] * K[l][j];
            w.w[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + s * K[i][j] + v * k2;
        }
    return w;
}

GeneratorSample generators_at(const WorldlineSpec& w, double tau) {
    const CircularParams c = circular_params(w);
    const ChartId chart = (c.r_s == 0.0) ? ChartId::Minkowski : ChartId::SchwarzschildStatic;

    FourVector u = circular_velocity(c.r_s, c.r, c.xi, c.direction);
    const SpacetimePoint x{chart,
                           {u.v[0] * tau, c.r, kPi / 2.0, wrap_phi(u.v[3] * tau)}};
    u.x = x;
    FourVector a = circular_acceleration(c.r_s, c.r, c.xi);
    a.x = x;

    Vierbein vb = vierbein_at(chart, c.r_s, x);
    const ConnectionOneForm om = spin_connection(chart, c.r_s, x, vb);
    const LorentzGenerator chi = chi_generator(u, om);
    const FourVector p = local_momentum(vb, 1.0, u);
    const FourVector a_loc = to_local_frame(vb, a);
    const LorentzGenerator lam = lambda_generator(a_loc, p, chi, 1.0);
    return GeneratorSample{wigner_generator(lam, p, 1.0), lam, p};
}

TransportResult transport_wigner(const WorldlineSpec& w, double tau_i, double tau_f,
                                 long steps, StepKind kind) {
    if (steps < 1) throw DomainError("transport needs steps >= 1");
    TransportResult out{LittleGroupElement{Mat4::identity()}, SpinRotation{Mat2c::identity()},
                        0.0};
    if (tau_i == tau_f) return out;

    const double h = (tau_f - tau_i) / static_cast<double>(steps);
    double prev_wrapped = 0.0;
    for (long k = 0; k < steps; ++k) {
        const double tau = tau_i + h * static_cast<double>(k);
        const GeneratorSample gs = generators_at(w, tau);
        const LittleGroupElement wk = little_group_step(gs.theta, h, kind);
        const SpinRotation uk = spin_half_step(gs.theta, h, kind);
        out.little_group.w = wk.w * out.little_group.w;
        out.spin.u = uk.u * out.spin.u;

        // Unwrap the axis-2 angle; per-step advance stays well below pi.
        const double wrapped = rotation_angle(out.little_group);
        double d = wrapped - prev_wrapped;
        if (d > kPi) d -= kTwoPi;
        if (d < -kPi) d += kTwoPi;
        out.angle += d;
        prev_wrapped = wrapped;
    }
    return out;
}

LorentzMatrix transport_lorentz(const WorldlineSpec& w, double tau_i, double tau_f,
                                long steps, StepKind kind) {
    if (steps < 1) throw DomainError("transport needs steps >= 1");
    LorentzMatrix out{Mat4::identity()};
    if (tau_i == tau_f) return out;

    const double h = (tau_f - tau_i) / static_cast<double>(steps);
    for (long k = 0; k < steps; ++k) {
        const double tau = tau_i + h * static_cast<double>(k);
        const GeneratorSample gs = generators_at(w, tau);
        Mat4 step;
        if (kind == StepKind::FirstOrder)
            step = Mat4::identity() + h * gs.lambda.m;
        else
            step = expm(h * gs.lambda.m);
        out.lam = step * out.lam;
    }
    return out;
}

double closed_form_circular(double r_s, double r, double xi, double Phi, int direction) {
    const double f = (r_s == 0.0) ? 1.0 : schwarzschild_f(r_s, r);
    if (r_s > 0.0 && !(f > 0.0))
        throw HorizonSingularity("circular orbit requires r > r_s");
    const double bracket = 1.0 - r_s / (2.0 * r * f);
    return direction * Phi * std::cosh(xi) * bracket * std::sqrt(f);
}

LorentzMatrix standard_boost(const Vec4& p_local, double mass) {
    const double p2 =
        p_local[1] * p_local[1] + p_local[2] * p_local[2] + p_local[3] * p_local[3];
    LorentzMatrix L{Mat4::identity()};
    if (p2 == 0.0) return L; // rest momentum: identity boost
    const double gamma = std::sqrt(p2 + mass * mass) / mass;
    L.lam[0][0] = gamma;
    for (int i = 1; i < 4; ++i) {
        L.lam[0][i] = p_local[i] / mass;
        L.lam[i][0] = p_local[i] / mass;
        for (int k = 1; k < 4; ++k)
            L.lam[i][k] = (i == k ? 1.0 : 0.0) + (gamma - 1.0) * p_local[i] * p_local[k] / p2;
    }
    return L;
}

LittleGroupElement wigner_from_lorentz(const LorentzMatrix& lam, const Vec4& p_local,
                                       double mass) {
    const Vec4 q = lam.lam * p_local;
    if (!(q[0] > 0.0)) throw DomainError("transformed momentum has nonpositive energy");
    const Mat4 eta = eta4();
    const Mat4 Linv = eta * transpose(standard_boost(q, mass).lam) * eta;
    return LittleGroupElement{Linv * lam.lam * standard_boost(p_local, mass).lam};
}

double rotation_angle(const LittleGroupElement& w) {
    return std::atan2(w.w[1][3], w.w[3][3]);
}

ThomasRate thomas_rate(double r, double xi) {
    const GeneratorSample gs = generators_at(FlatCircular{r, xi, +1}, 0.0);
    const FourVector u = circular_velocity(0.0, r, xi, +1);

    const Vierbein vb = vierbein_at(ChartId::Minkowski, 0.0, gs.theta.x);
    const ConnectionOneForm om = spin_connection(ChartId::Minkowski, 0.0, gs.theta.x, vb);
    FourVector u_at = u;
    u_at.x = gs.theta.x;
    const LorentzGenerator chi = chi_generator(u_at, om);

    const double dtau_dt = 1.0 / u.v[0];
    const double sh = std::sinh(xi);
    ThomasRate tr{};
    tr.exact = (gs.theta.m[3][1] - chi.m[3][1]) * dtau_dt;
    tr.approx = -std::tanh(xi) * (sh * sh / r) / 2.0;
    return tr;
}

} // namespace grspin
