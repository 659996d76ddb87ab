#include "grspin/kinematics.hpp"

#include <cmath>

namespace grspin {

namespace {

constexpr double kPi = 3.14159265358979323846;

SpacetimePoint equator_point(ChartId chart, double r) {
    return SpacetimePoint{chart, {0.0, r, kPi / 2.0, 0.0}};
}

} // namespace

FourVector circular_velocity(double r_s, double r, double xi, int direction) {
    if (direction != 1 && direction != -1) throw DomainError("direction must be +1 or -1");
    const ChartId chart = (r_s == 0.0) ? ChartId::Minkowski : ChartId::SchwarzschildStatic;
    const SpacetimePoint x = equator_point(chart, r);
    validate_point(chart, r_s, x);
    const double f = (r_s == 0.0) ? 1.0 : schwarzschild_f(r_s, r);
    FourVector u{FrameTag::Coordinate, {0, 0, 0, 0}, x};
    u.v[0] = std::cosh(xi) / std::sqrt(f);
    u.v[3] = direction * std::sinh(xi) / r;
    return u;
}

FourVector circular_acceleration(double r_s, double r, double xi) {
    const ChartId chart = (r_s == 0.0) ? ChartId::Minkowski : ChartId::SchwarzschildStatic;
    const SpacetimePoint x = equator_point(chart, r);
    validate_point(chart, r_s, x);
    const double f = (r_s == 0.0) ? 1.0 : schwarzschild_f(r_s, r);
    const double ch = std::cosh(xi), sh = std::sinh(xi);
    FourVector a{FrameTag::Coordinate, {0, 0, 0, 0}, x};
    // Gamma^r_tt (u^t)^2 + Gamma^r_phiphi (u^phi)^2, expanded; no 0*inf at xi = 0.
    a.v[1] = (r_s / (2.0 * r * r)) * ch * ch - (f / r) * sh * sh;
    return a;
}

FourVector kruskal_velocity(double r_s, const SpacetimePoint& x, double xi, int direction) {
    if (direction != 1 && direction != -1) throw DomainError("direction must be +1 or -1");
    validate_point(ChartId::Kruskal, r_s, x);
    const double r = kruskal_r(r_s, x);
    FourVector u{FrameTag::Coordinate, {0, 0, 0, 0}, x};
    u.v[0] = std::cosh(xi) / std::sqrt(kruskal_F(r_s, r));
    u.v[3] = direction * std::sinh(xi) / r;
    return u;
}

FourVector kruskal_field_acceleration(double r_s, const SpacetimePoint& x, double xi,
                                      int direction) {
    validate_point(ChartId::Kruskal, r_s, x);
    const double r = kruskal_r(r_s, x);
    const double F = kruskal_F(r_s, r);
    const double dF = -F * (1.0 / r + 1.0 / r_s);
    const double ch = std::cosh(xi), sh = std::sinh(xi);

    // u^T = ch F^{-1/2}, u^phi = +-sh/r depend on position through r(T,R).
    const double dr[2] = {-x.coords[0] * F / (2.0 * r_s), x.coords[1] * F / (2.0 * r_s)};
    const FourVector u = kruskal_velocity(r_s, x, xi, direction);
    const double duT_dr = -0.5 * ch * std::pow(F, -1.5) * dF;
    const double duP_dr = -direction * sh / (r * r);

    Vec4 adv{0, 0, 0, 0}; // u^nu d_nu u^mu (only T and R derivatives survive)
    for (int s = 0; s < 2; ++s) {
        adv[0] += u.v[s] * duT_dr * dr[s];
        adv[3] += u.v[s] * duP_dr * dr[s];
    }

    const Christoffel gam = christoffel_at(ChartId::Kruskal, r_s, x);
    FourVector a{FrameTag::Coordinate, adv, x};
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int p = 0; p < 4; ++p) a.v[m] += gam.g[m][n][p] * u.v[n] * u.v[p];
    return a;
}

LorentzGenerator chi_generator(const FourVector& u, const ConnectionOneForm& om) {
    if (u.frame != FrameTag::Coordinate)
        throw FrameMismatch("chi_generator needs a coordinate-frame four-velocity");
    if (!same_point(u.x, om.x))
        throw FrameMismatch("four-velocity and connection evaluated at different points");
    LorentzGenerator chi{Mat4::zero(), u.x};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int mu = 0; mu < 4; ++mu) s += u.v[mu] * om.w[mu][a][b];
            chi.m[a][b] = -s;
        }
    return chi;
}

LorentzGenerator lambda_generator(const FourVector& a_local, const FourVector& p_local,
                                  const LorentzGenerator& chi, double mass) {
    if (a_local.frame != FrameTag::Local || p_local.frame != FrameTag::Local)
        throw FrameMismatch("lambda_generator needs local-frame acceleration and momentum");
    if (!same_point(a_local.x, p_local.x) || !same_point(a_local.x, chi.x))
        throw FrameMismatch("lambda_generator inputs at different points");
    const Mat4 eta = eta4();
    Vec4 p_low{}, a_low{};
    for (int i = 0; i < 4; ++i) {
        p_low[i] = eta[i][i] * p_local.v[i];
        a_low[i] = eta[i][i] * a_local.v[i];
    }
    LorentzGenerator lam{Mat4::zero(), a_local.x};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            lam.m[a][b] =
                -(a_local.v[a] * p_low[b] - p_local.v[a] * a_low[b]) / mass + chi.m[a][b];
    return lam;
}

FourVector local_momentum(const Vierbein& vb, double mass, const FourVector& u) {
    if (u.frame != FrameTag::Coordinate)
        throw FrameMismatch("local_momentum needs a coordinate-frame four-velocity");
    if (!same_point(vb.x, u.x))
        throw FrameMismatch("vierbein and four-velocity at different points");
    FourVector p{FrameTag::Local, {0, 0, 0, 0}, u.x};
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) p.v[a] += vb.e_inv[a][mu] * mass * u.v[mu];
    return p;
}

FourVector to_local_frame(const Vierbein& vb, const FourVector& v) {
    if (v.frame != FrameTag::Coordinate)
        throw FrameMismatch("to_local_frame needs a coordinate-frame vector");
    if (!same_point(vb.x, v.x)) throw FrameMismatch("vierbein and vector at different points");
    FourVector out{FrameTag::Local, {0, 0, 0, 0}, v.x};
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu) out.v[a] += vb.e_inv[a][mu] * v.v[mu];
    return out;
}

double trivial_rotation_rate(double r, double xi) { return std::sinh(xi) / r; }

} // namespace grspin
