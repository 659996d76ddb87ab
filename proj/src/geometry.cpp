#include "grspin/geometry.hpp"

#include <cmath>
#include <string>

namespace grspin {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Static-chart operations reject r <= r_s (1 + 1e-12) so divergent metric
// components never leak out as infinities.
constexpr double kHorizonGuard = 1e-12;

double require_static_r(double r_s, double r) {
    if (!(r > r_s * (1.0 + kHorizonGuard)) || r <= 0.0)
        throw HorizonSingularity("static chart invalid at r = " + std::to_string(r) +
                                 " (horizon r_s = " + std::to_string(r_s) + ")");
    return r;
}

void require_theta(double theta) {
    if (!(theta > 0.0 && theta < kPi))
        throw DomainError("theta outside (0, pi): " + std::to_string(theta));
}

// G(r) = 4 r_s (r - r_s) e^{r/r_s}, monotone increasing on r > 0.
double kruskal_quadratic(double r_s, double r) {
    return 4.0 * r_s * (r - r_s) * std::exp(r / r_s);
}

} // namespace

void validate_point(ChartId chart, double r_s, const SpacetimePoint& x) {
    if (x.chart != chart) throw FrameMismatch("point chart does not match requested chart");
    require_theta(x.coords[2]);
    switch (chart) {
        case ChartId::Minkowski:
            if (!(x.coords[1] > 0.0)) throw DomainError("flat spherical chart needs r > 0");
            break;
        case ChartId::SchwarzschildStatic:
            require_static_r(r_s, x.coords[1]);
            break;
        case ChartId::Kruskal:
            kruskal_r(r_s, x); // throws PhysicalSingularity if r(T,R) <= 0
            break;
    }
}

double r_from_kruskal(double r_s, double T, double R) {
    const double q = R * R - T * T;
    if (q <= -4.0 * r_s * r_s)
        throw PhysicalSingularity("Kruskal point at or beyond r = 0 (R^2 - T^2 <= -4 r_s^2)");
    if (q == 0.0) return r_s;

    // Bracket the monotone G(r) = q, then bisect and polish with Newton.
    double lo, hi;
    if (q > 0.0) {
        lo = r_s;
        hi = 2.0 * r_s;
        while (kruskal_quadratic(r_s, hi) < q) hi *= 2.0;
    } else {
        lo = 1e-300;
        hi = r_s;
    }
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * std::max(r, r_s); ++it) {
        if (kruskal_quadratic(r_s, r) < q)
            lo = r;
        else
            hi = r;
        r = 0.5 * (lo + hi);
    }
    // Newton polish; G is monotone and convex, and r is already within
    // 1e-10 of the root, so the unguarded iteration is safe.
    for (int it = 0; it < 10; ++it) {
        const double g = kruskal_quadratic(r_s, r) - q;
        const double dg = 4.0 * r * std::exp(r / r_s); // G'(r)
        const double rn = r - g / dg;
        if (!(rn > 0.0) || rn == r) break;
        r = rn;
    }
    if (!(r > 0.0))
        throw PhysicalSingularity("Kruskal point maps to r <= 0");
    return r;
}

double kruskal_r(double r_s, const SpacetimePoint& x) {
    if (x.chart != ChartId::Kruskal) throw FrameMismatch("kruskal_r needs a Kruskal point");
    return r_from_kruskal(r_s, x.coords[0], x.coords[1]);
}

std::pair<double, double> kruskal_from_static(double r_s, double t, double r) {
    if (!(r > r_s)) throw DomainError("exterior Kruskal map requires r > r_s");
    // R = A cosh(t/2r_s), T = A sinh(t/2r_s), A = 2 sqrt(r_s (r - r_s)) e^{r/2r_s}
    const double A = 2.0 * std::sqrt(r_s * (r - r_s)) * std::exp(r / (2.0 * r_s));
    const double u = t / (2.0 * r_s);
    return {A * std::sinh(u), A * std::cosh(u)};
}

MetricTensor metric_at(ChartId chart, double r_s, const SpacetimePoint& x) {
    if (r_s < 0.0) throw DomainError("r_s must be nonnegative");
    validate_point(chart, r_s, x);
    const double theta = x.coords[2];
    const double st = std::sin(theta);

    MetricTensor m{Mat4::zero(), Mat4::zero()};
    if (chart == ChartId::Kruskal) {
        const double r = kruskal_r(r_s, x);
        const double F = kruskal_F(r_s, r);
        m.g[0][0] = -F;
        m.g[1][1] = F;
        m.g[2][2] = r * r;
        m.g[3][3] = r * r * st * st;
    } else {
        const double r = x.coords[1];
        const double f = (chart == ChartId::Minkowski) ? 1.0 : schwarzschild_f(r_s, r);
        m.g[0][0] = -f;
        m.g[1][1] = 1.0 / f;
        m.g[2][2] = r * r;
        m.g[3][3] = r * r * st * st;
    }
    for (int i = 0; i < 4; ++i) m.g_inv[i][i] = 1.0 / m.g[i][i];
    return m;
}

Vierbein static_vierbein(double r_s, const SpacetimePoint& x) {
    if (x.chart == ChartId::Kruskal) throw FrameMismatch("static vierbein needs a static point");
    require_theta(x.coords[2]);
    const double r = (x.chart == ChartId::Minkowski) ? x.coords[1]
                                                     : require_static_r(r_s, x.coords[1]);
    const double f = (x.chart == ChartId::Minkowski) ? 1.0 : schwarzschild_f(r_s, r);
    const double sf = std::sqrt(f);
    const double st = std::sin(x.coords[2]);

    Vierbein vb{Mat4::zero(), Mat4::zero(), x};
    vb.e[0][0] = 1.0 / sf;
    vb.e[1][1] = sf;
    vb.e[2][2] = 1.0 / r;
    vb.e[3][3] = 1.0 / (r * st);
    vb.e_inv[0][0] = sf;
    vb.e_inv[1][1] = 1.0 / sf;
    vb.e_inv[2][2] = r;
    vb.e_inv[3][3] = r * st;
    return vb;
}

Vierbein kruskal_vierbein(double r_s, const SpacetimePoint& x) {
    if (x.chart != ChartId::Kruskal) throw FrameMismatch("Kruskal vierbein needs a Kruskal point");
    require_theta(x.coords[2]);
    const double r = kruskal_r(r_s, x);
    const double sF = std::sqrt(kruskal_F(r_s, r));
    const double st = std::sin(x.coords[2]);

    Vierbein vb{Mat4::zero(), Mat4::zero(), x};
    vb.e[0][0] = 1.0 / sF;
    vb.e[1][1] = 1.0 / sF;
    vb.e[2][2] = 1.0 / r;
    vb.e[3][3] = 1.0 / (r * st);
    vb.e_inv[0][0] = sF;
    vb.e_inv[1][1] = sF;
    vb.e_inv[2][2] = r;
    vb.e_inv[3][3] = r * st;
    return vb;
}

Vierbein vierbein_at(ChartId chart, double r_s, const SpacetimePoint& x) {
    return chart == ChartId::Kruskal ? kruskal_vierbein(r_s, x) : static_vierbein(r_s, x);
}

namespace {

// Closed-form metric derivatives dg[sig][mu][nu] = d_sig g_{mu nu}.
void metric_partials(ChartId chart, double r_s, const SpacetimePoint& x,
                     double dg[4][4][4]) {
    for (int s = 0; s < 4; ++s)
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) dg[s][m][n] = 0.0;

    const double theta = x.coords[2];
    const double st = std::sin(theta), ct = std::cos(theta);

    if (chart == ChartId::Kruskal) {
        const double r = kruskal_r(r_s, x);
        const double F = kruskal_F(r_s, r);
        const double dF = -F * (1.0 / r + 1.0 / r_s);
        // dr/dT = -T F / 2 r_s,  dr/dR = +R F / 2 r_s
        const double dr[2] = {-x.coords[0] * F / (2.0 * r_s), x.coords[1] * F / (2.0 * r_s)};
        for (int s = 0; s < 2; ++s) {
            dg[s][0][0] = -dF * dr[s];
            dg[s][1][1] = dF * dr[s];
            dg[s][2][2] = 2.0 * r * dr[s];
            dg[s][3][3] = 2.0 * r * st * st * dr[s];
        }
        dg[2][3][3] = 2.0 * r * r * st * ct;
    } else {
        const double r = x.coords[1];
        const double f = (chart == ChartId::Minkowski) ? 1.0 : schwarzschild_f(r_s, r);
        const double df = (chart == ChartId::Minkowski) ? 0.0 : r_s / (r * r);
        dg[1][0][0] = -df;
        dg[1][1][1] = -df / (f * f);
        dg[1][2][2] = 2.0 * r;
        dg[1][3][3] = 2.0 * r * st * st;
        dg[2][3][3] = 2.0 * r * r * st * ct;
    }
}

Christoffel christoffel_from_partials(const MetricTensor& m, const double dg[4][4][4]) {
    Christoffel c{};
    for (int l = 0; l < 4; ++l)
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                double s = 0.0;
                for (int p = 0; p < 4; ++p)
                    s += m.g_inv[l][p] * (dg[mu][p][nu] + dg[nu][p][mu] - dg[p][mu][nu]);
                c.g[l][mu][nu] = 0.5 * s;
            }
    return c;
}

} // namespace

Christoffel christoffel_at(ChartId chart, double r_s, const SpacetimePoint& x) {
    const MetricTensor m = metric_at(chart, r_s, x);
    double dg[4][4][4];
    metric_partials(chart, r_s, x, dg);
    return christoffel_from_partials(m, dg);
}

Christoffel christoffel_fd(ChartId chart, double r_s, const SpacetimePoint& x,
                           double rel_step) {
    const MetricTensor m = metric_at(chart, r_s, x);
    if (rel_step <= 0.0) rel_step = (chart == ChartId::Kruskal) ? 1e-5 : 1e-6;
    double dg[4][4][4];
    for (int s = 0; s < 4; ++s) {
        const double h = rel_step * std::max(std::fabs(x.coords[s]), std::max(r_s, 1e-3));
        SpacetimePoint xp = x, xm = x;
        xp.coords[s] += h;
        xm.coords[s] -= h;
        const MetricTensor gp = metric_at(chart, r_s, xp);
        const MetricTensor gm = metric_at(chart, r_s, xm);
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu)
                dg[s][mu][nu] = (gp.g[mu][nu] - gm.g[mu][nu]) / (2.0 * h);
    }
    return christoffel_from_partials(m, dg);
}

namespace {

// Analytic partials of the frame field, de[mu][b][nu] = d_mu e_b^nu.
void vierbein_partials(ChartId chart, double r_s, const SpacetimePoint& x,
                       double de[4][4][4]) {
    for (int m = 0; m < 4; ++m)
        for (int b = 0; b < 4; ++b)
            for (int n = 0; n < 4; ++n) de[m][b][n] = 0.0;

    const double theta = x.coords[2];
    const double st = std::sin(theta), ct = std::cos(theta);

    if (chart == ChartId::Kruskal) {
        const double r = kruskal_r(r_s, x);
        const double F = kruskal_F(r_s, r);
        const double dF = -F * (1.0 / r + 1.0 / r_s);
        const double dr[2] = {-x.coords[0] * F / (2.0 * r_s), x.coords[1] * F / (2.0 * r_s)};
        const double dinv_sqrtF = -0.5 * std::pow(F, -1.5) * dF; // d/dr F^{-1/2}
        for (int s = 0; s < 2; ++s) {
            de[s][0][0] = dinv_sqrtF * dr[s];
            de[s][1][1] = dinv_sqrtF * dr[s];
            de[s][2][2] = -dr[s] / (r * r);
            de[s][3][3] = -dr[s] / (r * r * st);
        }
        de[2][3][3] = -ct / (r * st * st);
    } else {
        const double r = x.coords[1];
        const double f = (chart == ChartId::Minkowski) ? 1.0 : schwarzschild_f(r_s, r);
        const double df = (chart == ChartId::Minkowski) ? 0.0 : r_s / (r * r);
        de[1][0][0] = -0.5 * std::pow(f, -1.5) * df;
        de[1][1][1] = 0.5 * df / std::sqrt(f);
        de[1][2][2] = -1.0 / (r * r);
        de[1][3][3] = -1.0 / (r * r * st);
        de[2][3][3] = -ct / (r * st * st);
    }
}

} // namespace

ConnectionOneForm spin_connection(ChartId chart, double r_s, const SpacetimePoint& x,
                                  const Vierbein& vb) {
    if (!same_point(vb.x, x)) throw FrameMismatch("vierbein evaluated at a different point");
    const Christoffel gam = christoffel_at(chart, r_s, x);
    double de[4][4][4];
    vierbein_partials(chart, r_s, x, de);

    ConnectionOneForm om{};
    om.x = x;
    for (int mu = 0; mu < 4; ++mu)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double s = 0.0;
                for (int nu = 0; nu < 4; ++nu) {
                    double cov = de[mu][b][nu];
                    for (int rho = 0; rho < 4; ++rho) cov += gam.g[nu][mu][rho] * vb.e[b][rho];
                    s += vb.e_inv[a][nu] * cov;
                }
                om.w[mu][a][b] = s;
            }
    return om;
}

LorentzMatrix boost_between_frames(double r_s, const SpacetimePoint& x) {
    double T, R, r;
    if (x.chart == ChartId::Kruskal) {
        T = x.coords[0];
        R = x.coords[1];
        r = kruskal_r(r_s, x);
    } else {
        r = x.coords[1];
        auto [Tk, Rk] = kruskal_from_static(r_s, x.coords[0], r);
        T = Tk;
        R = Rk;
    }
    require_static_r(r_s, r); // sqrt(F/f) diverges at the horizon

    const double s = std::sqrt(kruskal_F(r_s, r) / schwarzschild_f(r_s, r)) / (2.0 * r_s);
    // Mixed form Lambda^a_b of the axis-1 boost with cosh alpha = s R,
    // sinh alpha = -s T (lower-upper form has -sT off-diagonal entries).
    LorentzMatrix lm{Mat4::identity()};
    lm.lam[0][0] = s * R;
    lm.lam[0][1] = s * T;
    lm.lam[1][0] = s * T;
    lm.lam[1][1] = s * R;
    return lm;
}

Mat4 static_to_kruskal_jacobian(double r_s, double t, double r) {
    if (!(r > r_s)) throw DomainError("Jacobian defined on the exterior r > r_s");
    auto [T, R] = kruskal_from_static(r_s, t, r);
    const double ap = r / (2.0 * r_s * (r - r_s)); // A'(r)/A(r)
    Mat4 j = Mat4::identity();
    j[0][0] = R / (2.0 * r_s); // dT/dt
    j[0][1] = ap * T;          // dT/dr
    j[1][0] = T / (2.0 * r_s); // dR/dt
    j[1][1] = ap * R;          // dR/dr
    return j;
}

} // namespace grspin
