#include "grspin/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "grspin/analysis.hpp"

namespace grspin {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Suite {
    SuiteResult res;
    explicit Suite(std::string name, double tol, std::optional<double> tol_override) {
        res.name = std::move(name);
        res.tolerance = tol_override.value_or(tol);
    }
    void record(double residual, const std::string& what) {
        if (residual > res.max_residual) {
            res.max_residual = residual;
            res.detail = what;
        }
        if (residual > res.tolerance) res.passed = false;
    }
    SuiteResult done() const { return res; }
};

const double kGridRho[] = {1.0 / 1.01, 1.0 / 1.5, 1.0 / 2.0, 1.0 / 5.0, 1.0 / 50.0};

std::string fmt_case(const char* tag, double a, double b) {
    std::ostringstream os;
    os << tag << " (" << a << ", " << b << ")";
    return os.str();
}

// ---- geometry -------------------------------------------------------------

SuiteResult geometry_identities(std::optional<double> tol) {
    Suite s("geometry.vierbein_metric_identities", 1e-12, tol);
    const Mat4 eta = eta4();
    const double r_s = 1.0;
    for (const double rho : kGridRho) {
        const double r = 1.0 / rho;
        for (int chart_i = 0; chart_i < 3; ++chart_i) {
            const ChartId chart = static_cast<ChartId>(chart_i);
            SpacetimePoint x;
            double rs_use = r_s;
            if (chart == ChartId::Kruskal) {
                auto [T, R] = kruskal_from_static(r_s, 0.3 * r_s, r);
                x = SpacetimePoint{chart, {T, R, kPi / 2.0, 0.1}};
            } else {
                if (chart == ChartId::Minkowski) rs_use = 0.0;
                x = SpacetimePoint{chart, {0.0, r, kPi / 2.0, 0.1}};
            }
            const MetricTensor m = metric_at(chart, rs_use, x);
            const Vierbein vb = vierbein_at(chart, rs_use, x);

            // e_a^mu e_b^nu g_mu nu = eta_ab
            Mat4 contraction = Mat4::zero();
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int mu = 0; mu < 4; ++mu)
                        for (int nu = 0; nu < 4; ++nu)
                            contraction[a][b] += vb.e[a][mu] * vb.e[b][nu] * m.g[mu][nu];
            s.record(max_abs_diff(contraction, eta), fmt_case("eta identity", rho, chart_i));

            // e^a_mu e_a^nu = delta and e^a_mu e_b^mu = delta
            Mat4 d1 = Mat4::zero(), d2 = Mat4::zero();
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu)
                    for (int a = 0; a < 4; ++a) d1[mu][nu] += vb.e_inv[a][mu] * vb.e[a][nu];
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int mu = 0; mu < 4; ++mu) d2[a][b] += vb.e_inv[a][mu] * vb.e[b][mu];
            s.record(max_abs_diff(d1, Mat4::identity()), fmt_case("delta-mu", rho, chart_i));
            s.record(max_abs_diff(d2, Mat4::identity()), fmt_case("delta-ab", rho, chart_i));

            // g g_inv = identity; signature (-,+,+,+)
            s.record(max_abs_diff(m.g * m.g_inv, Mat4::identity()),
                     fmt_case("metric inverse", rho, chart_i));
            const std::array<double, 4> ev = symmetric_eigenvalues(m.g);
            int neg = 0;
            for (double e : ev) neg += (e < 0.0);
            s.record(neg == 1 ? 0.0 : 1.0, fmt_case("signature", rho, chart_i));

            // Lowered-index antisymmetry of the connection one-form.
            const ConnectionOneForm om = spin_connection(chart, rs_use, x, vb);
            for (int mu = 0; mu < 4; ++mu)
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        s.record(std::fabs(eta[a][a] * om.w[mu][a][b] +
                                           eta[b][b] * om.w[mu][b][a]),
                                 fmt_case("omega antisymmetry", rho, chart_i));
        }
    }
    return s.done();
}

SuiteResult spin_connection_vs_fd(std::optional<double> tol) {
    Suite s("geometry.spin_connection_vs_finite_difference", 1e-7, tol);
    const double r_s = 1.0;
    for (const double rho : kGridRho) {
        const double r = 1.0 / rho;
        for (int chart_i = 1; chart_i < 3; ++chart_i) {
            const ChartId chart = static_cast<ChartId>(chart_i);
            SpacetimePoint x;
            if (chart == ChartId::Kruskal) {
                auto [T, R] = kruskal_from_static(r_s, 0.2 * r_s, r);
                x = SpacetimePoint{chart, {T, R, kPi / 2.0, 0.2}};
            } else {
                x = SpacetimePoint{chart, {0.0, r, kPi / 2.0, 0.2}};
            }
            const Vierbein vb = vierbein_at(chart, r_s, x);
            const ConnectionOneForm om = spin_connection(chart, r_s, x, vb);

            // Independent evaluation: Richardson-extrapolated central
            // differences of the vierbein field plus finite-difference
            // Christoffels (the h^2 truncation term is sizable at r = 1.01 r_s).
            const double base = (chart == ChartId::Kruskal) ? 1e-5 : 1e-6;
            const Christoffel g1 = christoffel_fd(chart, r_s, x, base);
            const Christoffel g2 = christoffel_fd(chart, r_s, x, base / 2.0);
            Christoffel gam{};
            for (int l = 0; l < 4; ++l)
                for (int m = 0; m < 4; ++m)
                    for (int n = 0; n < 4; ++n)
                        gam.g[l][m][n] = (4.0 * g2.g[l][m][n] - g1.g[l][m][n]) / 3.0;

            double w_fd[4][4][4];
            for (int mu = 0; mu < 4; ++mu) {
                const double h = base * std::max(std::fabs(x.coords[mu]), r_s);
                auto deriv = [&](double step, int b, int nu) {
                    SpacetimePoint xp = x, xm = x;
                    xp.coords[mu] += step;
                    xm.coords[mu] -= step;
                    return (vierbein_at(chart, r_s, xp).e[b][nu] -
                            vierbein_at(chart, r_s, xm).e[b][nu]) /
                           (2.0 * step);
                };
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        double sum = 0.0;
                        for (int nu = 0; nu < 4; ++nu) {
                            double cov =
                                (4.0 * deriv(h / 2.0, b, nu) - deriv(h, b, nu)) / 3.0;
                            for (int rho2 = 0; rho2 < 4; ++rho2)
                                cov += gam.g[nu][mu][rho2] * vb.e[b][rho2];
                            sum += vb.e_inv[a][nu] * cov;
                        }
                        w_fd[mu][a][b] = sum;
                    }
            }
            for (int mu = 0; mu < 4; ++mu)
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        const double scale = std::max(1.0, std::fabs(om.w[mu][a][b]));
                        s.record(std::fabs(om.w[mu][a][b] - w_fd[mu][a][b]) / scale,
                                 fmt_case("omega fd", rho, chart_i));
                    }

        }
    }
    return s.done();
}

SuiteResult christoffel_vs_fd(std::optional<double> tol) {
    Suite s("geometry.christoffel_vs_finite_difference", 1e-7, tol);
    const double r_s = 1.0;
    for (const double rho : kGridRho) {
        const double r = 1.0 / rho;
        for (int chart_i = 0; chart_i < 3; ++chart_i) {
            const ChartId chart = static_cast<ChartId>(chart_i);
            const double rs_use = (chart == ChartId::Minkowski) ? 0.0 : r_s;
            SpacetimePoint x;
            if (chart == ChartId::Kruskal) {
                auto [T, R] = kruskal_from_static(r_s, 0.1 * r_s, r);
                x = SpacetimePoint{chart, {T, R, 1.1, 0.0}};
            } else {
                x = SpacetimePoint{chart, {0.0, r, 1.1, 0.0}};
            }
            const Christoffel ga = christoffel_at(chart, rs_use, x);
            const Christoffel gf = christoffel_fd(chart, rs_use, x);
            for (int l = 0; l < 4; ++l)
                for (int mu = 0; mu < 4; ++mu)
                    for (int nu = 0; nu < 4; ++nu) {
                        const double scale = std::max(1.0, std::fabs(ga.g[l][mu][nu]));
                        s.record(std::fabs(ga.g[l][mu][nu] - gf.g[l][mu][nu]) / scale,
                                 fmt_case("christoffel fd", rho, chart_i));
                        s.record(std::fabs(ga.g[l][mu][nu] - ga.g[l][nu][mu]),
                                 fmt_case("christoffel symmetry", rho, chart_i));
                    }
        }
    }
    return s.done();
}

SuiteResult kruskal_roundtrip(std::optional<double> tol) {
    Suite s("geometry.kruskal_roundtrip", 1e-12, tol);
    const double r_s = 1.0;
    for (double r = 1.001; r <= 20.0; r *= 1.37) {
        for (double t : {-2.0, 0.0, 0.7, 3.0}) {
            auto [T, R] = kruskal_from_static(r_s, t, r);
            const double back = r_from_kruskal(r_s, T, R);
            s.record(std::fabs(back - r) / r, fmt_case("roundtrip", r, t));
        }
    }
    return s.done();
}

// ---- kinematics -----------------------------------------------------------

SuiteResult worldline_invariants(std::optional<double> tol) {
    Suite s("kinematics.worldline_invariants", 1e-10, tol);
    const double r_s = 1.0;
    for (const double rho : kGridRho) {
        const double r = 1.0 / rho;
        for (const double v : {0.0, 0.3, 0.6, 0.9}) {
            const double xi = std::atanh(v);
            const FourVector u = circular_velocity(r_s, r, xi);
            const FourVector a = circular_acceleration(r_s, r, xi);
            const MetricTensor m = metric_at(ChartId::SchwarzschildStatic, r_s, u.x);
            s.record(std::fabs(dot(u.v, m.g, u.v) + 1.0), fmt_case("u.u static", rho, v));
            s.record(std::fabs(dot(a.v, m.g, u.v)), fmt_case("a.u static", rho, v));

            const Vierbein vb = static_vierbein(r_s, u.x);
            const FourVector p = local_momentum(vb, 1.0, u);
            const Mat4 eta = eta4();
            s.record(std::fabs(dot(p.v, eta, p.v) + 1.0), fmt_case("p.p static", rho, v));

            // Kruskal family at a matching exterior radius.
            auto [T, R] = kruskal_from_static(r_s, 0.4, r);
            const SpacetimePoint xk{ChartId::Kruskal, {T, R, kPi / 2.0, 0.0}};
            const FourVector uk = kruskal_velocity(r_s, xk, xi);
            const MetricTensor mk = metric_at(ChartId::Kruskal, r_s, xk);
            s.record(std::fabs(dot(uk.v, mk.g, uk.v) + 1.0), fmt_case("u.u kruskal", rho, v));
            const FourVector ak = kruskal_field_acceleration(r_s, xk, xi);
            s.record(std::fabs(dot(ak.v, mk.g, uk.v)), fmt_case("a.u kruskal", rho, v));
            const Vierbein vbk = kruskal_vierbein(r_s, xk);
            const FourVector pk = local_momentum(vbk, 1.0, uk);
            s.record(std::fabs(pk.v[1]), fmt_case("radial p kruskal", rho, v));
        }
    }
    return s.done();
}

SuiteResult generator_closed_forms(std::optional<double> tol) {
    Suite s("kinematics.generator_closed_forms", 1e-12, tol);
    const double r_s = 1.0;
    const Mat4 eta = eta4();
    for (const double rho : kGridRho) {
        const double r = 1.0 / rho;
        for (const double v : {0.1, 0.6, 0.9}) {
            const double xi = std::atanh(v);
            const double f = schwarzschild_f(r_s, r);
            const double sf = std::sqrt(f);
            const double ch = std::cosh(xi), sh = std::sinh(xi);
            const double bracket = 1.0 - r_s / (2.0 * r * f);

            const GeneratorSample gs = generators_at(CircularOrbit{r_s, r, xi, +1}, 0.37);
            const FourVector u = circular_velocity(r_s, r, xi);
            const Vierbein vb = static_vierbein(r_s, u.x);
            const ConnectionOneForm om =
                spin_connection(ChartId::SchwarzschildStatic, r_s, u.x, vb);
            const LorentzGenerator chi = chi_generator(u, om);

            s.record(std::fabs(chi.m[0][1] - (-r_s * ch / (2.0 * r * r * sf))),
                     fmt_case("chi01", rho, v));
            s.record(std::fabs(chi.m[1][3] - (sh * sf / r)), fmt_case("chi13", rho, v));
            s.record(std::fabs(gs.lambda.m[0][1] - (-(ch * sh * sh / r) * bracket * sf)),
                     fmt_case("lambda01", rho, v));
            s.record(std::fabs(gs.lambda.m[1][3] - ((ch * ch * sh / r) * bracket * sf)),
                     fmt_case("lambda13", rho, v));
            s.record(std::fabs(gs.theta.m[1][3] - ((ch * sh / r) * bracket * sf)),
                     fmt_case("theta13", rho, v));

            // Lowered antisymmetry of every generator produced.
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    s.record(std::fabs(eta[a][a] * gs.lambda.m[a][b] +
                                       eta[b][b] * gs.lambda.m[b][a]),
                             fmt_case("lambda antisym", rho, v));
                    s.record(std::fabs(eta[a][a] * chi.m[a][b] + eta[b][b] * chi.m[b][a]),
                             fmt_case("chi antisym", rho, v));
                }

            // lambda p = 0: momentum is constant in the local frame.
            const Vec4 lp = gs.lambda.m * gs.p_local.v;
            for (int i = 0; i < 4; ++i)
                s.record(std::fabs(lp[i]), fmt_case("lambda p", rho, v));
        }
    }
    // Flat limit: chi^1_3 equals the trivial rotation rate exactly.
    for (const double v : {0.1, 0.6, 0.9}) {
        const double xi = std::atanh(v);
        const double r = 2.5;
        const FourVector u = circular_velocity(0.0, r, xi);
        const Vierbein vb = static_vierbein(0.0, u.x);
        const ConnectionOneForm om = spin_connection(ChartId::Minkowski, 0.0, u.x, vb);
        const LorentzGenerator chi = chi_generator(u, om);
        s.record(std::fabs(chi.m[1][3] - trivial_rotation_rate(r, xi)),
                 fmt_case("flat chi13 = trivial", r, v));
    }
    return s.done();
}

// ---- transport ------------------------------------------------------------

SuiteResult transport_oracle(std::uint64_t seed, std::optional<double> tol) {
    Suite s("transport.closed_form_and_little_group_oracle", 1e-8, tol);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const Mat4 eta = eta4();
    for (int trial = 0; trial < 20; ++trial) {
        const double rho = 0.9 * uni(rng);
        const double v = 0.05 + 0.85 * uni(rng);
        const double Phi = 0.1 + 2.9 * uni(rng);
        const int dir = uni(rng) < 0.5 ? +1 : -1;
        const double r = 1.0, r_s = rho;
        const double xi = std::atanh(v);
        const CircularOrbit orbit{r_s, r, xi, dir};
        const double tau_f = Phi * r / std::sinh(xi);

        const long steps = 10000;
        const TransportResult tr = transport_wigner(orbit, 0.0, tau_f, steps);
        const double theta_closed = closed_form_circular(r_s, r, xi, Phi, dir);
        s.record(std::fabs(tr.angle - theta_closed) / std::max(1e-3, std::fabs(theta_closed)),
                 fmt_case("angle vs closed form", rho, v));

        // Independent little-group route on the composed Lorentz product.
        const LorentzMatrix lam_tot = transport_lorentz(orbit, 0.0, tau_f, steps);
        const GeneratorSample gs0 = generators_at(orbit, 0.0);
        const LittleGroupElement w_oracle =
            wigner_from_lorentz(lam_tot, gs0.p_local.v, 1.0);
        s.record(max_abs_diff(w_oracle.w, tr.little_group.w),
                 fmt_case("oracle vs transport", rho, v));

        // Little-group membership: W fixes the rest momentum, while the
        // composed Lorentz product keeps the local momentum constant.
        s.record(max_abs_diff(transpose(tr.little_group.w) * eta * tr.little_group.w, eta),
                 fmt_case("W^T eta W", rho, v));
        s.record(std::fabs(tr.little_group.w[0][0] - 1.0), fmt_case("W00", rho, v));
        const auto& W = tr.little_group.w;
        const double det3 =
            W[1][1] * (W[2][2] * W[3][3] - W[2][3] * W[3][2]) -
            W[1][2] * (W[2][1] * W[3][3] - W[2][3] * W[3][1]) +
            W[1][3] * (W[2][1] * W[3][2] - W[2][2] * W[3][1]);
        s.record(std::fabs(det3 - 1.0), fmt_case("spatial det", rho, v));
        const Vec4 rest{1.0, 0.0, 0.0, 0.0};
        const Vec4 wk = tr.little_group.w * rest;
        for (int i = 0; i < 4; ++i)
            s.record(std::fabs(wk[i] - rest[i]), fmt_case("W k = k", rho, v));
        const Vec4 lp = lam_tot.lam * gs0.p_local.v;
        for (int i = 0; i < 4; ++i)
            s.record(std::fabs(lp[i] - gs0.p_local.v[i]),
                     fmt_case("Lambda p constant", rho, v));

        // SU(2)/SO(3) consistency: adjoint action of the spin product matches
        // the spatial block of W.
        const Mat2c u = tr.spin.u;
        const Mat2c ud = adjoint(u);
        const cplx I(0.0, 1.0);
        Mat2c sig[3];
        sig[0] = Mat2c{{{cplx(0), cplx(1)}, {cplx(1), cplx(0)}}};
        sig[1] = Mat2c{{{cplx(0), -I}, {I, cplx(0)}}};
        sig[2] = Mat2c{{{cplx(1), cplx(0)}, {cplx(0), cplx(-1)}}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const Mat2c m = sig[i] * u * sig[j] * ud;
                const double rij = 0.5 * (m[0][0] + m[1][1]).real();
                s.record(std::fabs(rij - tr.little_group.w[i + 1][j + 1]),
                         fmt_case("adjoint consistency", rho, v));
            }

        // Unitarity of the accumulated spin rotation.
        s.record(max_abs_diff(u * ud, Mat2c::identity()), fmt_case("U U+", rho, v));
    }
    return s.done();
}

SuiteResult transport_composition(std::optional<double> tol) {
    Suite s("transport.composition_and_identities", 1e-10, tol);
    const CircularOrbit orbit{1.0, 2.0, std::atanh(0.6), +1};
    const double tau_f = 2.0 * 1.7 / std::sinh(orbit.xi);
    const TransportResult full = transport_wigner(orbit, 0.0, tau_f, 4000);
    const TransportResult a = transport_wigner(orbit, 0.0, 0.35 * tau_f, 1400);
    const TransportResult b = transport_wigner(orbit, 0.35 * tau_f, tau_f, 2600);
    s.record(max_abs_diff(b.little_group.w * a.little_group.w, full.little_group.w),
             "split little-group product");
    s.record(max_abs_diff(b.spin.u * a.spin.u, full.spin.u), "split spin product");

    const TransportResult zero = transport_wigner(orbit, 1.3, 1.3, 10);
    s.record(max_abs_diff(zero.little_group.w, Mat4::identity()), "zero-duration W");
    s.record(max_abs_diff(zero.spin.u, Mat2c::identity()), "zero-duration U");
    return s.done();
}

SuiteResult transport_convergence(std::optional<double>) {
    // Structural check: the first-order stepping of the product integral must
    // converge to the closed-form angle at second order. Tolerance is the
    // fitted-order floor, not a residual; --tol does not apply.
    Suite s("transport.first_order_convergence_order", 1.9, std::nullopt);
    const CircularOrbit orbit{1.0, 2.0, std::atanh(0.6), +1};
    const double Phi = 1.0;
    const double tau_f = Phi * orbit.r / std::sinh(orbit.xi);
    const double theta_closed = closed_form_circular(orbit.r_s, orbit.r, orbit.xi, Phi, +1);

    double lx[3], ly[3];
    const long ns[3] = {100, 1000, 10000};
    for (int i = 0; i < 3; ++i) {
        const TransportResult tr =
            transport_wigner(orbit, 0.0, tau_f, ns[i], StepKind::FirstOrder);
        lx[i] = std::log(static_cast<double>(ns[i]));
        ly[i] = std::log(std::fabs(tr.angle - theta_closed));
    }
    // Least-squares slope of log err vs log N; order = -slope.
    const double mx = (lx[0] + lx[1] + lx[2]) / 3.0, my = (ly[0] + ly[1] + ly[2]) / 3.0;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    const double order = -num / den;
    s.res.max_residual = order;
    s.res.detail = "observed order";
    if (order < s.res.tolerance) s.res.passed = false;
    return s.done();
}

SuiteResult four_way_inequality(std::optional<double>) {
    // Structural check on Eq.-level non-equalities; --tol does not apply.
    Suite s("transport.four_way_rate_inequality", 1e-12, std::nullopt);
    const double r_s = 1.0, r = 2.0, xi = std::atanh(0.6);
    const GeneratorSample gs = generators_at(CircularOrbit{r_s, r, xi, +1}, 0.0);
    const FourVector u = circular_velocity(r_s, r, xi);
    const Vierbein vb = static_vierbein(r_s, u.x);
    const ConnectionOneForm om = spin_connection(ChartId::SchwarzschildStatic, r_s, u.x, vb);
    const LorentzGenerator chi = chi_generator(u, om);
    const double rates[4] = {gs.theta.m[1][3], gs.lambda.m[1][3], chi.m[1][3],
                             trivial_rotation_rate(r, xi)};
    double min_gap = 1e300;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            min_gap = std::min(min_gap, std::fabs(rates[i] - rates[j]));
    s.res.max_residual = min_gap;
    s.res.detail = "min pairwise gap of (theta, lambda, chi, trivial)";
    if (min_gap <= s.res.tolerance) s.res.passed = false;
    return s.done();
}

// ---- correlation ----------------------------------------------------------

SuiteResult tsirelson_bound(std::uint64_t seed, std::optional<double> tol) {
    Suite s("correlation.tsirelson_bound", 1e-10, tol);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double bound = 2.0 * std::sqrt(2.0);
    auto random_axis = [&]() {
        while (true) {
            const Vec3 n{gauss(rng), gauss(rng), gauss(rng)};
            const double w = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
            if (w > 1e-6) return MeasurementAxis{{n[0] / w, n[1] / w, n[2] / w}};
        }
    };
    for (int trial = 0; trial < 1000; ++trial) {
        TwoSpinState st{};
        double norm = 0.0;
        for (int i = 0; i < 4; ++i) {
            st.amp[i] = cplx(gauss(rng), gauss(rng));
            norm += std::norm(st.amp[i]);
        }
        norm = std::sqrt(norm);
        for (int i = 0; i < 4; ++i) st.amp[i] /= norm;
        const double val =
            chsh(st, random_axis(), random_axis(), random_axis(), random_axis());
        s.record(std::max(0.0, std::fabs(val) - bound), "chsh magnitude above 2 sqrt 2");
    }
    return s.done();
}

SuiteResult correlation_identities(std::uint64_t seed, std::optional<double> tol) {
    Suite s("correlation.chsh_closed_forms", 1e-10, tol);
    std::mt19937_64 rng(seed ^ 0x7f4a7c159e3779b9ULL);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double max_chsh = 2.0 * std::sqrt(2.0);

    for (int trial = 0; trial < 50; ++trial) {
        const double Theta = -2.0 + 4.0 * uni(rng);
        const double Phi = 0.1 + 2.9 * uni(rng);
        const double Delta = Theta - Phi;
        const SpinRotation up{su2_exp({0.0, Theta, 0.0})};  // exp(-i sy Theta/2)
        const SpinRotation um{su2_exp({0.0, -Theta, 0.0})}; // exp(+i sy Theta/2)
        const TwoSpinState evolved = evolve_pair(singlet(), up, um);

        s.record(std::fabs(chsh(evolved, standard_chsh_axes()) -
                           max_chsh * std::cos(Theta) * std::cos(Theta)),
                 fmt_case("2 sqrt2 cos^2 Theta", Theta, Phi));
        s.record(std::fabs(chsh(evolved, standard_chsh_axes_primed(Phi)) -
                           max_chsh * std::cos(Delta) * std::cos(Delta)),
                 fmt_case("2 sqrt2 cos^2 Delta", Theta, Phi));
        s.record(std::fabs(chsh(evolved, standard_chsh_axes_optimal(Theta)) - max_chsh),
                 fmt_case("optimal restores 2 sqrt2", Theta, Phi));

        // Local-unitary invariance of the entanglement entropy.
        s.record(std::fabs(entanglement_entropy(evolved) - entanglement_entropy(singlet())),
                 fmt_case("entropy invariance", Theta, Phi));

        // Equal-axis anti-correlation deteriorates to -cos(2 Theta).
        const MeasurementAxis ax1{{1.0, 0.0, 0.0}};
        s.record(std::fabs(correlation(evolved, ax1, ax1) + std::cos(2.0 * Theta)),
                 fmt_case("-cos 2 Theta", Theta, Phi));

        // Perfect recovery with counter-rotated axes.
        const MeasurementAxis a_rec = rotate_axis_about_2(ax1, -Theta);
        const MeasurementAxis b_rec = rotate_axis_about_2(ax1, +Theta);
        s.record(std::fabs(correlation(evolved, a_rec, b_rec) + 1.0),
                 fmt_case("recovery", Theta, Phi));

        // Primed-basis amplitudes equal the Delta-form state.
        const TwoSpinState primed = evolve_pair(evolved, primed_basis_rotation(Phi, +1),
                                                primed_basis_rotation(Phi, -1));
        const SpinRotation upd{su2_exp({0.0, Delta, 0.0})};
        const SpinRotation umd{su2_exp({0.0, -Delta, 0.0})};
        const TwoSpinState delta_form = evolve_pair(singlet(), upd, umd);
        s.record(std::fabs(fidelity(primed, delta_form) - 1.0),
                 fmt_case("primed basis = Delta form", Theta, Phi));
    }

    // Flat-space sanity: Delta = Phi (cosh - 1) > 0 and optimal axes restore.
    const double xi = std::atanh(0.6), Phi = 1.2;
    const double theta_flat = Phi * std::cosh(xi);
    s.record(theta_flat - Phi > 0.0 ? 0.0 : 1.0, "flat Delta positive");
    const SpinRotation up{su2_exp({0.0, theta_flat, 0.0})};
    const SpinRotation um{su2_exp({0.0, -theta_flat, 0.0})};
    const TwoSpinState evolved = evolve_pair(singlet(), up, um);
    s.record(std::fabs(chsh(evolved, standard_chsh_axes_optimal(theta_flat)) - max_chsh),
             "flat optimal chsh");
    return s.done();
}

// ---- analysis -------------------------------------------------------------

SuiteResult analysis_consistency(std::uint64_t seed, std::optional<double> tol) {
    Suite s("analysis.delta_maps_and_bounds", 1e-8, tol);
    std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dULL);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    // delta_angle equals the transported angle minus Phi.
    for (int trial = 0; trial < 8; ++trial) {
        const double rho = 0.85 * uni(rng);
        const double v = 0.05 + 0.85 * uni(rng);
        const double Phi = 0.2 + 2.0 * uni(rng);
        const ScenarioConfig cfg = make_scenario(rho, v, Phi);
        const CircularOrbit orbit{cfg.r_s, cfg.r, cfg.xi, +1};
        const double tau_f = Phi * cfg.r / std::sinh(cfg.xi);
        const TransportResult tr = transport_wigner(orbit, 0.0, tau_f, 2000);
        s.record(std::fabs((tr.angle - Phi) - delta_angle(cfg)),
                 fmt_case("delta vs transport", rho, v));
    }

    // Sign structure around r0.
    for (const double v : {0.3, 0.6, 0.9}) {
        const RootResult r0 = solve_r0(1.0, v);
        ScenarioConfig above = make_scenario(1.0 / (r0.value * 1.05), v, 1.0);
        ScenarioConfig below = make_scenario(1.0 / (r0.value * 0.95), v, 1.0);
        s.record(delta_angle(above) > 0.0 ? 0.0 : 1.0, "Delta > 0 outside r0");
        s.record(delta_angle(below) < 0.0 ? 0.0 : 1.0, "Delta < 0 inside r0");
    }

    // Bound ratio is exactly pi/sqrt(2).
    const ScenarioConfig cfg = make_scenario(0.5, 0.6, 1.0);
    s.record(std::fabs(epr_position_bound(cfg) /
                           bell_position_bound(cfg, BellBoundMode::PaperLiteral) -
                       kPi / std::sqrt(2.0)),
             "epr/bell bound ratio");
    return s.done();
}

SuiteResult nonrelativistic_limit(std::optional<double> tol) {
    Suite s("analysis.nonrelativistic_limit", 1e-4, tol);
    const ScenarioConfig nr = make_scenario(1e-8, 1e-3, 1.0);
    s.record(std::fabs(delta_angle(nr) - nonrelativistic_delta(nr)) /
                 std::fabs(delta_angle(nr)),
             "relative deviation at v = 1e-3, rs/r = 1e-8");
    // The two leading terms carry opposite signs.
    const double accel_term = 1e-6 / 2.0, grav_term = -1e-8;
    s.record(accel_term > 0.0 && grav_term < 0.0 ? 0.0 : 1.0, "term signs");
    return s.done();
}

SuiteResult critical_radii(std::optional<double> tol) {
    Suite s("analysis.critical_radii", 1e-9, tol);
    for (const double v : {0.3, 0.6, 0.9, 0.9999}) {
        const RootResult r0 = solve_r0(1.0, v);
        const ScenarioConfig at = make_scenario(1.0 / r0.value, v, 1.0);
        s.record(std::fabs(delta_angle(at) / at.phi), fmt_case("Delta/Phi at r0", v, 0));
    }
    for (const double dphi : {0.01, 0.1, 0.5}) {
        const double xi = std::atanh(0.6);
        const CriticalRadius rc = solve_rc(1.0, xi, dphi);
        const CriticalRadius rb = solve_rb(1.0, xi, dphi);
        s.record(rc.constraining ? rc.residual / dphi : 1.0,
                 fmt_case("rc bound residual", dphi, 0));
        s.record(rb.constraining ? rb.residual / dphi : 1.0,
                 fmt_case("rb bound residual", dphi, 0));
        s.record(rb.constraining && rc.constraining && rb.r >= rc.r ? 0.0 : 1.0,
                 "rb >= rc ordering");
    }
    return s.done();
}

SuiteResult kruskal_rate_pipeline(std::optional<double> tol) {
    Suite s("analysis.kruskal_rate_vs_generator_pipeline", 1e-10, tol);
    const double r_s = 1.0, xi = 0.47;
    for (const double r : {0.5, 0.8, 1.0, 1.3, 2.0, 3.0}) {
        const double q = 4.0 * r_s * (r - r_s) * std::exp(r / r_s);
        const double T = 2.5; // T^2 > -q for every r in the sweep
        const double R = std::sqrt(q + T * T);
        const SpacetimePoint x{ChartId::Kruskal, {T, R, kPi / 2.0, 0.0}};
        for (const int dir : {+1, -1}) {
            const double closed = kruskal_precession_rate(r_s, x, xi, dir);

            const FourVector u = kruskal_velocity(r_s, x, xi, dir);
            const FourVector a = kruskal_field_acceleration(r_s, x, xi, dir);
            const Vierbein vb = kruskal_vierbein(r_s, x);
            const ConnectionOneForm om = spin_connection(ChartId::Kruskal, r_s, x, vb);
            const LorentzGenerator chi = chi_generator(u, om);
            const FourVector p = local_momentum(vb, 1.0, u);
            const FourVector a_loc = to_local_frame(vb, a);
            const LorentzGenerator lam = lambda_generator(a_loc, p, chi, 1.0);
            const RotationGenerator th = wigner_generator(lam, p, 1.0);
            s.record(std::fabs(th.m[1][3] - closed) / std::max(1.0, std::fabs(closed)),
                     fmt_case("Kruskal rate", r, dir));
        }
    }
    return s.done();
}

SuiteResult horizon_divergence(std::optional<double>) {
    // Structural ratio check; --tol does not apply. The static rate along
    // r/r_s = 1 + 10^-k diverges while the infalling rate at the same event
    // (t = 0 image) stays regular; their ratio passes 1e6 by k = 10.
    Suite s("analysis.horizon_divergence_vs_kruskal_regularity", 1e6, std::nullopt);
    const double r_s = 1.0, xi = std::atanh(0.6);
    double prev = 0.0;
    bool monotone = true;
    double ratio_k3 = 0.0, ratio_k10 = 0.0;
    for (int k = 3; k <= 10; ++k) {
        const double r = r_s * (1.0 + std::pow(10.0, -k));
        const double stat = static_precession_rate(r_s, r, xi);
        if (stat <= prev) monotone = false;
        prev = stat;
        auto [T, R] = kruskal_from_static(r_s, 0.0, r);
        const SpacetimePoint x{ChartId::Kruskal, {T, R, kPi / 2.0, 0.0}};
        const double infall = std::fabs(kruskal_precession_rate(r_s, x, xi));
        const double ratio = stat / infall;
        if (k == 3) ratio_k3 = ratio;
        if (k == 10) ratio_k10 = ratio;
    }
    s.res.max_residual = std::min(ratio_k10, ratio_k10 / ratio_k3);
    s.res.detail = "min(static/infalling ratio at k=10, its growth since k=3)";
    if (!(monotone && ratio_k10 > 1e6 && ratio_k10 / ratio_k3 > 1e6)) s.res.passed = false;

    // Fixed-R slice continuity across the horizon.
    const double Rfix = 2.0 * r_s;
    auto rate_at = [&](double r) {
        const double q = 4.0 * r_s * (r - r_s) * std::exp(r / r_s);
        const double T = std::sqrt(Rfix * Rfix - q);
        const SpacetimePoint x{ChartId::Kruskal, {T, Rfix, kPi / 2.0, 0.0}};
        return std::fabs(kruskal_precession_rate(r_s, x, xi));
    };
    const double lo = rate_at(r_s * (1.0 - 1e-6)), hi = rate_at(r_s * (1.0 + 1e-6));
    if (std::fabs(lo - hi) / hi > 1e-4) {
        s.res.passed = false;
        s.res.detail = "fixed-R slice discontinuous across horizon";
    }
    return s.done();
}

SuiteResult surface_checks(std::optional<double> tol) {
    Suite s("analysis.delta_surface", 1e-12, tol);
    SurfaceGrid grid;
    const DeltaSurface par = delta_surface(grid);
    const DeltaSurface ser = delta_surface_serial(grid);

    // Serial reference and parallel kernel must agree bit for bit.
    double worst = 0.0;
    for (size_t i = 0; i < par.delta_over_phi.size(); ++i)
        if (par.delta_over_phi[i] != ser.delta_over_phi[i]) worst = 1.0;
    s.record(worst, "serial vs parallel kernel bitwise");

    // Flat row equals cosh - 1.
    for (int j = 0; j < grid.n_v; ++j) {
        const double v = grid.v_min + j * (grid.v_max - grid.v_min) / (grid.n_v - 1);
        const double expect = 1.0 / std::sqrt(1.0 - v * v) - 1.0;
        s.record(std::fabs(par.delta_over_phi[j] - expect), "flat row");
    }

    // Monotone divergence toward -inf over the last five rho rows at fixed v.
    for (int j = 0; j < grid.n_v; j += 20) {
        for (int i = grid.n_rho - 5; i < grid.n_rho - 1; ++i) {
            const double a = par.delta_over_phi[static_cast<size_t>(i) * grid.n_v + j];
            const double b = par.delta_over_phi[static_cast<size_t>(i + 1) * grid.n_v + j];
            s.record(b < a ? 0.0 : 1.0, "monotone tail");
        }
    }

    // Deep corner value is large negative.
    s.record(delta_over_phi_cell(1.0 - 1e-7, 0.5) < -1e3 ? 0.0 : 1.0, "corner divergence");
    return s.done();
}

} // namespace

std::vector<SuiteResult> run_verification(std::uint64_t seed,
                                          std::optional<double> tol_override) {
    std::vector<SuiteResult> out;
    out.push_back(geometry_identities(tol_override));
    out.push_back(spin_connection_vs_fd(tol_override));
    out.push_back(christoffel_vs_fd(tol_override));
    out.push_back(kruskal_roundtrip(tol_override));
    out.push_back(worldline_invariants(tol_override));
    out.push_back(generator_closed_forms(tol_override));
    out.push_back(transport_oracle(seed, tol_override));
    out.push_back(transport_composition(tol_override));
    out.push_back(transport_convergence(tol_override));
    out.push_back(four_way_inequality(tol_override));
    out.push_back(tsirelson_bound(seed, tol_override));
    out.push_back(correlation_identities(seed, tol_override));
    out.push_back(analysis_consistency(seed, tol_override));
    out.push_back(nonrelativistic_limit(tol_override));
    out.push_back(critical_radii(tol_override));
    out.push_back(kruskal_rate_pipeline(tol_override));
    out.push_back(horizon_divergence(tol_override));
    out.push_back(surface_checks(tol_override));
    return out;
}

} // namespace grspin
