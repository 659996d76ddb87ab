#include "grspin/correlation.hpp"

#include <cmath>
#include <random>

namespace grspin {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// a . sigma for a real axis vector (components on local axes 1, 2, 3).
Mat2c axis_sigma(const MeasurementAxis& a) {
    Mat2c m{};
    const cplx i(0.0, 1.0);
    m[0][0] = a.n[2];
    m[0][1] = a.n[0] - i * a.n[1];
    m[1][0] = a.n[0] + i * a.n[1];
    m[1][1] = -a.n[2];
    return m;
}

// Joint outcome probabilities of measuring a.sigma (x) b.sigma; outcomes
// (+-1, +-1) from projectors (1 +- a.sigma)/2.
std::array<double, 4> joint_probabilities(const TwoSpinState& s, const MeasurementAxis& a,
                                          const MeasurementAxis& b) {
    const Mat2c A = axis_sigma(a), B = axis_sigma(b);
    std::array<double, 4> prob{};
    int idx = 0;
    for (int sa = 0; sa < 2; ++sa) {
        for (int sb = 0; sb < 2; ++sb) {
            const double fa = sa == 0 ? 1.0 : -1.0;
            const double fb = sb == 0 ? 1.0 : -1.0;
            // P = <psi| Pa (x) Pb |psi>
            Mat2c Pa = Mat2c::identity(), Pb = Mat2c::identity();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    Pa[i][j] = 0.5 * ((i == j ? 1.0 : 0.0) + fa * A[i][j]);
                    Pb[i][j] = 0.5 * ((i == j ? 1.0 : 0.0) + fb * B[i][j]);
                }
            cplx val(0.0, 0.0);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k)
                        for (int l = 0; l < 2; ++l)
                            val += std::conj(s.amp[2 * i + j]) * Pa[i][k] * Pb[j][l] *
                                   s.amp[2 * k + l];
            prob[idx++] = std::max(0.0, val.real());
        }
    }
    return prob;
}

} // namespace

TwoSpinState singlet() {
    return TwoSpinState{{cplx(0.0), cplx(kInvSqrt2), cplx(-kInvSqrt2), cplx(0.0)}};
}

double state_norm(const TwoSpinState& s) {
    double n = 0.0;
    for (const cplx& a : s.amp) n += std::norm(a);
    return std::sqrt(n);
}

double fidelity(const TwoSpinState& a, const TwoSpinState& b) {
    cplx ov(0.0, 0.0);
    for (int i = 0; i < 4; ++i) ov += std::conj(a.amp[i]) * b.amp[i];
    return std::abs(ov);
}

TwoSpinState evolve_pair(const TwoSpinState& s, const SpinRotation& u_plus,
                         const SpinRotation& u_minus) {
    TwoSpinState out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx v(0.0, 0.0);
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    v += u_plus.u[i][k] * u_minus.u[j][l] * s.amp[2 * k + l];
            out.amp[2 * i + j] = v;
        }
    return out;
}

SpinRotation primed_basis_rotation(double Phi, int side) {
    if (side != 1 && side != -1) throw DomainError("side must be +1 or -1");
    // Amplitudes counter-rotate against the basis kets: exp(+i sy Phi/2) on
    // side +, exp(-i sy Phi/2) on side -.
    return SpinRotation{su2_exp({0.0, -side * Phi, 0.0})};
}

MeasurementAxis rotate_axis_about_2(const MeasurementAxis& a, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return MeasurementAxis{{a.n[0] * c - a.n[2] * s, a.n[1], a.n[0] * s + a.n[2] * c}};
}

double correlation(const TwoSpinState& s, const MeasurementAxis& a,
                   const MeasurementAxis& b) {
    const Mat2c A = axis_sigma(a), B = axis_sigma(b);
    cplx val(0.0, 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    val += std::conj(s.amp[2 * i + j]) * A[i][k] * B[j][l] * s.amp[2 * k + l];
    return val.real();
}

double chsh(const TwoSpinState& s, const MeasurementAxis& q, const MeasurementAxis& r,
            const MeasurementAxis& s_axis, const MeasurementAxis& t) {
    return correlation(s, q, s_axis) + correlation(s, r, s_axis) + correlation(s, r, t) -
           correlation(s, q, t);
}

double chsh(const TwoSpinState& s, const ChshAxes& axes) {
    return chsh(s, axes.q, axes.r, axes.s, axes.t);
}

ChshAxes standard_chsh_axes() {
    return ChshAxes{MeasurementAxis{{1.0, 0.0, 0.0}}, MeasurementAxis{{0.0, 1.0, 0.0}},
                    MeasurementAxis{{-kInvSqrt2, -kInvSqrt2, 0.0}},
                    MeasurementAxis{{kInvSqrt2, -kInvSqrt2, 0.0}}};
}

ChshAxes standard_chsh_axes_primed(double Phi) {
    const ChshAxes base = standard_chsh_axes();
    // Observer at +Phi rotates through -Phi, observer at -Phi through +Phi.
    return ChshAxes{rotate_axis_about_2(base.q, -Phi), rotate_axis_about_2(base.r, -Phi),
                    rotate_axis_about_2(base.s, +Phi), rotate_axis_about_2(base.t, +Phi)};
}

ChshAxes standard_chsh_axes_optimal(double Theta) { return standard_chsh_axes_primed(Theta); }

double entanglement_entropy(const TwoSpinState& s) {
    // Reduced 2x2 density matrix of particle +.
    cplx rho[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j) rho[i][k] += s.amp[2 * i + j] * std::conj(s.amp[2 * k + j]);
    const double tr = rho[0][0].real() + rho[1][1].real();
    const double det = (rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double l1 = std::min(1.0, std::max(0.0, tr / 2.0 + disc));
    const double l2 = std::min(1.0, std::max(0.0, tr / 2.0 - disc));
    auto term = [](double l) { return l > 0.0 ? -l * std::log(l) : 0.0; };
    return term(l1) + term(l2);
}

double correlation_sampled(const TwoSpinState& s, const MeasurementAxis& a,
                           const MeasurementAxis& b, long shots, std::uint64_t seed) {
    const std::array<double, 4> prob = joint_probabilities(s, a, b);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double outcome[4] = {+1.0, -1.0, -1.0, +1.0}; // products (+,+),(+,-),(-,+),(-,-)
    double sum = 0.0;
    for (long n = 0; n < shots; ++n) {
        const double u = uni(rng);
        double acc = 0.0;
        int pick = 3;
        for (int i = 0; i < 4; ++i) {
            acc += prob[i];
            if (u <= acc) {
                pick = i;
                break;
            }
        }
        sum += outcome[pick];
    }
    return sum / static_cast<double>(shots);
}

} // namespace grspin
