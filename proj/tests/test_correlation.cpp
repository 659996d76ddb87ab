#include <doctest.h>

#include <cmath>
#include <random>

#include "grspin/correlation.hpp"

using namespace grspin;

namespace {
const double kMaxChsh = 2.0 * std::sqrt(2.0);

TwoSpinState evolved_state(double theta) {
    const SpinRotation up{su2_exp({0.0, theta, 0.0})};   // exp(-i sy theta/2)
    const SpinRotation um{su2_exp({0.0, -theta, 0.0})};  // exp(+i sy theta/2)
    return evolve_pair(singlet(), up, um);
}
} // namespace

TEST_CASE("singlet: amplitudes, norm, anticorrelation, rotation invariance") {
    const TwoSpinState s = singlet();
    CHECK(s.amp[0] == cplx(0.0));
    CHECK(s.amp[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s.amp[2].real() == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(state_norm(s) == doctest::Approx(1.0).epsilon(1e-15));

    for (const auto& axis :
         {MeasurementAxis{{1, 0, 0}}, MeasurementAxis{{0, 1, 0}},
          MeasurementAxis{{0.6, 0.0, 0.8}}}) {
        CHECK(correlation(s, axis, axis) == doctest::Approx(-1.0).epsilon(1e-13));
    }
    CHECK(correlation(s, MeasurementAxis{{1, 0, 0}}, MeasurementAxis{{0, 1, 0}}) ==
          doctest::Approx(0.0).epsilon(1e-14));

    SUBCASE("invariant under equal rotations up to a global phase") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int t = 0; t < 12; ++t) {
            const Vec3 w{uni(rng), uni(rng), uni(rng)};
            const SpinRotation u{su2_exp(w)};
            const TwoSpinState rotated = evolve_pair(s, u, u);
            CHECK(fidelity(rotated, s) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("evolve pair: identity, triplet at pi/2, norm preservation") {
    const TwoSpinState s = singlet();
    SUBCASE("identity rotations leave the state unchanged") {
        const SpinRotation id{Mat2c::identity()};
        const TwoSpinState out = evolve_pair(s, id, id);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(out.amp[i] - s.amp[i]) < 1e-15);
    }
    SUBCASE("Theta = pi/2 lands on the triplet combination") {
        const TwoSpinState out = evolved_state(M_PI / 2.0);
        CHECK(out.amp[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(std::abs(out.amp[1]) < 1e-12);
        CHECK(std::abs(out.amp[2]) < 1e-12);
        CHECK(out.amp[3].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("mixing amplitudes follow cos/sin Theta") {
        const double theta = 0.441941738241592;
        const TwoSpinState out = evolved_state(theta);
        CHECK(out.amp[0].real() ==
              doctest::Approx(std::sin(theta) / std::sqrt(2.0)).epsilon(1e-13));
        CHECK(out.amp[1].real() ==
              doctest::Approx(std::cos(theta) / std::sqrt(2.0)).epsilon(1e-13));
        CHECK(state_norm(out) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("primed basis rotation removes the trivial rotation") {
    SUBCASE("Phi = 0 is the identity") {
        const SpinRotation u = primed_basis_rotation(0.0, +1);
        CHECK(max_abs_diff(u.u, Mat2c::identity()) == 0.0);
    }
    SUBCASE("tuned flat case lands back on the singlet") {
        const double phi = 0.83; // flat with Theta = Phi: Delta = 0
        const TwoSpinState out = evolve_pair(evolved_state(phi),
                                             primed_basis_rotation(phi, +1),
                                             primed_basis_rotation(phi, -1));
        CHECK(fidelity(out, singlet()) == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("round trip restores amplitudes") {
        const TwoSpinState s = evolved_state(0.37);
        const TwoSpinState fwd = evolve_pair(s, primed_basis_rotation(0.9, +1),
                                             primed_basis_rotation(0.9, -1));
        const TwoSpinState back = evolve_pair(fwd, primed_basis_rotation(-0.9, +1),
                                              primed_basis_rotation(-0.9, -1));
        for (int i = 0; i < 4; ++i) CHECK(std::abs(back.amp[i] - s.amp[i]) < 1e-14);
    }
}

TEST_CASE("correlation: deteriorated equal-axis value -cos 2 Theta") {
    const double theta = 0.441941738241592;
    const TwoSpinState out = evolved_state(theta);
    const MeasurementAxis a1{{1, 0, 0}};
    CHECK(correlation(out, a1, a1) == doctest::Approx(-std::cos(2 * theta)).epsilon(1e-12));

    SUBCASE("counter-rotated axes recover -1") {
        CHECK(correlation(out, rotate_axis_about_2(a1, -theta),
                          rotate_axis_about_2(a1, +theta)) ==
              doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("chsh: maximal violation, closed-form decay, optimal recovery") {
    const TwoSpinState s = singlet();
    CHECK(chsh(s, standard_chsh_axes()) == doctest::Approx(kMaxChsh).epsilon(1e-12));

    const double theta = 0.441941738241592, phi = 1.0;
    const TwoSpinState out = evolved_state(theta);
    CHECK(chsh(out, standard_chsh_axes()) ==
          doctest::Approx(kMaxChsh * std::cos(theta) * std::cos(theta)).epsilon(1e-12));
    CHECK(chsh(out, standard_chsh_axes_primed(phi)) ==
          doctest::Approx(kMaxChsh * std::cos(theta - phi) * std::cos(theta - phi))
              .epsilon(1e-12));
    CHECK(chsh(out, standard_chsh_axes_optimal(theta)) ==
          doctest::Approx(kMaxChsh).epsilon(1e-12));
}

TEST_CASE("standard axes: published vectors") {
    const ChshAxes ax = standard_chsh_axes();
    CHECK(ax.q.n[0] == 1.0);
    CHECK(ax.t.n[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(ax.t.n[1] == doctest::Approx(-1.0 / std::sqrt(2.0)));

    const double phi = 0.77;
    const ChshAxes axp = standard_chsh_axes_primed(phi);
    CHECK(axp.q.n[0] == doctest::Approx(std::cos(phi)).epsilon(1e-14));
    CHECK(axp.q.n[2] == doctest::Approx(-std::sin(phi)).epsilon(1e-14));
    CHECK(axp.s.n[0] == doctest::Approx(-std::cos(phi) / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(axp.s.n[1] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(axp.s.n[2] == doctest::Approx(-std::sin(phi) / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(axp.t.n[2] == doctest::Approx(std::sin(phi) / std::sqrt(2.0)).epsilon(1e-14));

    SUBCASE("primed at Phi = 0 equals unprimed") {
        const ChshAxes ax0 = standard_chsh_axes_primed(0.0);
        for (int i = 0; i < 3; ++i) {
            CHECK(ax0.q.n[i] == ax.q.n[i]);
            CHECK(ax0.s.n[i] == ax.s.n[i]);
        }
    }
}

TEST_CASE("entanglement entropy is invariant under local unitaries") {
    const double ln2 = std::log(2.0);
    CHECK(entanglement_entropy(singlet()) == doctest::Approx(ln2).epsilon(1e-12));
    for (double theta : {0.2, 0.9, 2.3}) {
        CHECK(entanglement_entropy(evolved_state(theta)) ==
              doctest::Approx(ln2).epsilon(1e-10));
    }
    // A product state carries no entanglement.
    TwoSpinState prod{{cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0)}};
    CHECK(entanglement_entropy(prod) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sampled correlation estimates the exact expectation") {
    const TwoSpinState out = evolved_state(0.6);
    const MeasurementAxis a{{1, 0, 0}}, b{{0.0, 0.6, 0.8}};
    const double exact = correlation(out, a, b);
    const double sampled = correlation_sampled(out, a, b, 200000, 12345);
    CHECK(std::fabs(sampled - exact) < 0.02); // ~5 sigma at 2e5 shots
}

TEST_CASE("tsirelson bound holds on random states and axes") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto rand_axis = [&]() {
        Vec3 n{gauss(rng), gauss(rng), gauss(rng)};
        const double w = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        return MeasurementAxis{{n[0] / w, n[1] / w, n[2] / w}};
    };
    for (int t = 0; t < 300; ++t) {
        TwoSpinState s{};
        double norm = 0.0;
        for (int i = 0; i < 4; ++i) {
            s.amp[i] = cplx(gauss(rng), gauss(rng));
            norm += std::norm(s.amp[i]);
        }
        for (int i = 0; i < 4; ++i) s.amp[i] /= std::sqrt(norm);
        CHECK(std::fabs(chsh(s, rand_axis(), rand_axis(), rand_axis(), rand_axis())) <=
              kMaxChsh + 1e-10);
    }
}
