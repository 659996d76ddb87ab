#pragma once
#include <array>
#include <cmath>
#include <complex>

// Small fixed-size linear algebra used throughout: real 4x4 matrices with
// one index up / one down, 4-vectors, and complex 2x2 matrices for SU(2).

namespace grspin {

using Vec4 = std::array<double, 4>;
using Vec3 = std::array<double, 3>;

struct Mat4 {
    double a[4][4];

    double* operator[](int i) { return a[i]; }
    const double* operator[](int i) const { return a[i]; }

    static Mat4 zero() {
        Mat4 m{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m.a[i][j] = 0.0;
        return m;
    }
    static Mat4 identity() {
        Mat4 m = zero();
        for (int i = 0; i < 4; ++i) m.a[i][i] = 1.0;
        return m;
    }
};

// Minkowski metric diag(-1,1,1,1).
inline Mat4 eta4() {
    Mat4 m = Mat4::identity();
    m[0][0] = -1.0;
    return m;
}

inline Mat4 operator*(const Mat4& x, const Mat4& y) {
    Mat4 r = Mat4::zero();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double xik = x[i][k];
            if (xik == 0.0) continue;
            for (int j = 0; j < 4; ++j) r[i][j] += xik * y[k][j];
        }
    return r;
}

inline Vec4 operator*(const Mat4& x, const Vec4& v) {
    Vec4 r{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += x[i][j] * v[j];
    return r;
}

inline Mat4 operator+(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = x[i][j] + y[i][j];
    return r;
}

inline Mat4 operator*(double s, const Mat4& x) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = s * x[i][j];
    return r;
}

inline Mat4 transpose(const Mat4& x) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = x[j][i];
    return r;
}

inline double max_abs(const Mat4& x) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::fabs(x[i][j]));
    return m;
}

inline double max_abs_diff(const Mat4& x, const Mat4& y) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::fabs(x[i][j] - y[i][j]));
    return m;
}

inline double dot(const Vec4& u, const Mat4& g, const Vec4& v) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += u[i] * g[i][j] * v[j];
    return s;
}

// Gauss-Jordan inverse with partial pivoting; adequate for well-conditioned
// metric blocks (all metrics here are diagonal, but keep it general).
Mat4 inverse(const Mat4& x);

// Matrix exponential, scaling-and-squaring with a Taylor series.
Mat4 expm(const Mat4& x);

// Eigenvalues of a symmetric 4x4 matrix (cyclic Jacobi), unsorted.
std::array<double, 4> symmetric_eigenvalues(const Mat4& x);

// ---------------------------------------------------------------------------
// Complex 2x2 for spin-1/2 amplitudes.

using cplx = std::complex<double>;

struct Mat2c {
    cplx a[2][2];

    cplx* operator[](int i) { return a[i]; }
    const cplx* operator[](int i) const { return a[i]; }

    static Mat2c identity() {
        Mat2c m{};
        m.a[0][0] = 1.0;
        m.a[0][1] = 0.0;
        m.a[1][0] = 0.0;
        m.a[1][1] = 1.0;
        return m;
    }
};

inline Mat2c operator*(const Mat2c& x, const Mat2c& y) {
    Mat2c r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return r;
}

inline Mat2c adjoint(const Mat2c& x) {
    Mat2c r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = std::conj(x[j][i]);
    return r;
}

inline double max_abs_diff(const Mat2c& x, const Mat2c& y) {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(x[i][j] - y[i][j]));
    return m;
}

// exp(-i (w . sigma) / 2): the SU(2) element rotating spinors by |w| about w-hat.
Mat2c su2_exp(const Vec3& w);

} // namespace grspin
