#include "grspin/mat.hpp"

#include <stdexcept>

namespace grspin {

Mat4 inverse(const Mat4& x) {
    double w[4][8];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            w[i][j] = x[i][j];
            w[i][j + 4] = (i == j) ? 1.0 : 0.0;
        }
    }
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::fabs(w[r][c]) > std::fabs(w[piv][c])) piv = r;
        if (w[piv][c] == 0.0) throw std::runtime_error("inverse: singular matrix");
        if (piv != c)
            for (int j = 0; j < 8; ++j) std::swap(w[piv][j], w[c][j]);
        const double d = w[c][c];
        for (int j = 0; j < 8; ++j) w[c][j] /= d;
        for (int r = 0; r < 4; ++r) {
            if (r == c) continue;
            const double fct = w[r][c];
            if (fct == 0.0) continue;
            for (int j = 0; j < 8; ++j) w[r][j] -= fct * w[c][j];
        }
    }
    Mat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = w[i][j + 4];
    return out;
}

Mat4 expm(const Mat4& x) {
    // Scale so the Taylor series converges fast, then square back.
    int squarings = 0;
    double nrm = max_abs(x);
    while (nrm > 0.25) {
        nrm *= 0.5;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    Mat4 xs = scale * x;

    Mat4 sum = Mat4::identity();
    Mat4 term = Mat4::identity();
    for (int k = 1; k <= 16; ++k) {
        term = (1.0 / k) * (term * xs);
        sum = sum + term;
        if (max_abs(term) < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

std::array<double, 4> symmetric_eigenvalues(const Mat4& x) {
    Mat4 a = x;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-28) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    return {a[0][0], a[1][1], a[2][2], a[3][3]};
}

Mat2c su2_exp(const Vec3& w) {
    const double angle = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
    Mat2c u = Mat2c::identity();
    if (angle == 0.0) return u;
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle) / angle;
    const cplx i(0.0, 1.0);
    // -i (w . sigma)/2 expanded over sigma_x, sigma_y, sigma_z
    u[0][0] = c - i * (s * w[2]);
    u[0][1] = -i * (s * w[0]) - s * w[1];
    u[1][0] = -i * (s * w[0]) + s * w[1];
    u[1][1] = c + i * (s * w[2]);
    return u;
}

} // namespace grspin
