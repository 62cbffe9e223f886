#include "catgossip/mat3.hpp"

#include "catgossip/errors.hpp"

#include <algorithm>
#include <utility>

namespace catgossip {

Mat3 Mat3::identity() { return diag(1.0, 1.0, 1.0); }

Mat3 Mat3::diag(double d0, double d1, double d2) {
    Mat3 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    return m;
}

Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
        }
    }
    return r;
}

Mat3 operator+(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
}

Mat3 operator-(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.a[k] = x.a[k] - y.a[k];
    return r;
}

Mat3 operator*(double s, const Mat3& x) {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.a[k] = s * x.a[k];
    return r;
}

Vec3 operator*(const Mat3& m, const Vec3& v) {
    return {m(0, 0) * v[0] + m(0, 1) * v[1] + m(0, 2) * v[2],
            m(1, 0) * v[0] + m(1, 1) * v[1] + m(1, 2) * v[2],
            m(2, 0) * v[0] + m(2, 1) * v[1] + m(2, 2) * v[2]};
}

Mat3 transpose(const Mat3& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(j, i);
    return r;
}

Mat3 symmetrize(const Mat3& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        r(i, i) = m(i, i);
        for (int j = i + 1; j < 3; ++j) {
            const double s = 0.5 * (m(i, j) + m(j, i));
            r(i, j) = s;
            r(j, i) = s;
        }
    }
    return r;
}

double trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

double determinant(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double frobenius_inner(const Mat3& x, const Mat3& y) {
    double s = 0.0;
    for (std::size_t k = 0; k < 9; ++k) s += x.a[k] * y.a[k];
    return s;
}

double frobenius_norm(const Mat3& m) { return std::sqrt(frobenius_inner(m, m)); }

Mat3 inverse(const Mat3& m) {
    const double det = determinant(m);
    if (std::abs(det) < 1e-300) throw NumericalError("inverse: singular 3x3 matrix");
    Mat3 r;
    r(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / det;
    r(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / det;
    r(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / det;
    r(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / det;
    r(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / det;
    r(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / det;
    r(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / det;
    r(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / det;
    r(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / det;
    return r;
}

double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

Vec3 cross(const Vec3& x, const Vec3& y) {
    return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

double norm(const Vec3& x) { return std::sqrt(dot(x, x)); }

Mat3 hat(const Vec3& v) {
    Mat3 m;
    m(0, 1) = -v[2];
    m(0, 2) = v[1];
    m(1, 0) = v[2];
    m(1, 2) = -v[0];
    m(2, 0) = -v[1];
    m(2, 1) = v[0];
    return m;
}

SymEigen sym_eigen(const Mat3& m) {
    Mat3 a = symmetrize(m);
    Mat3 v = Mat3::identity();

    for (int sweep = 0; sweep < 64; ++sweep) {
        const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
        const double diag = a(0, 0) * a(0, 0) + a(1, 1) * a(1, 1) + a(2, 2) * a(2, 2);
        if (off == 0.0 || off <= 1e-34 * diag) break;

        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rotation angle annihilating a(p,q) (Golub & Van Loan, sym.Schur2).
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int k = 0; k < 3; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
    SymEigen e;
    for (int k = 0; k < 3; ++k) {
        e.values[k] = a(order[k], order[k]);
        for (int r = 0; r < 3; ++r) e.vectors(r, k) = v(r, order[k]);
    }
    return e;
}

Mat3 sym_apply(const SymEigen& e, const std::function<double(double)>& f) {
    const Vec3 fv = {f(e.values[0]), f(e.values[1]), f(e.values[2])};
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += e.vectors(i, k) * fv[static_cast<std::size_t>(k)] * e.vectors(j, k);
            r(i, j) = s;
            r(j, i) = s;
        }
    }
    return r;
}

Mat3 cholesky(const Mat3& m) {
    Mat3 l;
    for (int j = 0; j < 3; ++j) {
        double d = m(j, j);
        for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) throw NumericalError("cholesky: matrix is not positive definite");
        l(j, j) = std::sqrt(d);
        for (int i = j + 1; i < 3; ++i) {
            double s = m(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

ColumnSvd one_sided_svd(const Mat3& m) {
    Mat3 b = m;
    for (int sweep = 0; sweep < 64; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (int k = 0; k < 3; ++k) {
                    alpha += b(k, p) * b(k, p);
                    beta += b(k, q) * b(k, q);
                    gamma += b(k, p) * b(k, q);
                }
                if (std::abs(gamma) <= 1e-17 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int k = 0; k < 3; ++k) {
                    const double x = b(k, p);
                    const double y = b(k, q);
                    b(k, p) = c * x - s * y;
                    b(k, q) = s * x + c * y;
                }
            }
        }
        if (!rotated) break;
    }
    ColumnSvd r;
    for (int j = 0; j < 3; ++j) {
        const double n = std::sqrt(b(0, j) * b(0, j) + b(1, j) * b(1, j) + b(2, j) * b(2, j));
        if (!(n > 0.0)) throw NumericalError("one_sided_svd: singular matrix");
        r.values[static_cast<std::size_t>(j)] = n;
        for (int k = 0; k < 3; ++k) r.left(k, j) = b(k, j) / n;
    }
    return r;
}

Mat3 lower_solve(const Mat3& l, const Mat3& x) {
    Mat3 y;
    for (int c = 0; c < 3; ++c) {
        for (int r = 0; r < 3; ++r) {
            double s = x(r, c);
            for (int k = 0; k < r; ++k) s -= l(r, k) * y(k, c);
            y(r, c) = s / l(r, r);
        }
    }
    return y;
}

}  // namespace catgossip
