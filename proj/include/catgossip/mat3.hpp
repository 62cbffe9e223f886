#pragma once

// Fixed-size 3x3 kernels used by the SPD and rotation spaces.

#include <array>
#include <cmath>
#include <functional>

namespace catgossip {

using Vec3 = std::array<double, 3>;

struct Mat3 {
    std::array<double, 9> a{};  // row-major

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(3 * i + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }

    static Mat3 identity();
    static Mat3 diag(double d0, double d1, double d2);
    static Mat3 zero() { return Mat3{}; }

    friend bool operator==(const Mat3&, const Mat3&) = default;
};

Mat3 operator*(const Mat3& x, const Mat3& y);
Mat3 operator+(const Mat3& x, const Mat3& y);
Mat3 operator-(const Mat3& x, const Mat3& y);
Mat3 operator*(double s, const Mat3& x);
Vec3 operator*(const Mat3& m, const Vec3& v);

Mat3 transpose(const Mat3& m);
/// (m + m^T) / 2
Mat3 symmetrize(const Mat3& m);
double trace(const Mat3& m);
double determinant(const Mat3& m);
double frobenius_norm(const Mat3& m);
/// sum_ij x_ij * y_ij
double frobenius_inner(const Mat3& x, const Mat3& y);
/// Throws NumericalError when |det| is below 1e-300.
Mat3 inverse(const Mat3& m);

double dot(const Vec3& x, const Vec3& y);
Vec3 cross(const Vec3& x, const Vec3& y);
double norm(const Vec3& x);

/// Skew-symmetric matrix [v]_x with [v]_x w = v x w.
Mat3 hat(const Vec3& v);

/// Eigen-decomposition of a symmetric matrix: m = V diag(values) V^T,
/// eigenvalues ascending, eigenvectors stored as the matching columns of `vectors`.
struct SymEigen {
    Vec3 values{};
    Mat3 vectors{};
};

/// Cyclic Jacobi rotations to machine precision. Only the upper triangle is read
/// after symmetrization.
SymEigen sym_eigen(const Mat3& m);

/// V diag(f(values)) V^T, symmetrized.
Mat3 sym_apply(const SymEigen& e, const std::function<double(double)>& f);

/// Singular values of `b` and the matching left singular vectors (columns of
/// `left`), by one-sided Jacobi rotations. Accurate to high relative precision
/// for well column-scaled `b`, which the SPD kernels rely on.
struct ColumnSvd {
    Vec3 values{};
    Mat3 left{};
};
ColumnSvd one_sided_svd(const Mat3& b);

/// l^-1 x by forward substitution; l must be lower triangular with nonzero diagonal.
Mat3 lower_solve(const Mat3& l, const Mat3& x);

/// Lower-triangular Cholesky factor; throws NumericalError if m is not
/// numerically positive definite.
Mat3 cholesky(const Mat3& m);

}  // namespace catgossip
