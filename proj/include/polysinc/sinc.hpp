#pragma once

// Poly-Sinc machinery: Lagrange interpolation at Sinc points, the
// collocation differentiation matrices and the tensor-product interpolant.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace polysinc {

/// Default conformal-map step for a half-count N: h = 1.8 / sqrt(N).
double default_step(int N);

/// Sinc points x_k = (a + b e^{kh}) / (1 + e^{kh}), k = -N..N, on (a, b).
///
/// Immutable after construction. Index 0 of points() corresponds to k = -N.
class SincGrid {
public:
    SincGrid(double a, double b, int N, double h);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int half_count() const noexcept { return N_; }
    double step() const noexcept { return h_; }
    std::size_t size() const noexcept { return points_.size(); }

    std::span<const double> points() const noexcept { return points_; }
    double point(std::size_t i) const { return points_[i]; }
    /// Point for the signed Sinc index k in [-N, N].
    double at(int k) const { return points_[static_cast<std::size_t>(k + N_)]; }

    /// g'(x_i) = prod_{j != i} (x_i - x_j).
    std::span<const double> node_derivative() const noexcept { return gprime_; }

private:
    double a_;
    double b_;
    int N_;
    double h_;
    std::vector<double> points_;
    std::vector<double> gprime_;
};

SincGrid sinc_points(double a, double b, int N, double h);
/// Same, with the default step.
SincGrid sinc_points(double a, double b, int N);

/// Lagrange basis (b_{-N}(x), ..., b_N(x)). Returns the exact Kronecker
/// delta when x coincides with a grid point.
std::vector<double> lagrange_basis_eval(const SincGrid& grid, double x);
void lagrange_basis_eval(const SincGrid& grid, double x, std::span<double> out);

struct DiffMatrices {
    Eigen::MatrixXd d0;  ///< evaluation at the nodes (identity)
    Eigen::MatrixXd d1;  ///< first derivative, d1(i,j) = b_j'(x_i)
    Eigen::MatrixXd d2;  ///< second derivative, d2(i,j) = b_j''(x_i)
};

/// Collocation matrices of the Lagrange basis at the grid's own nodes.
DiffMatrices second_derivative_matrix(const SincGrid& grid);
Eigen::MatrixXd first_derivative_matrix(const SincGrid& grid);

/// (1/pi) ln(n+1) + 1.07618.
double lebesgue_estimate(int n);

/// max over `resolution` equispaced samples of [a, b] of sum_k |b_k(x)|.
double lebesgue_measured(const SincGrid& grid, int resolution);

/// Bivariate Poly-Sinc interpolant over gx x gy. values are ordered with
/// the x index major: values[p * gy.size() + q] = u(x_p, y_q).
class TensorInterpolant {
public:
    TensorInterpolant(SincGrid gx, SincGrid gy, std::vector<double> values);

    const SincGrid& grid_x() const noexcept { return gx_; }
    const SincGrid& grid_y() const noexcept { return gy_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Throws DomainError outside the closed box.
    double operator()(double x, double y) const;

    /// Values on the tensor lattice xs x ys, x index major.
    Eigen::MatrixXd sample(std::span<const double> xs, std::span<const double> ys) const;

private:
    SincGrid gx_;
    SincGrid gy_;
    std::vector<double> values_;
};

/// Row matrix of basis values: row r holds B(xs[r]).
Eigen::MatrixXd basis_matrix(const SincGrid& grid, std::span<const double> xs);

}  // namespace polysinc
