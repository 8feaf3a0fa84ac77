#include "polysinc/sinc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "polysinc/errors.hpp"

namespace polysinc {

double default_step(int N) {
    if (N < 1) throw DomainError("Sinc half-count N must be >= 1");
    return 1.8 / std::sqrt(static_cast<double>(N));
}

SincGrid::SincGrid(double a, double b, int N, double h) : a_(a), b_(b), N_(N), h_(h) {
    if (!(a < b)) throw DomainError("Sinc grid needs a < b");
    if (N < 1) throw DomainError("Sinc half-count N must be >= 1");
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("Sinc step h must be positive");

    const std::size_t n = 2 * static_cast<std::size_t>(N) + 1;
    points_.resize(n);
    for (int k = -N; k <= N; ++k) {
        // (a + b e^{kh}) / (1 + e^{kh}) written with e^{-|k|h} to stay finite.
        const double t = std::exp(-std::abs(k) * h);
        double x;
        if (k >= 0)
            x = (a * t + b) / (t + 1.0);
        else
            x = (a + b * t) / (1.0 + t);
        points_[static_cast<std::size_t>(k + N)] = x;
    }
    // the map is exactly symmetric; enforce it bitwise on the stored values
    const double mid = 0.5 * (a + b);
    points_[static_cast<std::size_t>(N)] = mid;
    for (std::size_t i = 1; i < n; ++i) {
        if (!(points_[i] > points_[i - 1]) || !(points_[i] < b) || !(points_[0] > a))
            throw DomainError("Sinc step h=" + std::to_string(h) +
                              " collapses grid points onto the interval ends");
    }

    gprime_.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) gprime_[i] *= points_[i] - points_[j];
}

SincGrid sinc_points(double a, double b, int N, double h) { return SincGrid(a, b, N, h); }

SincGrid sinc_points(double a, double b, int N) { return SincGrid(a, b, N, default_step(N)); }

void lagrange_basis_eval(const SincGrid& grid, double x, std::span<double> out) {
    const auto pts = grid.points();
    const std::size_t n = pts.size();
    if (out.size() != n) throw DomainError("basis output span has wrong length");
    if (!(x >= grid.a() && x <= grid.b()))
        throw DomainError("basis evaluation point outside [a, b]");

    for (std::size_t k = 0; k < n; ++k) {
        if (pts[k] == x) {
            std::fill(out.begin(), out.end(), 0.0);
            out[k] = 1.0;
            return;
        }
    }
    const auto gp = grid.node_derivative();
    for (std::size_t k = 0; k < n; ++k) {
        double prod = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) prod *= x - pts[j];
        out[k] = prod / gp[k];
    }
}

std::vector<double> lagrange_basis_eval(const SincGrid& grid, double x) {
    std::vector<double> out(grid.size());
    lagrange_basis_eval(grid, x, out);
    return out;
}

Eigen::MatrixXd first_derivative_matrix(const SincGrid& grid) {
    const auto x = grid.points();
    const auto gp = grid.node_derivative();
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd d1(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double diag = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = x[i] - x[j];
            d1(i, j) = gp[i] / (dx * gp[j]);
            diag += 1.0 / dx;
        }
        d1(i, i) = diag;
    }
    return d1;
}

DiffMatrices second_derivative_matrix(const SincGrid& grid) {
    const auto x = grid.points();
    const auto gp = grid.node_derivative();
    const auto n = static_cast<Eigen::Index>(x.size());

    DiffMatrices out;
    out.d0 = Eigen::MatrixXd::Identity(n, n);
    out.d1 = first_derivative_matrix(grid);
    out.d2.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double s1 = 0.0;
        double s2 = 0.0;
        for (Eigen::Index l = 0; l < n; ++l) {
            if (l == i) continue;
            const double r = 1.0 / (x[i] - x[l]);
            s1 += r;
            s2 += r * r;
        }
        // g''(x_i) = 2 g'(x_i) sum_{l != i} 1/(x_i - x_l)
        const double gpp = 2.0 * gp[i] * s1;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = x[i] - x[j];
            out.d2(i, j) = -2.0 * gp[i] / (dx * dx * gp[j]) + gpp / (dx * gp[j]);
        }
        out.d2(i, i) = s1 * s1 - s2;
    }
    return out;
}

double lebesgue_estimate(int n) {
    if (n < 1) throw DomainError("Lebesgue estimate needs n >= 1");
    return std::log(static_cast<double>(n) + 1.0) / std::numbers::pi + 1.07618;
}

double lebesgue_measured(const SincGrid& grid, int resolution) {
    if (resolution < 2) throw DomainError("Lebesgue sampling resolution must be >= 2");
    std::vector<double> basis(grid.size());
    double best = 0.0;
    const double a = grid.a();
    const double span = grid.b() - grid.a();
    for (int s = 0; s < resolution; ++s) {
        const double x = (s == resolution - 1) ? grid.b() : a + span * s / (resolution - 1);
        lagrange_basis_eval(grid, x, basis);
        double sum = 0.0;
        for (double v : basis) sum += std::abs(v);
        best = std::max(best, sum);
    }
    return best;
}

Eigen::MatrixXd basis_matrix(const SincGrid& grid, std::span<const double> xs) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(grid.size()));
    std::vector<double> row(grid.size());
    for (std::size_t r = 0; r < xs.size(); ++r) {
        lagrange_basis_eval(grid, xs[r], row);
        for (std::size_t k = 0; k < row.size(); ++k)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = row[k];
    }
    return out;
}

TensorInterpolant::TensorInterpolant(SincGrid gx, SincGrid gy, std::vector<double> values)
    : gx_(std::move(gx)), gy_(std::move(gy)), values_(std::move(values)) {
    if (values_.size() != gx_.size() * gy_.size())
        throw DomainError("interpolant value count does not match the grid");
}

double TensorInterpolant::operator()(double x, double y) const {
    if (!(x >= gx_.a() && x <= gx_.b() && y >= gy_.a() && y <= gy_.b()))
        throw DomainError("interpolant evaluated outside the closed box");
    const auto bx = lagrange_basis_eval(gx_, x);
    const auto by = lagrange_basis_eval(gy_, y);
    const std::size_t ny = gy_.size();
    double sum = 0.0;
    for (std::size_t p = 0; p < bx.size(); ++p) {
        if (bx[p] == 0.0) continue;
        double row = 0.0;
        for (std::size_t q = 0; q < ny; ++q) row += values_[p * ny + q] * by[q];
        sum += bx[p] * row;
    }
    return sum;
}

Eigen::MatrixXd TensorInterpolant::sample(std::span<const double> xs,
                                          std::span<const double> ys) const {
    const Eigen::MatrixXd bx = basis_matrix(gx_, xs);
    const Eigen::MatrixXd by = basis_matrix(gy_, ys);
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> u(
        values_.data(), static_cast<Eigen::Index>(gx_.size()), static_cast<Eigen::Index>(gy_.size()));
    return bx * u * by.transpose();
}

}  // namespace polysinc
