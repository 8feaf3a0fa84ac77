#pragma once

// Poly-Sinc collocation of a coupled elliptic system and its least-squares
// solution.
//
// Unknowns are ordered basis-major, then grid x-major:
//   column(i, p, q) = i * nx * ny + p * ny + q.
// Rows: all interior collocation rows (same ordering as the columns), then
// per block the tau-weighted boundary rows: x = a (ny rows), x = b (ny),
// y = c (nx), y = d (nx).

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polysinc/chaos.hpp"
#include "polysinc/expr.hpp"
#include "polysinc/kernels.hpp"
#include "polysinc/model.hpp"
#include "polysinc/sinc.hpp"

namespace polysinc {

using BoundaryFunction = std::function<double(double, double)>;

struct GlobalSystem {
    SincGrid gx;
    SincGrid gy;
    std::size_t blocks = 0;
    double tau = 1e3;
    CsrMatrix matrix;
    Eigen::VectorXd rhs;

    std::size_t grid_size() const noexcept { return gx.size() * gy.size(); }
    std::size_t unknowns() const noexcept { return blocks * grid_size(); }
    std::size_t interior_rows() const noexcept { return blocks * grid_size(); }
    std::size_t boundary_rows_per_block() const noexcept { return 2 * (gx.size() + gy.size()); }
    std::size_t boundary_rows() const noexcept { return blocks * boundary_rows_per_block(); }
};

/// Collocates `sys` on gx x gy. Interior rows represent
/// sum_terms c * div(a_field grad u_i) = -F_j (divergence expanded as
/// a * lap u + grad a . grad u). Boundary rows impose u_i = g_i on the
/// edges through the Lagrange basis evaluated there, scaled by tau;
/// g_0 = dirichlet (zero when empty), g_i = 0 for i > 0.
GlobalSystem build_global_system(const CoupledSystem& sys, const SincGrid& gx, const SincGrid& gy,
                                 double tau = 1e3, const BoundaryFunction& dirichlet = {},
                                 Execution exec = Execution::parallel);

/// Triplet-based straightforward assembly; reference for the CSR kernel.
GlobalSystem build_global_system_serial(const CoupledSystem& sys, const SincGrid& gx,
                                        const SincGrid& gy, double tau = 1e3,
                                        const BoundaryFunction& dirichlet = {});

enum class SolverMethod { automatic, dense_qr, cgls };

struct SolveOptions {
    SolverMethod method = SolverMethod::automatic;
    std::size_t dense_limit = 2500;      ///< automatic: dense QR up to this many unknowns
    double rank_tolerance = 1e-13;       ///< relative pivot threshold
    double cg_tolerance = 1e-13;         ///< relative normal-equation residual
    int max_iterations = 5000;
    Execution exec = Execution::parallel;
};

struct LeastSquaresResult {
    Eigen::VectorXd solution;
    double residual_norm = 0.0;
    SolverMethod method = SolverMethod::dense_qr;
    int iterations = 0;
};

/// Minimizes ||A x - b||_2. Dense column-pivoted QR, or CGLS on the normal
/// equations right-preconditioned by the QR factor of the mean (block 0,0)
/// operator. Throws RankDeficientError / NumericError.
LeastSquaresResult least_squares(const GlobalSystem& g, const SolveOptions& opts = {});

class PceSolution {
public:
    PceSolution(SincGrid gx, SincGrid gy, std::vector<std::vector<double>> coeffs,
                double residual_norm, std::shared_ptr<const ChaosBasis> basis);

    const SincGrid& grid_x() const noexcept { return gx_; }
    const SincGrid& grid_y() const noexcept { return gy_; }
    std::size_t basis_size() const noexcept { return coeffs_.size(); }
    const std::vector<std::vector<double>>& coefficient_fields() const noexcept { return coeffs_; }
    double residual_norm() const noexcept { return residual_norm_; }
    const std::shared_ptr<const ChaosBasis>& basis() const noexcept { return basis_; }

    TensorInterpolant coefficient(std::size_t i) const;
    TensorInterpolant mean() const { return coefficient(0); }

    double mean_at(double x, double y) const;
    double variance_at(double x, double y) const;

    /// Lattice samples, x index major.
    Eigen::MatrixXd sample_coefficient(std::size_t i, std::span<const double> xs, std::span<const double> ys) const;
    Eigen::MatrixXd sample_mean(std::span<const double> xs, std::span<const double> ys) const;
    /// sum_{i>=1} u_i^2 with each u_i interpolated first.
    Eigen::MatrixXd sample_variance(std::span<const double> xs, std::span<const double> ys) const;
    /// u(., ., theta) = sum_i u_i Phi_i(theta).
    TensorInterpolant realize(std::span<const double> theta) const;

private:
    SincGrid gx_;
    SincGrid gy_;
    std::vector<std::vector<double>> coeffs_;
    double residual_norm_;
    std::shared_ptr<const ChaosBasis> basis_;
};

PceSolution solve_least_squares(const GlobalSystem& g, std::shared_ptr<const ChaosBasis> basis,
                                const SolveOptions& opts = {}, LeastSquaresResult* details = nullptr);

/// Single-equation solve of div(a grad u) = f with u = dirichlet on the edges.
TensorInterpolant deterministic_solve(const CoefficientExpr& a, const CoefficientExpr& f,
                                      const BoundaryFunction& dirichlet, const SincGrid& gx,
                                      const SincGrid& gy, double tau = 1e3);

/// "row,col,value" triplets of the assembled matrix, and the rhs one value per line.
void write_system_triplets(std::ostream& os, const GlobalSystem& g);
void write_system_rhs(std::ostream& os, const GlobalSystem& g);

std::string to_string(SolverMethod m);

}  // namespace polysinc
