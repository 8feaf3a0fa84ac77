#pragma once

// Reference solutions and error metrics: conservative 5-point finite
// differences (single equation and the coupled Galerkin system), the
// factorized semi-analytic solution for constant-coefficient K = 1 problems,
// quadrature-sampled references and lattice norms.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "polysinc/chaos.hpp"
#include "polysinc/kernels.hpp"
#include "polysinc/model.hpp"

namespace polysinc {

/// n x n equispaced nodes including the boundary; values(p, q) sits at (x_p, y_q).
struct UniformGrid {
    Rectangle domain;
    std::size_t n = 0;
    Eigen::MatrixXd values;

    UniformGrid() = default;
    UniformGrid(const Rectangle& domain, std::size_t n);

    double hx() const noexcept { return (domain.x_hi - domain.x_lo) / static_cast<double>(n - 1); }
    double hy() const noexcept { return (domain.y_hi - domain.y_lo) / static_cast<double>(n - 1); }
    double x(std::size_t p) const noexcept;
    double y(std::size_t q) const noexcept;

    double bilinear(double x, double y) const;
    /// Piecewise 4 x 4-point Lagrange interpolation (fourth order).
    double bicubic(double x, double y) const;
};

/// Lattice header "nx,ny,x_min,x_max,y_min,y_max" followed by the values.
std::string to_csv(const UniformGrid& g);

/// -div(a grad u) = f on the interior nodes, u = 0 on the boundary.
/// Half-point coefficients are arithmetic means of nodal values.
UniformGrid fd_solve(const CoefficientExpr& a, const CoefficientExpr& f, const Rectangle& domain,
                     std::size_t n);

/// Richardson extrapolation (4 u_{2n-1} - u_n) / 3 on the n-node grid.
UniformGrid fd_solve_richardson(const CoefficientExpr& a, const CoefficientExpr& f,
                                const Rectangle& domain, std::size_t n);

/// Matrix-free 5-point discretization of a CoupledSystem on the interior
/// nodes; block j of the output is sum_terms c * L_field u_block.
class FdBlockOperator {
public:
    FdBlockOperator(const CoupledSystem& sys, std::size_t n);

    std::size_t grid_n() const noexcept { return n_; }
    std::size_t block_size() const noexcept { return (n_ - 2) * (n_ - 2); }
    std::size_t blocks() const noexcept { return sys_.block_count(); }
    std::size_t size() const noexcept { return blocks() * block_size(); }

    void apply(std::span<const double> u, std::span<double> out, Execution exec = Execution::parallel) const;
    /// Scalar operator of one field, interior nodes, x-major.
    Eigen::SparseMatrix<double> field_matrix(std::size_t field) const;
    /// Full block matrix, assembled from field_matrix.
    Eigen::SparseMatrix<double> assemble() const;
    /// Right-hand side F_j sampled at interior nodes.
    Eigen::VectorXd rhs() const;

private:
    void apply_field(std::size_t field, double c, const double* u, double* out) const;

    CoupledSystem sys_;
    std::size_t n_;
    double hx2_;
    double hy2_;
    std::vector<Eigen::MatrixXd> east_;   // (n-1) x n half-point means in x
    std::vector<Eigen::MatrixXd> north_;  // n x (n-1) half-point means in y
};

struct BlockFdOptions {
    double tolerance = 1e-12;  ///< relative residual of PCG
    int max_iterations = 1000;
    Execution exec = Execution::parallel;
};

struct BlockFdResult {
    std::vector<UniformGrid> blocks;
    int iterations = 0;
    double relative_residual = 0.0;
};

/// PCG on the coupled system, preconditioned block-diagonally by the
/// Cholesky factor of the a0 operator. Throws NumericError on breakdown.
BlockFdResult fd_solve_block(const CoupledSystem& sys, std::size_t n, const BlockFdOptions& opts = {});

/// Assembled sparse LDL^T solve; reference for fd_solve_block.
BlockFdResult fd_solve_block_direct(const CoupledSystem& sys, std::size_t n);

/// Evaluation lattice: n x n equispaced points including the boundary.
struct Lattice {
    Rectangle domain;
    std::size_t n = 0;
    std::vector<double> xs;
    std::vector<double> ys;

    static Lattice uniform(const Rectangle& domain, std::size_t n);
};

using FieldEvaluator = std::function<double(double, double)>;

Eigen::MatrixXd sample(const FieldEvaluator& f, const Lattice& lat);

struct ErrorReport {
    double l2 = 0.0;   ///< sqrt of the tensor trapezoidal integral of e^2
    double sup = 0.0;  ///< max |e| over the lattice
    std::size_t lattice_n = 0;
};

ErrorReport error_norms(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Lattice& lat);
ErrorReport error_norms(const FieldEvaluator& a, const FieldEvaluator& b, const Lattice& lat);

/// Exact moments of u = -f w / (a0 + c xi), c = b0 a_1, for K = 1 problems
/// with constant a0, a_1 and f, where lap w = 1, w = 0 on the boundary.
/// w comes from fd_solve_richardson on an n-node grid, read back bicubically.
class SemiAnalyticExample1 {
public:
    explicit SemiAnalyticExample1(const SpdeProblem& p, std::size_t n = 161);

    static bool applicable(const SpdeProblem& p);

    double w(double x, double y) const;
    double mean(double x, double y) const { return mean_factor_ * w(x, y); }
    double variance(double x, double y) const { const double v = w(x, y); return variance_factor_ * v * v; }

    /// E(1/(a0 + c xi)) and the factor in front of w^2 in V(u).
    double mean_factor() const noexcept { return mean_factor_; }
    double variance_factor() const noexcept { return variance_factor_; }
    const UniformGrid& w_grid() const noexcept { return w_; }

private:
    UniformGrid w_;
    double mean_factor_;
    double variance_factor_;
};

struct MomentFields {
    Eigen::MatrixXd mean;
    Eigen::MatrixXd variance;
};

/// Lattice samples of the solution of -div(a grad u) = f for one realization a.
using RealizationSolver = std::function<Eigen::MatrixXd(const CoefficientExpr& a)>;

/// Tensor quadrature over [-1,1]^K with `rule` in each direction (weights
/// summing to one), V = sum w u^2 - (sum w u)^2, both sums pairwise.
/// Solver failures are rethrown as NumericError naming the node.
MomentFields sampled_reference(const SpdeProblem& p, const QuadratureRule& rule, const RealizationSolver& solve,
                               Execution exec = Execution::parallel);

RealizationSolver fd_realization_solver(const SpdeProblem& p, std::size_t n, const Lattice& lat,
                                        bool richardson = true);

struct DecayFit {
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t used = 0;
};

/// Fits maxima[i] ~ alpha exp(-beta i) by least squares on log scale.
/// Non-positive entries are skipped; fewer than 3 usable entries is a DomainError.
DecayFit decay_fit(std::span<const double> maxima);

}  // namespace polysinc
