#pragma once

// Model problem  -div(a(x,y,theta) grad u) = f  in Q,  u = 0 on dQ, with
// a = a0 + b0 * sum_k theta_k a_k, and its stochastic Galerkin projection.

#include <cstddef>
#include <span>
#include <vector>

#include "polysinc/chaos.hpp"
#include "polysinc/expr.hpp"

namespace polysinc {

struct Rectangle {
    double x_lo = 0.0;
    double x_hi = 1.0;
    double y_lo = 0.0;
    double y_hi = 1.0;

    double area() const noexcept { return (x_hi - x_lo) * (y_hi - y_lo); }
    bool contains(double x, double y) const noexcept {
        return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
    }
};

struct SpdeProblem {
    Rectangle domain;
    int K = 1;
    CoefficientExpr a0 = CoefficientExpr::number(1.0);
    double b0 = 0.5;
    std::vector<CoefficientExpr> a;  ///< a_1..a_K
    CoefficientExpr f = CoefficientExpr::number(1.0);
    double coercivity_floor = 1e-8;  ///< required lower bound alpha

    /// a(., ., theta) = a0 + sum_k (b0 theta_k) a_k as a single expression.
    CoefficientExpr realize(std::span<const double> theta) const;

    /// Throws DimensionMismatch / DomainError on malformed problems.
    void check() const;
};

/// Certified floor min_{sample} (a0 - |b0| sum_k |a_k|) over a uniform
/// (density+1)^2 sample of the closed domain. Throws NonCoerciveError if
/// the floor is <= 0 or below the problem's required alpha.
double validate_coercivity(const SpdeProblem& p, int sample_density = 200);

/// One contribution to equation j: coefficient * div(fields[field] grad u_block).
struct BlockTerm {
    std::size_t block;
    std::size_t field;
    double coefficient;
};

/// The coupled deterministic system, equation j:
///   -sum_{terms} coefficient * div(fields[field] grad u_block) = rhs[j].
/// fields[0] is a0 and fields[k] is a_k; every equation carries its own
/// a0 term with coefficient 1.
struct CoupledSystem {
    Rectangle domain;
    std::vector<CoefficientExpr> fields;
    std::vector<std::vector<BlockTerm>> equations;
    std::vector<CoefficientExpr> rhs;

    std::size_t block_count() const noexcept { return equations.size(); }

    /// Weight of the a0 operator acting on u_i in equation j.
    double laplacian_weight(std::size_t j, std::size_t i) const;
    /// c_kji = b0 <xi_k Phi_i, Phi_j> for k = 1..K.
    double coupling(std::size_t k, std::size_t j, std::size_t i) const;
    /// True when equation j has no term acting on u_i.
    bool block_is_zero(std::size_t j, std::size_t i) const;
};

/// Galerkin projection onto the chaos basis. Tensor entries below
/// `threshold` (absolute) are treated as structural zeros.
CoupledSystem galerkin_assemble(const SpdeProblem& p, const ChaosBasis& basis,
                                const TripleTensor& tensor, double threshold = 1e-13);

/// A single deterministic equation -div(a grad u) = f on `domain`.
CoupledSystem single_equation(const Rectangle& domain, CoefficientExpr a, CoefficientExpr f);

}  // namespace polysinc
