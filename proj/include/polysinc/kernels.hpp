#pragma once

// Data-parallel kernels. Every kernel has a serial path that is kept as the
// reference for tests and benchmarks; the OpenMP path writes disjoint output
// slots and reduces in a fixed order, so both paths are run-to-run
// deterministic.

#include <cstddef>
#include <span>

#include <Eigen/Sparse>

namespace polysinc {

enum class Execution { serial, parallel };

using CsrMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, std::ptrdiff_t>;

/// y = A x.
void csr_multiply(const CsrMatrix& A, std::span<const double> x, std::span<double> y,
                  Execution exec = Execution::parallel);

/// Dot product summed over a fixed number of contiguous chunks, so the
/// result does not depend on the thread count.
double dot(std::span<const double> a, std::span<const double> b,
           Execution exec = Execution::parallel);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> v);

}  // namespace polysinc
