#include "polysinc/kernels.hpp"

#include <array>

#include "polysinc/errors.hpp"

namespace polysinc {

namespace {
constexpr std::ptrdiff_t dot_chunks = 64;
}

void csr_multiply(const CsrMatrix& A, std::span<const double> x, std::span<double> y,
                  Execution exec) {
    if (static_cast<std::ptrdiff_t>(x.size()) != A.cols() || static_cast<std::ptrdiff_t>(y.size()) != A.rows())
        throw DimensionMismatch("csr_multiply: operand sizes do not match the matrix");
    const auto* outer = A.outerIndexPtr();
    const auto* inner = A.innerIndexPtr();
    const auto* vals = A.valuePtr();
    const std::ptrdiff_t rows = A.rows();
    auto row_product = [&](std::ptrdiff_t r) {
        double s = 0.0;
        for (auto k = outer[r]; k < outer[r + 1]; ++k) s += vals[k] * x[static_cast<std::size_t>(inner[k])];
        y[static_cast<std::size_t>(r)] = s;
    };
    if (exec == Execution::serial) {
        for (std::ptrdiff_t r = 0; r < rows; ++r) row_product(r);
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r) row_product(r);
}

double dot(std::span<const double> a, std::span<const double> b, Execution exec) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    const auto n = static_cast<std::ptrdiff_t>(a.size());
    std::array<double, dot_chunks> partial{};
    auto chunk_sum = [&](std::ptrdiff_t c) {
        const std::ptrdiff_t lo = n * c / dot_chunks;
        const std::ptrdiff_t hi = n * (c + 1) / dot_chunks;
        double s = 0.0;
        for (std::ptrdiff_t i = lo; i < hi; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
        partial[static_cast<std::size_t>(c)] = s;
    };
    if (exec == Execution::serial || n < 4096) {
        for (std::ptrdiff_t c = 0; c < dot_chunks; ++c) chunk_sum(c);
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t c = 0; c < dot_chunks; ++c) chunk_sum(c);
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace polysinc
