#include <doctest.h>

#include <numeric>
#include <vector>

#include "polysinc/chaos.hpp"
#include "polysinc/io.hpp"
#include "polysinc/kernels.hpp"
#include "support.hpp"

using namespace polysinc;
using testing_support::Rng;

TEST_SUITE("kernels") {

TEST_CASE("csr multiply: serial and parallel paths agree bitwise") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int rows = rng.integer(1, 300), cols = rng.integer(1, 300);
        std::vector<Eigen::Triplet<double, std::ptrdiff_t>> t;
        for (int e = 0; e < rows * 4; ++e)
            t.emplace_back(rng.integer(0, rows - 1), rng.integer(0, cols - 1), rng.uniform(-1, 1));
        CsrMatrix A(rows, cols);
        A.setFromTriplets(t.begin(), t.end());
        std::vector<double> x(static_cast<std::size_t>(cols)), ys(static_cast<std::size_t>(rows)), yp(ys.size());
        for (auto& v : x) v = rng.uniform(-2, 2);
        csr_multiply(A, x, ys, Execution::serial);
        csr_multiply(A, x, yp, Execution::parallel);
        CHECK(ys == yp);
        const Eigen::VectorXd ref = A * Eigen::Map<const Eigen::VectorXd>(x.data(), cols);
        for (int i = 0; i < rows; ++i) CHECK(ys[static_cast<std::size_t>(i)] == doctest::Approx(ref[i]).epsilon(1e-13));
    }
}

TEST_CASE("dot and pairwise sums") {
    Rng rng(12);
    for (int n : {0, 1, 7, 1000, 100003}) {
        std::vector<double> a(static_cast<std::size_t>(n)), b(a.size());
        for (auto& v : a) v = rng.integer(-100, 100);
        for (auto& v : b) v = rng.integer(-100, 100);
        double exact = 0;
        for (std::size_t i = 0; i < a.size(); ++i) exact += a[i] * b[i];  // integers: exact in double
        CHECK(dot(a, b, Execution::serial) == exact);
        CHECK(dot(a, b, Execution::parallel) == exact);
        CHECK(pairwise_sum(a) == std::accumulate(a.begin(), a.end(), 0.0));
    }
    std::vector<double> r(5000);
    for (auto& v : r) v = rng.uniform(-1, 1);
    CHECK(dot(r, r, Execution::serial) == dot(r, r, Execution::parallel));
}

TEST_CASE("triple tensor: parallel build equals the serial reference") {
    for (auto [K, P] : {std::pair{1, 3}, std::pair{3, 3}, std::pair{5, 3}}) {
        const ChaosBasis basis(K, P);
        const auto a = triple_tensor(basis), b = triple_tensor_serial(basis);
        for (int k = 0; k < K; ++k)
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = 0; j < basis.size(); ++j) CHECK(a(k, i, j) == b(k, i, j));
    }
}

TEST_CASE("number formatting keeps 17 significant digits") {
    CHECK(format_real(0.1) == "1.0000000000000001e-01");
    CHECK(format_real(-2.0) == "-2.0000000000000000e+00");
    CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

}  // TEST_SUITE
