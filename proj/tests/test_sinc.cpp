#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "polysinc/errors.hpp"
#include "polysinc/sinc.hpp"
#include "support.hpp"

using namespace polysinc;
using testing_support::Rng;

TEST_SUITE("sinc") {

TEST_CASE("sinc points follow the conformal map") {
    const SincGrid g(-1.0, 1.0, 4, 0.7);
    CHECK(g.size() == 9);
    CHECK(g.at(0) == 0.0);
    for (int k = -4; k <= 4; ++k) {
        const double e = std::exp(k * 0.7);
        CHECK(g.at(k) == doctest::Approx((-1.0 + e) / (1.0 + e)).epsilon(1e-15));
        CHECK(std::abs(g.at(-k) + g.at(k)) < 1e-15);
    }
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.point(i) > g.point(i - 1));
    CHECK(g.point(0) > -1.0);
    CHECK(g.point(g.size() - 1) < 1.0);
}

TEST_CASE("sinc point example N=2, h=pi/sqrt2") {
    const double h = std::numbers::pi / std::sqrt(2.0);
    const SincGrid g = sinc_points(-1.0, 1.0, 2, h);
    // (e^h - 1)/(e^h + 1) = tanh(h/2); 30-digit evaluation gives 0.804317011695065071847718004808
    CHECK(g.at(1) == doctest::Approx(std::tanh(h / 2)).epsilon(1e-15));
    CHECK(std::abs(g.at(1) - 0.80431701169506507) < 1e-15);
}

TEST_CASE("sinc points on a shifted interval keep the reflection symmetry") {
    const SincGrid g(0.0, 1.0, 5, default_step(5));
    CHECK(g.at(0) == 0.5);
    for (int k = 1; k <= 5; ++k) CHECK(std::abs(g.at(-k) + g.at(k) - 1.0) < 1e-15);
}

TEST_CASE("sinc point arguments are validated") {
    CHECK_THROWS_AS(SincGrid(1.0, 1.0, 2, 1.0), DomainError);
    CHECK_THROWS_AS(SincGrid(2.0, 1.0, 2, 1.0), DomainError);
    CHECK_THROWS_AS(SincGrid(-1.0, 1.0, 0, 1.0), DomainError);
    CHECK_THROWS_AS(SincGrid(-1.0, 1.0, 2, 0.0), DomainError);
    CHECK_THROWS_AS(SincGrid(-1.0, 1.0, 2, -1.0), DomainError);
    CHECK_THROWS_AS(SincGrid(-1.0, 1.0, 2, std::nan("")), DomainError);
}

TEST_CASE("default step") { CHECK(default_step(4) == doctest::Approx(0.9)); }

TEST_CASE("lagrange basis is a delta at the nodes") {
    const SincGrid g(-1.0, 1.0, 3, default_step(3));
    for (std::size_t j = 0; j < g.size(); ++j) {
        const auto b = lagrange_basis_eval(g, g.point(j));
        for (std::size_t k = 0; k < b.size(); ++k) CHECK(b[k] == (k == j ? 1.0 : 0.0));
    }
}

TEST_CASE("lagrange basis: partition of unity at random points") {
    Rng rng(20240601);
    for (int N = 1; N <= 7; ++N) {
        const SincGrid g(-1.0, 1.0, N, default_step(N));
        for (int s = 0; s < 1000; ++s) {
            const double x = rng.uniform(-1.0, 1.0);
            double sum = 0.0;
            for (double v : lagrange_basis_eval(g, x)) sum += v;
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("lagrange basis reproduces x^4 with five nodes") {
    const SincGrid g(-1.0, 1.0, 2, default_step(2));
    for (double x : {-1.0, -0.63, -0.1, 0.2, 0.77, 1.0}) {
        const auto b = lagrange_basis_eval(g, x);
        double v = 0.0;
        for (std::size_t k = 0; k < b.size(); ++k) v += b[k] * std::pow(g.point(k), 4);
        CHECK(std::abs(v - std::pow(x, 4)) < 1e-12);
    }
}

TEST_CASE("lagrange basis rejects points outside the interval") {
    const SincGrid g(0.0, 2.0, 2, 1.0);
    CHECK_THROWS_AS(lagrange_basis_eval(g, -1e-9), DomainError);
    CHECK_THROWS_AS(lagrange_basis_eval(g, 2.1), DomainError);
    CHECK_NOTHROW(lagrange_basis_eval(g, 0.0));
    CHECK_NOTHROW(lagrange_basis_eval(g, 2.0));
}

TEST_CASE("second derivative matrix examples") {
    const SincGrid g(-1.0, 1.0, 4, default_step(4));
    const auto D = second_derivative_matrix(g);
    const auto n = static_cast<Eigen::Index>(g.size());
    CHECK(D.d0.isIdentity(0.0));
    for (Eigen::Index i = 0; i < n; ++i) {
        double c = 0.0, q = 0.0, cube = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double xj = g.point(static_cast<std::size_t>(j));
            c += D.d2(i, j);
            q += D.d2(i, j) * xj * xj;
            cube += D.d2(i, j) * xj * xj * xj;
        }
        CHECK(std::abs(c) < 1e-9);
        CHECK(q == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(std::abs(cube - 6.0 * g.point(static_cast<std::size_t>(i))) < 1e-10);
    }
}

TEST_CASE("property: differentiation matrices are exact on monomials up to degree n-1") {
    for (int N = 1; N <= 7; ++N) {
        for (double h : {default_step(N), 0.6, std::numbers::pi / std::sqrt(N)}) {
            const SincGrid g(-1.0, 1.0, N, h);
            const auto D = second_derivative_matrix(g);
            const auto n = static_cast<int>(g.size());
            // wide steps crowd the nodes at the ends; rounding then scales with the operator norm
            const bool crowded = h > 1.0 && N > 3;
            const double n1 = crowded ? D.d1.cwiseAbs().rowwise().sum().maxCoeff() : 1.0;
            const double n2 = crowded ? D.d2.cwiseAbs().rowwise().sum().maxCoeff() : 1.0;
            for (int q = 0; q < n; ++q) {
                Eigen::VectorXd u(n), du(n), d2u(n);
                for (int i = 0; i < n; ++i) {
                    const double x = g.point(static_cast<std::size_t>(i));
                    u[i] = std::pow(x, q);
                    du[i] = q >= 1 ? q * std::pow(x, q - 1) : 0.0;
                    d2u[i] = q >= 2 ? q * (q - 1) * std::pow(x, q - 2) : 0.0;
                }
                const double s1 = std::max({1.0, du.cwiseAbs().maxCoeff(), n1});
                const double s2 = std::max({1.0, d2u.cwiseAbs().maxCoeff(), n2});
                CHECK((D.d1 * u - du).cwiseAbs().maxCoeff() <= 1e-9 * s1);
                CHECK((D.d2 * u - d2u).cwiseAbs().maxCoeff() <= 1e-9 * s2);
            }
        }
    }
}

TEST_CASE("first derivative matrix matches the one in DiffMatrices") {
    const SincGrid g(0.0, 1.0, 3, 0.9);
    CHECK((first_derivative_matrix(g) - second_derivative_matrix(g).d1).norm() == 0.0);
}

TEST_CASE("lebesgue estimate values") {
    CHECK(lebesgue_estimate(11) == doctest::Approx(1.86714).epsilon(1e-5));
    CHECK(lebesgue_estimate(1) == doctest::Approx(1.29682).epsilon(1e-5));
    CHECK(lebesgue_estimate(11) == doctest::Approx(std::log(12.0) / std::numbers::pi + 1.07618).epsilon(1e-15));
    for (int n = 1; n < 100; ++n) CHECK(lebesgue_estimate(n + 1) > lebesgue_estimate(n));
}

TEST_CASE("lebesgue measured: bounds and refinement stability") {
    const SincGrid g3(-1.0, 1.0, 1, default_step(1));
    CHECK(lebesgue_measured(g3, 10000) >= 1.0);
    for (int N = 1; N <= 6; ++N) {
        const SincGrid g(-1.0, 1.0, N, default_step(N));
        const double a = lebesgue_measured(g, 10000);
        const double b = lebesgue_measured(g, 20000);
        CHECK(std::abs(a - b) < 0.01 * a);
        // the Lebesgue function is 1 at every node
        CHECK(a >= 1.0);
    }
    // n = 3: the maximum sits at the interval ends, where it is closed form
    const double x1 = g3.point(2);
    const double at_end = (1 - x1) / (2 * x1 * x1) + (1 - x1 * x1) / (x1 * x1) + (1 + x1) / (2 * x1 * x1);
    CHECK(lebesgue_measured(g3, 10000) == doctest::Approx(at_end).epsilon(1e-12));
}

TEST_CASE("tensor interpolant") {
    const SincGrid gx(-1.0, 1.0, 5, default_step(5));
    const SincGrid gy(0.0, 2.0, 5, default_step(5));
    std::vector<double> lin, quad, other;
    for (std::size_t p = 0; p < gx.size(); ++p)
        for (std::size_t q = 0; q < gy.size(); ++q) {
            const double x = gx.point(p), y = gy.point(q);
            lin.push_back(x + y);
            quad.push_back(x * x * y * y);
            other.push_back(std::sin(3 * x) * y);
        }
    const TensorInterpolant L(gx, gy, lin), Q(gx, gy, quad), O(gx, gy, other);

    SUBCASE("interpolation condition is exact") {
        for (std::size_t p = 0; p < gx.size(); ++p)
            for (std::size_t q = 0; q < gy.size(); ++q)
                CHECK(O(gx.point(p), gy.point(q)) == other[p * gy.size() + q]);
    }
    SUBCASE("polynomial reproduction") {
        Rng rng(77);
        for (int s = 0; s < 200; ++s) {
            const double x = rng.uniform(-1, 1), y = rng.uniform(0, 2);
            CHECK(std::abs(L(x, y) - (x + y)) < 1e-12);
        }
        CHECK(std::abs(Q(0.3, 0.7) - 0.0441) < 1e-10);
    }
    SUBCASE("linear in the values") {
        std::vector<double> combo(lin.size());
        for (std::size_t i = 0; i < lin.size(); ++i) combo[i] = 2.0 * lin[i] - 3.0 * other[i];
        const TensorInterpolant C(gx, gy, combo);
        CHECK(C(0.41, 1.3) == doctest::Approx(2.0 * L(0.41, 1.3) - 3.0 * O(0.41, 1.3)).epsilon(1e-13));
    }
    SUBCASE("sample agrees with pointwise evaluation") {
        const std::vector<double> xs{-1.0, -0.2, 0.5, 1.0}, ys{0.0, 0.3, 2.0};
        const auto S = O.sample(xs, ys);
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = 0; j < ys.size(); ++j)
                CHECK(S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) ==
                      doctest::Approx(O(xs[i], ys[j])).epsilon(1e-13));
    }
    SUBCASE("outside the box is a domain error") {
        CHECK_THROWS_AS(O(1.5, 1.0), DomainError);
        CHECK_THROWS_AS(O(0.0, -0.1), DomainError);
    }
    CHECK_THROWS_AS(TensorInterpolant(gx, gy, std::vector<double>(3)), DomainError);
}

TEST_CASE("property: interpolation error of a smooth function decreases with N") {
    auto u = [](double x) { return std::exp(x) / (1 + x * x); };
    double prev = 1e300;
    for (int N : {2, 4, 6, 8, 10}) {
        const SincGrid g(-1.0, 1.0, N, default_step(N));
        double err = 0.0;
        for (int s = 0; s <= 2000; ++s) {
            const double x = -1.0 + 2.0 * s / 2000;
            const auto b = lagrange_basis_eval(g, x);
            double v = 0.0;
            for (std::size_t k = 0; k < b.size(); ++k) v += b[k] * u(g.point(k));
            err = std::max(err, std::abs(v - u(x)));
        }
        CHECK(err < prev);
        prev = err;
    }
}

}  // TEST_SUITE
