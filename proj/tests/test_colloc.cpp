#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

#include "polysinc/colloc.hpp"
#include "polysinc/errors.hpp"
#include "polysinc/reference.hpp"
#include "support.hpp"

using namespace polysinc;
using testing_support::Rng;

namespace {

constexpr double pi = std::numbers::pi;
using E = CoefficientExpr;

SpdeProblem example1() {
    SpdeProblem p;
    p.domain = {-1, 1, -1, 1};
    p.K = 1;
    p.a0 = E::number(2.0);
    p.b0 = 1.0;
    p.a = {E::number(1.0)};
    p.f = E::number(-1.0);
    return p;
}

SpdeProblem example2() {
    SpdeProblem p;
    p.domain = {0, 1, 0, 1};
    p.K = 5;
    p.a0 = E::number(1.0);
    p.b0 = 0.5;
    for (const char* s : {"1/4 * cos(2*pi*x)", "1/4 * cos(2*pi*y)", "1/16 * cos(4*pi*x)", "1/16 * cos(4*pi*y)",
                          "1/8 * cos(2*pi*x) * cos(2*pi*y)"})
        p.a.push_back(parse_coefficient(s));
    return p;
}

struct Setup {
    std::shared_ptr<const ChaosBasis> basis;
    CoupledSystem sys;
    SincGrid gx;
    SincGrid gy;
};

Setup setup(const SpdeProblem& p, int P, int N) {
    auto basis = std::make_shared<const ChaosBasis>(p.K, P);
    auto sys = galerkin_assemble(p, *basis, triple_tensor(*basis));
    return {basis, sys, SincGrid(p.domain.x_lo, p.domain.x_hi, N, default_step(N)),
            SincGrid(p.domain.y_lo, p.domain.y_hi, N, default_step(N))};
}

Eigen::MatrixXd dense(const GlobalSystem& g) { return Eigen::MatrixXd(g.matrix); }

}  // namespace

TEST_SUITE("colloc") {

TEST_CASE("global system dimensions") {
    const Rectangle unit{0, 1, 0, 1};
    const SincGrid g1(0, 1, 1, default_step(1));
    const auto poisson = build_global_system(single_equation(unit, E::number(1.0), E::number(1.0)), g1, g1);
    CHECK(poisson.interior_rows() == 9);
    CHECK(poisson.boundary_rows() == 12);
    CHECK(poisson.matrix.rows() == 21);
    CHECK(poisson.matrix.cols() == 9);

    const auto s = setup(example1(), 3, 5);
    const auto g = build_global_system(s.sys, s.gx, s.gy);
    CHECK(g.unknowns() == 484);
    CHECK(g.interior_rows() == 484);
    CHECK(g.boundary_rows() == 176);
    CHECK(g.matrix.rows() == 660);
    CHECK(g.rhs.size() == 660);
}

TEST_CASE("pure Poisson interior block equals M1 + M2") {
    const Rectangle dom{-1, 1, 0, 2};
    const SincGrid gx(-1, 1, 3, default_step(3)), gy(0, 2, 2, default_step(2));
    const auto g = build_global_system(single_equation(dom, E::number(1.0), E::number(0.0)), gx, gy);
    const auto A = dense(g);
    const auto Dx = second_derivative_matrix(gx).d2, Dy = second_derivative_matrix(gy).d2;
    const auto nx = static_cast<Eigen::Index>(gx.size()), ny = static_cast<Eigen::Index>(gy.size());
    // -div(grad u) = 0  =>  rows represent lap u = -0
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nx * ny, nx * ny);
    for (Eigen::Index p = 0; p < nx; ++p)
        for (Eigen::Index q = 0; q < ny; ++q) {
            for (Eigen::Index pp = 0; pp < nx; ++pp) M(p * ny + q, pp * ny + q) += Dx(p, pp);
            for (Eigen::Index qq = 0; qq < ny; ++qq) M(p * ny + q, p * ny + qq) += Dy(q, qq);
        }
    CHECK((A.topRows(nx * ny) - M).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("boundary rows are tau times the Lagrange basis at the edge") {
    const auto s = setup(example1(), 1, 2);
    const double tau = 250.0;
    const auto g = build_global_system(s.sys, s.gx, s.gy, tau);
    const auto A = dense(g);
    const auto n = s.gx.size();
    const auto left = lagrange_basis_eval(s.gx, -1.0);
    const auto top = lagrange_basis_eval(s.gy, 1.0);
    const auto base = static_cast<Eigen::Index>(g.interior_rows());
    const auto per = static_cast<Eigen::Index>(g.boundary_rows_per_block());
    const auto nb = static_cast<Eigen::Index>(g.grid_size());
    for (Eigen::Index blk = 0; blk < 2; ++blk) {
        for (Eigen::Index r = 0; r < per; ++r) {
            CHECK(A.row(base + blk * per + r).sum() == doctest::Approx(tau).epsilon(1e-12));
            CHECK(g.rhs[base + blk * per + r] == 0.0);
        }
        // x = a, y index 3
        for (std::size_t p = 0; p < n; ++p)
            CHECK(A(base + blk * per + 3, blk * nb + static_cast<Eigen::Index>(p * n + 3)) == tau * left[p]);
        // y = d, x index 1
        for (std::size_t q = 0; q < n; ++q)
            CHECK(A(base + blk * per + static_cast<Eigen::Index>(3 * n) + 1, blk * nb + static_cast<Eigen::Index>(n + q)) ==
                  tau * top[q]);
    }
}

TEST_CASE("tau scales boundary rows and rhs only") {
    const Rectangle dom{0, 1, 0, 1};
    const SincGrid g(0, 1, 2, default_step(2));
    const auto sys = single_equation(dom, E::number(1.0), E::number(-2.0));
    auto bc = [](double x, double y) { return x * x + y; };
    const auto a = build_global_system(sys, g, g, 100.0, bc);
    const auto b = build_global_system(sys, g, g, 1000.0, bc);
    const auto Aa = dense(a), Ab = dense(b);
    const auto ni = static_cast<Eigen::Index>(a.interior_rows());
    CHECK((Aa.topRows(ni) - Ab.topRows(ni)).norm() == 0.0);
    CHECK((10.0 * Aa.bottomRows(Aa.rows() - ni) - Ab.bottomRows(Ab.rows() - ni)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((10.0 * a.rhs.tail(a.rhs.size() - ni) - b.rhs.tail(b.rhs.size() - ni)).cwiseAbs().maxCoeff() < 1e-9);
    // consistent system: x^2 + y solves lap u = 2 exactly in the polynomial space
    const auto ua = least_squares(a).solution, ub = least_squares(b).solution;
    CHECK((ua - ub).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("parallel CSR assembly matches the serial triplet reference") {
    for (int P : {1, 2}) {
        const auto s = setup(example2(), P, 3);
        const auto par = build_global_system(s.sys, s.gx, s.gy, 1e3, {}, Execution::parallel);
        const auto ser = build_global_system_serial(s.sys, s.gx, s.gy, 1e3);
        const auto again = build_global_system(s.sys, s.gx, s.gy, 1e3, {}, Execution::parallel);
        REQUIRE(par.matrix.nonZeros() == ser.matrix.nonZeros());
        const Eigen::MatrixXd diff = dense(par) - dense(ser);
        const double scale = dense(ser).cwiseAbs().maxCoeff();
        CHECK(diff.cwiseAbs().maxCoeff() <= 1e-12 * scale);
        CHECK((par.rhs - ser.rhs).norm() == 0.0);
        // run-to-run determinism
        CHECK(std::equal(par.matrix.valuePtr(), par.matrix.valuePtr() + par.matrix.nonZeros(), again.matrix.valuePtr()));
        CHECK(std::equal(par.matrix.innerIndexPtr(), par.matrix.innerIndexPtr() + par.matrix.nonZeros(),
                         ser.matrix.innerIndexPtr()));
    }
}

TEST_CASE("interior blocks without coupling are structurally zero") {
    const auto s = setup(example2(), 2, 2);
    const auto g = build_global_system(s.sys, s.gx, s.gy);
    const auto A = dense(g);
    const auto nb = static_cast<Eigen::Index>(g.grid_size());
    for (std::size_t j = 0; j < g.blocks; ++j)
        for (std::size_t i = 0; i < g.blocks; ++i) {
            const double mag = A.block(static_cast<Eigen::Index>(j) * nb, static_cast<Eigen::Index>(i) * nb, nb, nb).cwiseAbs().maxCoeff();
            if (s.sys.block_is_zero(j, i)) CHECK(mag == 0.0);
            else CHECK(mag > 0.0);
        }
}

TEST_CASE("deterministic solve: harmonic linear function") {
    const SincGrid gx(0, 1, 4, default_step(4)), gy(-1, 2, 4, default_step(4));
    const auto u = deterministic_solve(E::number(1.0), E::number(0.0), [](double x, double y) { return x + y; }, gx, gy);
    Rng rng(5);
    for (int s = 0; s < 200; ++s) {
        const double x = rng.uniform(0, 1), y = rng.uniform(-1, 2);
        CHECK(std::abs(u(x, y) - (x + y)) < 1e-10);
    }
    CHECK(std::abs(u(0, -1) - (-1.0)) < 1e-10);
}

TEST_CASE("deterministic solve: x^2 with lap u = 2 is reproduced at the nodes") {
    const SincGrid g(-1, 1, 5, default_step(5));
    const auto u = deterministic_solve(E::number(1.0), E::number(2.0), [](double x, double) { return x * x; }, g, g);
    for (std::size_t p = 0; p < g.size(); ++p)
        for (std::size_t q = 0; q < g.size(); ++q)
            CHECK(std::abs(u.values()[p * g.size() + q] - g.point(p) * g.point(p)) < 1e-9);
}

TEST_CASE("property: end-to-end polynomial exactness") {
    Rng rng(123);
    for (int trial = 0; trial < 12; ++trial) {
        const int N = rng.integer(1, 4);
        const int n = 2 * N + 1;
        const int da = rng.integer(0, n - 1), db = rng.integer(0, n - 1);
        const double c = rng.uniform(0.5, 2.0);
        // u = c x^da y^db, f = lap u
        auto u = [=](double x, double y) { return c * std::pow(x, da) * std::pow(y, db); };
        E f = E::number(0.0);
        auto power = [](E v, int k) {
            E out = E::number(1.0);
            for (int i = 0; i < k; ++i) out = E::mul(out, v);
            return out;
        };
        if (da >= 2) f = E::add(f, E::mul(E::number(c * da * (da - 1)), E::mul(power(E::x(), da - 2), power(E::y(), db))));
        if (db >= 2) f = E::add(f, E::mul(E::number(c * db * (db - 1)), E::mul(power(E::x(), da), power(E::y(), db - 2))));
        const SincGrid gx(-1, 1, N, default_step(N)), gy(0, 1, N, default_step(N));
        const auto sol = deterministic_solve(E::number(1.0), f, u, gx, gy);
        double scale = 0.0, err = 0.0;
        for (std::size_t p = 0; p < gx.size(); ++p)
            for (std::size_t q = 0; q < gy.size(); ++q) {
                const double exact = u(gx.point(p), gy.point(q));
                scale = std::max(scale, std::abs(exact));
                err = std::max(err, std::abs(sol.values()[p * gy.size() + q] - exact));
            }
        CHECK_MESSAGE(err <= 1e-8 * std::max(scale, 1.0), "N=" << N << " degrees " << da << "," << db);
    }
}

TEST_CASE("deterministic solve: manufactured sin(pi x) sin(pi y)") {
    auto exact = [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
    const auto f = parse_coefficient("-2*pi*pi*sin(pi*x)*sin(pi*y)");
    std::vector<double> errs;
    for (int N = 2; N <= 6; ++N) {
        const SincGrid g(0, 1, N, default_step(N));
        const auto u = deterministic_solve(E::number(1.0), f, {}, g, g);
        const auto lat = Lattice::uniform({0, 1, 0, 1}, 101);
        errs.push_back(error_norms([&](double x, double y) { return u(x, y); }, exact, lat).sup);
    }
    CHECK(errs[3] < 1e-4);  // N = 5
    // monotone decay, below C sqrt(N) exp(-pi^2 sqrt(N) / 2) with C fitted at N = 2
    auto bound = [](double N) { return std::sqrt(N) * std::exp(-pi * pi * std::sqrt(N) / 2); };
    const double C = errs[0] / bound(2.0);
    for (std::size_t i = 1; i < errs.size(); ++i) {
        CHECK(errs[i] < errs[i - 1]);
        CHECK(errs[i] <= C * bound(static_cast<double>(i + 2)));
    }
}

TEST_CASE("deterministic solve: Example 1 realization at xi = 0") {
    const SincGrid g(-1, 1, 5, default_step(5));
    // (xi + 2) lap u = 1 at xi = 0  =>  u = w / 2
    const auto u = deterministic_solve(E::number(2.0), E::number(1.0), {}, g, g);
    const auto lat = Lattice::uniform({-1, 1, -1, 1}, 101);
    const auto rep = error_norms([&](double x, double y) { return u(x, y); },
                                 [](double x, double y) { return testing_support::poisson_square_w(x, y) / 2; }, lat);
    CHECK(rep.l2 < 5e-5);
}

TEST_CASE("least squares: dense and CGLS agree") {
    for (const auto& [p, P, N] : {std::tuple{example1(), 3, 5}, std::tuple{example2(), 1, 4}, std::tuple{example2(), 2, 3}}) {
        const auto s = setup(p, P, N);
        const auto g = build_global_system(s.sys, s.gx, s.gy);
        SolveOptions dense_opts, cg_opts;
        dense_opts.method = SolverMethod::dense_qr;
        cg_opts.method = SolverMethod::cgls;
        const auto a = least_squares(g, dense_opts);
        const auto b = least_squares(g, cg_opts);
        CHECK(a.method == SolverMethod::dense_qr);
        CHECK(b.method == SolverMethod::cgls);
        CHECK(b.iterations > 0);
        CHECK((a.solution - b.solution).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, a.solution.cwiseAbs().maxCoeff()));
        // serial CGLS is bitwise equal to the parallel one
        cg_opts.exec = Execution::serial;
        const auto c = least_squares(g, cg_opts);
        CHECK((b.solution - c.solution).norm() == 0.0);
    }
}

TEST_CASE("least squares: residual norm and consistent duplication") {
    const auto s = setup(example1(), 2, 3);
    const auto g = build_global_system(s.sys, s.gx, s.gy);
    const auto r = least_squares(g);
    const Eigen::VectorXd res = Eigen::MatrixXd(g.matrix) * r.solution - g.rhs;
    CHECK(r.residual_norm == doctest::Approx(res.norm()).epsilon(1e-12));

    // a consistent system stays solved when rows are duplicated
    const SincGrid h(0, 1, 2, default_step(2));
    const auto base = build_global_system(single_equation({0, 1, 0, 1}, E::number(1.0), E::number(-2.0)), h, h, 1e3,
                                          [](double x, double y) { return x * x + 3 * y; });
    GlobalSystem dup = base;
    const auto rows = base.matrix.rows();
    Eigen::MatrixXd A(2 * rows, base.matrix.cols());
    A << Eigen::MatrixXd(base.matrix), Eigen::MatrixXd(base.matrix);
    dup.matrix = A.sparseView();
    dup.rhs.resize(2 * rows);
    dup.rhs << base.rhs, base.rhs;
    const auto x1 = least_squares(base).solution, x2 = least_squares(dup).solution;
    CHECK((x1 - x2).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("least squares: failures are reported") {
    const SincGrid h(0, 1, 1, 1.0);
    GlobalSystem g = build_global_system(single_equation({0, 1, 0, 1}, E::number(1.0), E::number(1.0)), h, h);
    GlobalSystem nan = g;
    nan.rhs[0] = std::nan("");
    CHECK_THROWS_AS(least_squares(nan), NumericError);

    // identical column pairs make the matrix rank deficient
    GlobalSystem rank = g;
    Eigen::MatrixXd A(g.matrix);
    A.col(1) = A.col(0);
    rank.matrix = A.sparseView();
    CHECK_THROWS_AS(least_squares(rank), RankDeficientError);
}

TEST_CASE("Example 1 solve: sizes, residual and tau robustness") {
    const auto s = setup(example1(), 3, 5);
    const auto lat = Lattice::uniform({-1, 1, -1, 1}, 201);
    std::vector<Eigen::MatrixXd> means;
    for (double tau : {1e2, 1e3, 1e4}) {
        const auto g = build_global_system(s.sys, s.gx, s.gy, tau);
        LeastSquaresResult details;
        const auto sol = solve_least_squares(g, s.basis, {}, &details);
        CHECK(sol.basis_size() == 4);
        CHECK(details.method == SolverMethod::dense_qr);
        if (tau == 1e3) {
            // the rectangular system is inconsistent; this is the observed least-squares misfit
            CHECK(details.residual_norm / g.rhs.norm() < 2e-2);
        }
        means.push_back(sol.sample_mean(lat.xs, lat.ys));
    }
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(201, 201);
    const double norm = error_norms(means[1], zero, lat).l2;
    for (std::size_t t : {0u, 2u}) {
        // the L2 norm of the mean field is insensitive to tau
        CHECK(std::abs(error_norms(means[t], zero, lat).l2 - norm) < 1e-5 * norm);
        // the field itself moves by a few parts in 1e5
        CHECK(error_norms(means[t], means[1], lat).l2 < 1e-4 * norm);
    }
}

TEST_CASE("PceSolution evaluators") {
    const auto s = setup(example1(), 3, 3);
    const auto g = build_global_system(s.sys, s.gx, s.gy);
    const auto sol = solve_least_squares(g, s.basis);
    const double x = 0.3, y = -0.45;
    double var = 0.0;
    for (std::size_t i = 1; i < 4; ++i) var += std::pow(sol.coefficient(i)(x, y), 2);
    CHECK(sol.variance_at(x, y) == doctest::Approx(var).epsilon(1e-14));
    CHECK(sol.mean_at(x, y) == sol.mean()(x, y));
    const std::vector<double> xs{x}, ys{y};
    CHECK(sol.sample_variance(xs, ys)(0, 0) == doctest::Approx(var).epsilon(1e-12));
    const std::vector<double> theta{0.4};
    double real = 0.0;
    for (std::size_t i = 0; i < 4; ++i) real += sol.coefficient(i)(x, y) * s.basis->evaluate(i, theta);
    CHECK(sol.realize(theta)(x, y) == doctest::Approx(real).epsilon(1e-12));
    CHECK_THROWS_AS(sol.mean_at(1.5, 0.0), DomainError);
}

TEST_CASE("system dumps") {
    const SincGrid h(0, 1, 1, 1.0);
    const auto g = build_global_system(single_equation({0, 1, 0, 1}, E::number(1.0), E::number(1.0)), h, h);
    std::ostringstream m, r;
    write_system_triplets(m, g);
    write_system_rhs(r, g);
    const auto text = m.str();
    CHECK(text.rfind("row,col,value\n", 0) == 0);
    CHECK(static_cast<Eigen::Index>(std::count(text.begin(), text.end(), '\n')) == g.matrix.nonZeros() + 1);
    const auto rhs = r.str();
    CHECK(static_cast<Eigen::Index>(std::count(rhs.begin(), rhs.end(), '\n')) == g.rhs.size());
    CHECK(rhs.rfind("-1.0000000000000000e+00\n", 0) == 0);
}

}  // TEST_SUITE
