#include "polysinc/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "polysinc/errors.hpp"
#include "polysinc/model.hpp"
#include "polysinc/sinc.hpp"

namespace polysinc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CoupledSystem galerkin_system(const SpdeProblem& p, const ChaosBasis& basis, int quadrature) {
    const auto tensor = triple_tensor(basis, quadrature);
    return galerkin_assemble(p, basis, tensor);
}

}  // namespace

PolySincSettings settings_from(const RunConfig& c) {
    PolySincSettings s;
    s.P = c.P;
    s.N = c.solver.N;
    s.h = c.solver.step();
    s.tau = c.solver.tau;
    s.quadrature = c.solver.quadrature;
    s.solve.dense_limit = c.solver.dense_limit;
    return s;
}

PolySincRun run_polysinc(const SpdeProblem& p, const PolySincSettings& s) {
    using clock = std::chrono::steady_clock;
    const double h = s.h > 0.0 ? s.h : default_step(s.N);
    auto t0 = clock::now();
    auto basis = std::make_shared<const ChaosBasis>(p.K, s.P);
    const auto sys = galerkin_system(p, *basis, s.quadrature);
    const double t_basis = seconds_since(t0);

    t0 = clock::now();
    const SincGrid gx(p.domain.x_lo, p.domain.x_hi, s.N, h);
    const SincGrid gy(p.domain.y_lo, p.domain.y_hi, s.N, h);
    const auto g = build_global_system(sys, gx, gy, s.tau, {}, s.solve.exec);
    const double t_assembly = seconds_since(t0);

    t0 = clock::now();
    LeastSquaresResult details;
    auto sol = solve_least_squares(g, basis, s.solve, &details);
    const double t_solve = seconds_since(t0);

    return PolySincRun{basis,        g.unknowns(),
                       static_cast<std::size_t>(g.matrix.rows()),
                       std::move(details), g.rhs.norm(),
                       {t_basis, t_assembly, t_solve},
                       std::move(sol)};
}

MomentFields moments(const PceSolution& sol, const Lattice& lat) {
    return {sol.sample_mean(lat.xs, lat.ys), sol.sample_variance(lat.xs, lat.ys)};
}

MomentFields fd_moments(const SpdeProblem& p, int P, std::size_t n, const Lattice& lat, bool bicubic) {
    const ChaosBasis basis(p.K, P);
    const auto sys = galerkin_system(p, basis, 0);
    const auto fd = fd_solve_block(sys, n);
    MomentFields out;
    const auto L = static_cast<Eigen::Index>(lat.n);
    out.variance = Eigen::MatrixXd::Zero(L, L);
    for (std::size_t i = 0; i < fd.blocks.size(); ++i) {
        const auto& g = fd.blocks[i];
        const Eigen::MatrixXd u = sample(
            [&g, bicubic](double x, double y) { return bicubic ? g.bicubic(x, y) : g.bilinear(x, y); }, lat);
        if (i == 0)
            out.mean = u;
        else
            out.variance += u.array().square().matrix();
    }
    return out;
}

std::vector<double> coefficient_maxima(const PceSolution& sol) {
    std::vector<double> out;
    for (const auto& c : sol.coefficient_fields()) {
        double m = 0.0;
        for (double v : c) m = std::max(m, std::abs(v));
        out.push_back(m);
    }
    return out;
}

MomentFields reference_moments(const RunConfig& c, const Lattice& lat, int n_polysinc) {
    const auto& p = c.problem;
    const auto n_fine = static_cast<std::size_t>(c.compare.fd_fine_n);
    switch (c.compare.reference) {
        case ReferenceKind::semi_analytic: {
            if (!SemiAnalyticExample1::applicable(p))
                throw ConfigError("semi-analytic reference needs K = 1 with constant a0, a_1 and f");
            const SemiAnalyticExample1 oracle(p, n_fine);
            return {sample([&](double x, double y) { return oracle.mean(x, y); }, lat),
                    sample([&](double x, double y) { return oracle.variance(x, y); }, lat)};
        }
        case ReferenceKind::sampled:
            return sampled_reference(p, gauss_legendre(c.compare.sample_nodes), fd_realization_solver(p, n_fine, lat));
        case ReferenceKind::fd_fine:
            return fd_moments(p, c.compare.reference_P, n_fine, lat, true);
        case ReferenceKind::polysinc: {
            if (n_polysinc < 3 || n_polysinc % 2 == 0) throw ConfigError("polysinc reference needs an odd grid size");
            auto s = settings_from(c);
            s.N = (n_polysinc - 1) / 2;
            s.h = default_step(s.N);
            return moments(run_polysinc(p, s).solution, lat);
        }
    }
    throw ConfigError("unknown reference");
}

std::vector<SweepRow> compare_sweep(const RunConfig& c, const std::vector<int>& n_values) {
    const auto lat = Lattice::uniform(c.problem.domain, static_cast<std::size_t>(c.lattice));
    const bool per_row = c.compare.reference == ReferenceKind::polysinc;
    MomentFields ref;
    if (!per_row) ref = reference_moments(c, lat);
    std::vector<SweepRow> rows;
    for (int n : n_values) {
        if (n < 3 || n % 2 == 0) throw ConfigError("sweep grid sizes must be odd and >= 3");
        if (per_row) ref = reference_moments(c, lat, n);
        auto s = settings_from(c);
        s.N = (n - 1) / 2;
        s.h = default_step(s.N);
        const auto ps = moments(run_polysinc(c.problem, s).solution, lat);
        const auto fd = fd_moments(c.problem, c.P, static_cast<std::size_t>(n), lat);
        rows.push_back({n, error_norms(ps.mean, ref.mean, lat).l2, error_norms(fd.mean, ref.mean, lat).l2,
                        error_norms(ps.variance, ref.variance, lat).l2, error_norms(fd.variance, ref.variance, lat).l2});
    }
    return rows;
}

}  // namespace polysinc
