#include "polysinc/colloc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "polysinc/errors.hpp"
#include "polysinc/io.hpp"

namespace polysinc {

namespace {

struct NodalField {
    std::vector<double> val;
    std::vector<double> dx;
    std::vector<double> dy;
};

// a, da/dx, da/dy of every field at every node (p, q), x index major.
std::vector<NodalField> sample_fields(const CoupledSystem& sys, const SincGrid& gx, const SincGrid& gy) {
    std::vector<NodalField> out(sys.fields.size());
    const std::size_t nx = gx.size();
    const std::size_t ny = gy.size();
    for (std::size_t f = 0; f < sys.fields.size(); ++f) {
        const auto& e = sys.fields[f];
        const auto ex = e.derivative(Axis::x);
        const auto ey = e.derivative(Axis::y);
        auto& s = out[f];
        s.val.resize(nx * ny);
        s.dx.resize(nx * ny);
        s.dy.resize(nx * ny);
        for (std::size_t p = 0; p < nx; ++p)
            for (std::size_t q = 0; q < ny; ++q) {
                const double x = gx.point(p);
                const double y = gy.point(q);
                s.val[p * ny + q] = e(x, y);
                s.dx[p * ny + q] = ex(x, y);
                s.dy[p * ny + q] = ey(x, y);
            }
    }
    return out;
}

struct Operators {
    DiffMatrices x;
    DiffMatrices y;
    std::vector<double> left;    // B(a) in x
    std::vector<double> right;   // B(b) in x
    std::vector<double> bottom;  // B(c) in y
    std::vector<double> top;     // B(d) in y
};

Operators make_operators(const SincGrid& gx, const SincGrid& gy) {
    return Operators{second_derivative_matrix(gx), second_derivative_matrix(gy),
                     lagrange_basis_eval(gx, gx.a()), lagrange_basis_eval(gx, gx.b()),
                     lagrange_basis_eval(gy, gy.a()), lagrange_basis_eval(gy, gy.b())};
}

void check_inputs(const CoupledSystem& sys, const SincGrid& gx, const SincGrid& gy, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("boundary weight tau must be positive");
    if (sys.block_count() == 0) throw DimensionMismatch("coupled system has no equations");
    if (sys.rhs.size() != sys.block_count()) throw DimensionMismatch("coupled system rhs count differs from equation count");
    const auto& d = sys.domain;
    if (gx.a() != d.x_lo || gx.b() != d.x_hi || gy.a() != d.y_lo || gy.b() != d.y_hi)
        throw DimensionMismatch("Sinc grids do not span the system's domain");
    for (const auto& eq : sys.equations)
        for (const auto& t : eq)
            if (t.block >= sys.block_count() || t.field >= sys.fields.size())
                throw DimensionMismatch("coupled system term references a missing block or field");
}

// Boundary point of row `e` (0..2(nx+ny)-1) of a block.
std::pair<double, double> boundary_point(const SincGrid& gx, const SincGrid& gy, std::size_t e) {
    const std::size_t nx = gx.size();
    const std::size_t ny = gy.size();
    if (e < ny) return {gx.a(), gy.point(e)};
    e -= ny;
    if (e < ny) return {gx.b(), gy.point(e)};
    e -= ny;
    if (e < nx) return {gx.point(e), gy.a()};
    e -= nx;
    return {gx.point(e), gy.b()};
}

void fill_rhs(GlobalSystem& g, const CoupledSystem& sys, const BoundaryFunction& dirichlet) {
    const std::size_t nx = g.gx.size();
    const std::size_t ny = g.gy.size();
    const std::size_t nb = nx * ny;
    g.rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.interior_rows() + g.boundary_rows()));
    for (std::size_t j = 0; j < g.blocks; ++j) {
        if (sys.rhs[j].is_zero()) continue;
        for (std::size_t p = 0; p < nx; ++p)
            for (std::size_t q = 0; q < ny; ++q)
                g.rhs[static_cast<Eigen::Index>(j * nb + p * ny + q)] = -sys.rhs[j](g.gx.point(p), g.gy.point(q));
    }
    if (dirichlet) {
        const std::size_t base = g.interior_rows();
        for (std::size_t e = 0; e < g.boundary_rows_per_block(); ++e) {
            const auto [x, y] = boundary_point(g.gx, g.gy, e);
            g.rhs[static_cast<Eigen::Index>(base + e)] = g.tau * dirichlet(x, y);
        }
    }
}

struct BlockGroup {
    std::size_t block;
    std::vector<std::pair<std::size_t, double>> terms;  // (field, coefficient)
};

std::vector<std::vector<BlockGroup>> group_terms(const CoupledSystem& sys) {
    std::vector<std::vector<BlockGroup>> out(sys.block_count());
    for (std::size_t j = 0; j < sys.block_count(); ++j) {
        auto& groups = out[j];
        for (const auto& t : sys.equations[j]) {
            auto it = std::find_if(groups.begin(), groups.end(), [&](const BlockGroup& b) { return b.block == t.block; });
            if (it == groups.end()) {
                groups.push_back({t.block, {}});
                it = groups.end() - 1;
            }
            it->terms.emplace_back(t.field, t.coefficient);
        }
        std::sort(groups.begin(), groups.end(), [](const BlockGroup& a, const BlockGroup& b) { return a.block < b.block; });
    }
    return out;
}

}  // namespace

GlobalSystem build_global_system_serial(const CoupledSystem& sys, const SincGrid& gx, const SincGrid& gy,
                                        double tau, const BoundaryFunction& dirichlet) {
    check_inputs(sys, gx, gy, tau);
    GlobalSystem g{gx, gy, sys.block_count(), tau, {}, {}};
    const std::size_t nx = gx.size();
    const std::size_t ny = gy.size();
    const std::size_t nb = nx * ny;
    const auto fields = sample_fields(sys, gx, gy);
    const auto ops = make_operators(gx, gy);

    using Triplet = Eigen::Triplet<double, std::ptrdiff_t>;
    std::vector<Triplet> triplets;
    auto idx = [](std::size_t v) { return static_cast<std::ptrdiff_t>(v); };
    for (std::size_t j = 0; j < g.blocks; ++j) {
        for (const auto& t : sys.equations[j]) {
            const auto& fs = fields[t.field];
            for (std::size_t p = 0; p < nx; ++p)
                for (std::size_t q = 0; q < ny; ++q) {
                    const std::size_t r = p * ny + q;
                    const std::size_t row = j * nb + r;
                    const double cv = t.coefficient * fs.val[r];
                    const double cx = t.coefficient * fs.dx[r];
                    const double cy = t.coefficient * fs.dy[r];
                    for (std::size_t pp = 0; pp < nx; ++pp) {
                        const auto P = static_cast<Eigen::Index>(p);
                        const auto PP = static_cast<Eigen::Index>(pp);
                        triplets.emplace_back(idx(row), idx(t.block * nb + pp * ny + q),
                                              cv * ops.x.d2(P, PP) + cx * ops.x.d1(P, PP));
                    }
                    for (std::size_t qq = 0; qq < ny; ++qq) {
                        const auto Q = static_cast<Eigen::Index>(q);
                        const auto QQ = static_cast<Eigen::Index>(qq);
                        triplets.emplace_back(idx(row), idx(t.block * nb + p * ny + qq),
                                              cv * ops.y.d2(Q, QQ) + cy * ops.y.d1(Q, QQ));
                    }
                }
        }
    }
    const std::size_t base = g.interior_rows();
    const std::size_t per = g.boundary_rows_per_block();
    for (std::size_t j = 0; j < g.blocks; ++j) {
        const std::size_t row0 = base + j * per;
        for (std::size_t q = 0; q < ny; ++q)
            for (std::size_t p = 0; p < nx; ++p) {
                triplets.emplace_back(idx(row0 + q), idx(j * nb + p * ny + q), tau * ops.left[p]);
                triplets.emplace_back(idx(row0 + ny + q), idx(j * nb + p * ny + q), tau * ops.right[p]);
            }
        for (std::size_t p = 0; p < nx; ++p)
            for (std::size_t q = 0; q < ny; ++q) {
                triplets.emplace_back(idx(row0 + 2 * ny + p), idx(j * nb + p * ny + q), tau * ops.bottom[q]);
                triplets.emplace_back(idx(row0 + 2 * ny + nx + p), idx(j * nb + p * ny + q), tau * ops.top[q]);
            }
    }
    g.matrix.resize(idx(g.interior_rows() + g.boundary_rows()), idx(g.unknowns()));
    g.matrix.setFromTriplets(triplets.begin(), triplets.end());
    g.matrix.makeCompressed();
    fill_rhs(g, sys, dirichlet);
    return g;
}

GlobalSystem build_global_system(const CoupledSystem& sys, const SincGrid& gx, const SincGrid& gy,
                                 double tau, const BoundaryFunction& dirichlet, Execution exec) {
    if (exec == Execution::serial) return build_global_system_serial(sys, gx, gy, tau, dirichlet);
    check_inputs(sys, gx, gy, tau);
    GlobalSystem g{gx, gy, sys.block_count(), tau, {}, {}};
    const std::size_t nx = gx.size();
    const std::size_t ny = gy.size();
    const std::size_t nb = nx * ny;
    const auto fields = sample_fields(sys, gx, gy);
    const auto ops = make_operators(gx, gy);
    const auto groups = group_terms(sys);

    const std::size_t interior = g.interior_rows();
    const std::size_t per = g.boundary_rows_per_block();
    const std::size_t rows = interior + g.boundary_rows();
    const std::size_t stencil = nx + ny - 1;

    // row pointers
    std::vector<std::ptrdiff_t> outer(rows + 1, 0);
    for (std::size_t j = 0; j < g.blocks; ++j)
        for (std::size_t r = 0; r < nb; ++r)
            outer[j * nb + r + 1] = static_cast<std::ptrdiff_t>(groups[j].size() * stencil);
    for (std::size_t j = 0; j < g.blocks; ++j)
        for (std::size_t e = 0; e < per; ++e)
            outer[interior + j * per + e + 1] = static_cast<std::ptrdiff_t>(e < 2 * ny ? nx : ny);
    for (std::size_t r = 0; r < rows; ++r) outer[r + 1] += outer[r];

    g.matrix.resize(static_cast<std::ptrdiff_t>(rows), static_cast<std::ptrdiff_t>(g.unknowns()));
    g.matrix.resizeNonZeros(outer[rows]);
    std::copy(outer.begin(), outer.end(), g.matrix.outerIndexPtr());
    auto* inner = g.matrix.innerIndexPtr();
    auto* values = g.matrix.valuePtr();

    const auto interior_rows = static_cast<std::ptrdiff_t>(interior);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t row = 0; row < interior_rows; ++row) {
        const auto j = static_cast<std::size_t>(row) / nb;
        const auto r = static_cast<std::size_t>(row) % nb;
        const std::size_t p = r / ny;
        const std::size_t q = r % ny;
        const auto P = static_cast<Eigen::Index>(p);
        const auto Q = static_cast<Eigen::Index>(q);
        std::ptrdiff_t k = outer[static_cast<std::size_t>(row)];
        for (const auto& grp : groups[j]) {
            double cv = 0.0;
            double cx = 0.0;
            double cy = 0.0;
            for (const auto& [field, c] : grp.terms) {
                cv += c * fields[field].val[r];
                cx += c * fields[field].dx[r];
                cy += c * fields[field].dy[r];
            }
            const std::size_t col0 = grp.block * nb;
            // columns in increasing order: (p' < p, q), (p, q'), (p' > p, q)
            for (std::size_t pp = 0; pp < p; ++pp) {
                const auto PP = static_cast<Eigen::Index>(pp);
                inner[k] = static_cast<std::ptrdiff_t>(col0 + pp * ny + q);
                values[k++] = cv * ops.x.d2(P, PP) + cx * ops.x.d1(P, PP);
            }
            for (std::size_t qq = 0; qq < ny; ++qq) {
                const auto QQ = static_cast<Eigen::Index>(qq);
                double v = cv * ops.y.d2(Q, QQ) + cy * ops.y.d1(Q, QQ);
                if (qq == q) v += cv * ops.x.d2(P, P) + cx * ops.x.d1(P, P);
                inner[k] = static_cast<std::ptrdiff_t>(col0 + p * ny + qq);
                values[k++] = v;
            }
            for (std::size_t pp = p + 1; pp < nx; ++pp) {
                const auto PP = static_cast<Eigen::Index>(pp);
                inner[k] = static_cast<std::ptrdiff_t>(col0 + pp * ny + q);
                values[k++] = cv * ops.x.d2(P, PP) + cx * ops.x.d1(P, PP);
            }
        }
    }

    for (std::size_t j = 0; j < g.blocks; ++j) {
        const std::size_t col0 = j * nb;
        for (std::size_t e = 0; e < per; ++e) {
            std::ptrdiff_t k = outer[interior + j * per + e];
            if (e < 2 * ny) {
                const std::size_t q = e % ny;
                const auto& b = e < ny ? ops.left : ops.right;
                for (std::size_t p = 0; p < nx; ++p) {
                    inner[k] = static_cast<std::ptrdiff_t>(col0 + p * ny + q);
                    values[k++] = tau * b[p];
                }
            } else {
                const std::size_t p = (e - 2 * ny) % nx;
                const auto& b = (e - 2 * ny) < nx ? ops.bottom : ops.top;
                for (std::size_t q = 0; q < ny; ++q) {
                    inner[k] = static_cast<std::ptrdiff_t>(col0 + p * ny + q);
                    values[k++] = tau * b[q];
                }
            }
        }
    }
    fill_rhs(g, sys, dirichlet);
    return g;
}

namespace {

void check_finite(const GlobalSystem& g) {
    const auto* v = g.matrix.valuePtr();
    for (std::ptrdiff_t k = 0; k < g.matrix.nonZeros(); ++k)
        if (!std::isfinite(v[k])) throw NumericError("global matrix has non-finite entries");
    if (!g.rhs.allFinite()) throw NumericError("global right-hand side has non-finite entries");
    if (g.matrix.rows() < g.matrix.cols()) throw NumericError("least-squares system has fewer rows than unknowns");
}

LeastSquaresResult dense_solve(const GlobalSystem& g, const SolveOptions& opts) {
    const Eigen::MatrixXd A(g.matrix);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(opts.rank_tolerance);
    if (qr.rank() < A.cols())
        throw RankDeficientError(static_cast<std::size_t>(qr.rank()), static_cast<std::size_t>(A.cols()));
    LeastSquaresResult out;
    out.solution = qr.solve(g.rhs);
    out.method = SolverMethod::dense_qr;
    return out;
}

// Right preconditioner x_b = Pi R^{-1} z_b per block, from the QR factor of the
// block-0 diagonal operator (its interior and boundary rows).
class MeanBlockPreconditioner {
public:
    MeanBlockPreconditioner(const GlobalSystem& g, double rank_tolerance) : nb_(g.grid_size()), blocks_(g.blocks) {
        const std::size_t per = g.boundary_rows_per_block();
        Eigen::MatrixXd A0 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nb_ + per), static_cast<Eigen::Index>(nb_));
        auto copy_row = [&](std::size_t src, std::size_t dst) {
            for (CsrMatrix::InnerIterator it(g.matrix, static_cast<std::ptrdiff_t>(src)); it; ++it)
                if (static_cast<std::size_t>(it.col()) < nb_)
                    A0(static_cast<Eigen::Index>(dst), static_cast<Eigen::Index>(it.col())) = it.value();
        };
        for (std::size_t r = 0; r < nb_; ++r) copy_row(r, r);
        for (std::size_t e = 0; e < per; ++e) copy_row(g.interior_rows() + e, nb_ + e);
        qr_.compute(A0);
        qr_.setThreshold(rank_tolerance);
        if (qr_.rank() < A0.cols())
            throw RankDeficientError(static_cast<std::size_t>(qr_.rank()), static_cast<std::size_t>(A0.cols()));
        R_ = qr_.matrixR().topLeftCorner(A0.cols(), A0.cols()).triangularView<Eigen::Upper>();
    }

    // x = M z
    void apply(const Eigen::VectorXd& z, Eigen::VectorXd& x, Execution exec) const {
        const auto nb = static_cast<Eigen::Index>(nb_);
        const auto blocks = static_cast<std::ptrdiff_t>(blocks_);
        auto one = [&](std::ptrdiff_t b) {
            Eigen::VectorXd t = R_.triangularView<Eigen::Upper>().solve(z.segment(b * nb, nb));
            x.segment(b * nb, nb) = qr_.colsPermutation() * t;
        };
        if (exec == Execution::serial) {
            for (std::ptrdiff_t b = 0; b < blocks; ++b) one(b);
            return;
        }
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t b = 0; b < blocks; ++b) one(b);
    }

    // z = M^T v
    void apply_transpose(const Eigen::VectorXd& v, Eigen::VectorXd& z, Execution exec) const {
        const auto nb = static_cast<Eigen::Index>(nb_);
        const auto blocks = static_cast<std::ptrdiff_t>(blocks_);
        auto one = [&](std::ptrdiff_t b) {
            Eigen::VectorXd t = qr_.colsPermutation().transpose() * v.segment(b * nb, nb);
            z.segment(b * nb, nb) = R_.transpose().triangularView<Eigen::Lower>().solve(t);
        };
        if (exec == Execution::serial) {
            for (std::ptrdiff_t b = 0; b < blocks; ++b) one(b);
            return;
        }
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t b = 0; b < blocks; ++b) one(b);
    }

private:
    std::size_t nb_;
    std::size_t blocks_;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
    Eigen::MatrixXd R_;
};

std::span<const double> view(const Eigen::VectorXd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}
std::span<double> view(Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

LeastSquaresResult cgls_solve(const GlobalSystem& g, const SolveOptions& opts) {
    const MeanBlockPreconditioner M(g, opts.rank_tolerance);
    const CsrMatrix At = g.matrix.transpose();
    const auto exec = opts.exec;
    const auto n = g.matrix.cols();
    const auto m = g.matrix.rows();

    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = g.rhs;
    Eigen::VectorXd tmp_n(n);
    Eigen::VectorXd s(n);
    Eigen::VectorXd q(m);

    // s = M^T A^T r
    auto normal_residual = [&](const Eigen::VectorXd& rr, Eigen::VectorXd& out) {
        csr_multiply(At, view(rr), view(tmp_n), exec);
        M.apply_transpose(tmp_n, out, exec);
    };
    normal_residual(r, s);
    Eigen::VectorXd p = s;
    double gamma = dot(view(s), view(s), exec);
    const double stop = opts.cg_tolerance * std::sqrt(gamma);

    LeastSquaresResult out;
    out.method = SolverMethod::cgls;
    Eigen::VectorXd xp(n);
    int it = 0;
    while (std::sqrt(gamma) > stop) {
        if (it >= opts.max_iterations)
            throw NumericError("CGLS did not converge in " + std::to_string(opts.max_iterations) + " iterations");
        M.apply(p, xp, exec);
        csr_multiply(g.matrix, view(xp), view(q), exec);
        const double qq = dot(view(q), view(q), exec);
        if (!(qq > 0.0)) throw NumericError("CGLS breakdown: preconditioned operator maps a direction to zero");
        const double alpha = gamma / qq;
        z += alpha * p;
        r -= alpha * q;
        normal_residual(r, s);
        const double gamma_new = dot(view(s), view(s), exec);
        p = s + (gamma_new / gamma) * p;
        gamma = gamma_new;
        ++it;
    }
    out.iterations = it;
    out.solution.resize(n);
    M.apply(z, out.solution, exec);
    return out;
}

}  // namespace

LeastSquaresResult least_squares(const GlobalSystem& g, const SolveOptions& opts) {
    check_finite(g);
    SolverMethod method = opts.method;
    if (method == SolverMethod::automatic)
        method = g.unknowns() <= opts.dense_limit ? SolverMethod::dense_qr : SolverMethod::cgls;
    LeastSquaresResult out = method == SolverMethod::dense_qr ? dense_solve(g, opts) : cgls_solve(g, opts);
    if (!out.solution.allFinite()) throw NumericError("least-squares solution is not finite");
    Eigen::VectorXd res(g.matrix.rows());
    csr_multiply(g.matrix, view(out.solution), view(res), opts.exec);
    res -= g.rhs;
    out.residual_norm = std::sqrt(dot(view(res), view(res), opts.exec));
    return out;
}

PceSolution::PceSolution(SincGrid gx, SincGrid gy, std::vector<std::vector<double>> coeffs, double residual_norm,
                         std::shared_ptr<const ChaosBasis> basis)
    : gx_(std::move(gx)), gy_(std::move(gy)), coeffs_(std::move(coeffs)), residual_norm_(residual_norm),
      basis_(std::move(basis)) {
    if (coeffs_.empty()) throw DimensionMismatch("solution needs at least one coefficient field");
    for (const auto& c : coeffs_)
        if (c.size() != gx_.size() * gy_.size()) throw DimensionMismatch("coefficient field has wrong length");
    if (basis_ && basis_->size() != coeffs_.size()) throw DimensionMismatch("coefficient count differs from basis size");
}

TensorInterpolant PceSolution::coefficient(std::size_t i) const { return TensorInterpolant(gx_, gy_, coeffs_.at(i)); }

double PceSolution::mean_at(double x, double y) const { return coefficient(0)(x, y); }

double PceSolution::variance_at(double x, double y) const {
    double v = 0.0;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        const double u = coefficient(i)(x, y);
        v += u * u;
    }
    return v;
}

Eigen::MatrixXd PceSolution::sample_coefficient(std::size_t i, std::span<const double> xs,
                                                std::span<const double> ys) const {
    return coefficient(i).sample(xs, ys);
}

Eigen::MatrixXd PceSolution::sample_mean(std::span<const double> xs, std::span<const double> ys) const {
    return sample_coefficient(0, xs, ys);
}

Eigen::MatrixXd PceSolution::sample_variance(std::span<const double> xs, std::span<const double> ys) const {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(ys.size()));
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v += sample_coefficient(i, xs, ys).array().square().matrix();
    return v;
}

TensorInterpolant PceSolution::realize(std::span<const double> theta) const {
    if (!basis_) throw DimensionMismatch("solution has no chaos basis attached");
    return TensorInterpolant(gx_, gy_, pce_realize(coeffs_, *basis_, theta));
}

PceSolution solve_least_squares(const GlobalSystem& g, std::shared_ptr<const ChaosBasis> basis,
                                const SolveOptions& opts, LeastSquaresResult* details) {
    auto result = least_squares(g, opts);
    const std::size_t nb = g.grid_size();
    std::vector<std::vector<double>> coeffs(g.blocks);
    for (std::size_t i = 0; i < g.blocks; ++i)
        coeffs[i].assign(result.solution.data() + i * nb, result.solution.data() + (i + 1) * nb);
    PceSolution sol(g.gx, g.gy, std::move(coeffs), result.residual_norm, std::move(basis));
    if (details) *details = std::move(result);
    return sol;
}

TensorInterpolant deterministic_solve(const CoefficientExpr& a, const CoefficientExpr& f,
                                      const BoundaryFunction& dirichlet, const SincGrid& gx, const SincGrid& gy,
                                      double tau) {
    const Rectangle domain{gx.a(), gx.b(), gy.a(), gy.b()};
    // div(a grad u) = f  <=>  -div(a grad u) = -f
    const auto sys = single_equation(domain, a, f.is_zero() ? f : CoefficientExpr::neg(f));
    const auto g = build_global_system(sys, gx, gy, tau, dirichlet);
    SolveOptions opts;
    opts.method = SolverMethod::dense_qr;
    auto result = least_squares(g, opts);
    return TensorInterpolant(gx, gy, std::vector<double>(result.solution.data(), result.solution.data() + result.solution.size()));
}

void write_system_triplets(std::ostream& os, const GlobalSystem& g) {
    os << "row,col,value\n";
    for (std::ptrdiff_t r = 0; r < g.matrix.outerSize(); ++r)
        for (CsrMatrix::InnerIterator it(g.matrix, r); it; ++it)
            os << it.row() << ',' << it.col() << ',' << format_real(it.value()) << '\n';
}

void write_system_rhs(std::ostream& os, const GlobalSystem& g) {
    for (Eigen::Index r = 0; r < g.rhs.size(); ++r) os << format_real(g.rhs[r]) << '\n';
}

std::string to_string(SolverMethod m) {
    switch (m) {
        case SolverMethod::automatic: return "automatic";
        case SolverMethod::dense_qr: return "dense-qr";
        case SolverMethod::cgls: return "cgls";
    }
    return "unknown";
}

}  // namespace polysinc
