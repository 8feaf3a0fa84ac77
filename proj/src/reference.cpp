#include "polysinc/reference.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "polysinc/errors.hpp"
#include "polysinc/io.hpp"

namespace polysinc {

namespace {

double node(double lo, double hi, std::size_t i, std::size_t n) {
    if (i + 1 == n) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

// Position of x in units of the spacing, clamped into the closed range.
double unit_coordinate(double x, double lo, double hi, std::size_t n) {
    if (!(x >= lo && x <= hi)) throw DomainError("evaluation point outside the grid");
    return (x - lo) / (hi - lo) * static_cast<double>(n - 1);
}

struct Stencil4 {
    std::size_t start;
    double w[4];
};

Stencil4 cubic_stencil(double s, std::size_t n) {
    const auto cell = std::min(static_cast<std::size_t>(s), n - 2);
    const std::size_t start = std::min(cell > 0 ? cell - 1 : 0, n - 4);
    const double t = s - static_cast<double>(start);
    return {start,
            {-(t - 1) * (t - 2) * (t - 3) / 6, t * (t - 2) * (t - 3) / 2, -t * (t - 1) * (t - 3) / 2,
             t * (t - 1) * (t - 2) / 6}};
}

}  // namespace

UniformGrid::UniformGrid(const Rectangle& d, std::size_t count) : domain(d), n(count) {
    if (n < 3) throw DomainError("uniform grid needs at least 3 points per axis");
    if (!(d.x_lo < d.x_hi) || !(d.y_lo < d.y_hi)) throw DomainError("uniform grid needs a non-degenerate rectangle");
    values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

double UniformGrid::x(std::size_t p) const noexcept { return node(domain.x_lo, domain.x_hi, p, n); }
double UniformGrid::y(std::size_t q) const noexcept { return node(domain.y_lo, domain.y_hi, q, n); }

double UniformGrid::bilinear(double xv, double yv) const {
    const double s = unit_coordinate(xv, domain.x_lo, domain.x_hi, n);
    const double t = unit_coordinate(yv, domain.y_lo, domain.y_hi, n);
    const auto p = std::min(static_cast<std::size_t>(s), n - 2);
    const auto q = std::min(static_cast<std::size_t>(t), n - 2);
    const double fs = s - static_cast<double>(p);
    const double ft = t - static_cast<double>(q);
    const auto P = static_cast<Eigen::Index>(p);
    const auto Q = static_cast<Eigen::Index>(q);
    return (1 - fs) * ((1 - ft) * values(P, Q) + ft * values(P, Q + 1)) +
           fs * ((1 - ft) * values(P + 1, Q) + ft * values(P + 1, Q + 1));
}

double UniformGrid::bicubic(double xv, double yv) const {
    if (n < 4) return bilinear(xv, yv);
    const auto sx = cubic_stencil(unit_coordinate(xv, domain.x_lo, domain.x_hi, n), n);
    const auto sy = cubic_stencil(unit_coordinate(yv, domain.y_lo, domain.y_hi, n), n);
    double out = 0.0;
    for (int a = 0; a < 4; ++a) {
        double row = 0.0;
        for (int b = 0; b < 4; ++b)
            row += sy.w[b] * values(static_cast<Eigen::Index>(sx.start) + a, static_cast<Eigen::Index>(sy.start) + b);
        out += sx.w[a] * row;
    }
    return out;
}

std::string to_csv(const UniformGrid& g) {
    return grid_csv(g.values, g.domain.x_lo, g.domain.x_hi, g.domain.y_lo, g.domain.y_hi);
}

FdBlockOperator::FdBlockOperator(const CoupledSystem& sys, std::size_t n) : sys_(sys), n_(n) {
    if (n < 3) throw DomainError("finite-difference grid needs n >= 3");
    if (sys.block_count() == 0) throw DimensionMismatch("coupled system has no equations");
    const UniformGrid g(sys.domain, n);
    hx2_ = g.hx() * g.hx();
    hy2_ = g.hy() * g.hy();
    const auto N = static_cast<Eigen::Index>(n);
    for (const auto& field : sys.fields) {
        Eigen::MatrixXd nodal(N, N);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                nodal(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = field(g.x(p), g.y(q));
        east_.push_back(0.5 * (nodal.topRows(N - 1) + nodal.bottomRows(N - 1)));
        north_.push_back(0.5 * (nodal.leftCols(N - 1) + nodal.rightCols(N - 1)));
    }
}

void FdBlockOperator::apply_field(std::size_t field, double c, const double* u, double* out) const {
    const auto m = static_cast<std::ptrdiff_t>(n_ - 2);
    const auto& E = east_[field];
    const auto& Nn = north_[field];
    auto at = [&](std::ptrdiff_t p, std::ptrdiff_t q) {
        return (p < 1 || p > m || q < 1 || q > m) ? 0.0 : u[(p - 1) * m + (q - 1)];
    };
    for (std::ptrdiff_t p = 1; p <= m; ++p)
        for (std::ptrdiff_t q = 1; q <= m; ++q) {
            const double uc = at(p, q);
            const double fx = E(p, q) * (uc - at(p + 1, q)) + E(p - 1, q) * (uc - at(p - 1, q));
            const double fy = Nn(p, q) * (uc - at(p, q + 1)) + Nn(p, q - 1) * (uc - at(p, q - 1));
            out[(p - 1) * m + (q - 1)] += c * (fx / hx2_ + fy / hy2_);
        }
}

void FdBlockOperator::apply(std::span<const double> u, std::span<double> out, Execution exec) const {
    if (u.size() != size() || out.size() != size()) throw DimensionMismatch("block FD operand has wrong length");
    const std::size_t bs = block_size();
    const auto nb = static_cast<std::ptrdiff_t>(blocks());
    auto one = [&](std::ptrdiff_t jj) {
        const auto j = static_cast<std::size_t>(jj);
        double* o = out.data() + j * bs;
        std::fill(o, o + bs, 0.0);
        for (const auto& t : sys_.equations[j]) apply_field(t.field, t.coefficient, u.data() + t.block * bs, o);
    };
    if (exec == Execution::serial) {
        for (std::ptrdiff_t j = 0; j < nb; ++j) one(j);
        return;
    }
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t j = 0; j < nb; ++j) one(j);
}

Eigen::SparseMatrix<double> FdBlockOperator::field_matrix(std::size_t field) const {
    const auto m = static_cast<std::ptrdiff_t>(n_ - 2);
    const auto& E = east_.at(field);
    const auto& Nn = north_.at(field);
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(5 * m * m));
    auto id = [m](std::ptrdiff_t p, std::ptrdiff_t q) { return static_cast<int>((p - 1) * m + (q - 1)); };
    for (std::ptrdiff_t p = 1; p <= m; ++p)
        for (std::ptrdiff_t q = 1; q <= m; ++q) {
            const double e = E(p, q) / hx2_, w = E(p - 1, q) / hx2_;
            const double nn = Nn(p, q) / hy2_, s = Nn(p, q - 1) / hy2_;
            t.emplace_back(id(p, q), id(p, q), e + w + nn + s);
            if (p < m) t.emplace_back(id(p, q), id(p + 1, q), -e);
            if (p > 1) t.emplace_back(id(p, q), id(p - 1, q), -w);
            if (q < m) t.emplace_back(id(p, q), id(p, q + 1), -nn);
            if (q > 1) t.emplace_back(id(p, q), id(p, q - 1), -s);
        }
    Eigen::SparseMatrix<double> A(m * m, m * m);
    A.setFromTriplets(t.begin(), t.end());
    return A;
}

Eigen::SparseMatrix<double> FdBlockOperator::assemble() const {
    const auto bs = static_cast<int>(block_size());
    std::vector<Eigen::SparseMatrix<double>> ops;
    for (std::size_t f = 0; f < sys_.fields.size(); ++f) ops.push_back(field_matrix(f));
    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t j = 0; j < blocks(); ++j)
        for (const auto& term : sys_.equations[j]) {
            const auto& A = ops[term.field];
            for (int k = 0; k < A.outerSize(); ++k)
                for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
                    t.emplace_back(static_cast<int>(j) * bs + static_cast<int>(it.row()),
                                   static_cast<int>(term.block) * bs + static_cast<int>(it.col()),
                                   term.coefficient * it.value());
        }
    const auto total = static_cast<int>(size());
    Eigen::SparseMatrix<double> M(total, total);
    M.setFromTriplets(t.begin(), t.end());
    return M;
}

Eigen::VectorXd FdBlockOperator::rhs() const {
    const UniformGrid g(sys_.domain, n_);
    const std::size_t bs = block_size();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
    for (std::size_t j = 0; j < blocks(); ++j) {
        if (sys_.rhs[j].is_zero()) continue;
        for (std::size_t p = 1; p + 1 < n_; ++p)
            for (std::size_t q = 1; q + 1 < n_; ++q)
                b[static_cast<Eigen::Index>(j * bs + (p - 1) * (n_ - 2) + (q - 1))] = sys_.rhs[j](g.x(p), g.y(q));
    }
    return b;
}

namespace {

BlockFdResult unpack(const CoupledSystem& sys, std::size_t n, const Eigen::VectorXd& x) {
    BlockFdResult out;
    const std::size_t m = n - 2;
    for (std::size_t j = 0; j < sys.block_count(); ++j) {
        UniformGrid g(sys.domain, n);
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = 0; q < m; ++q)
                g.values(static_cast<Eigen::Index>(p + 1), static_cast<Eigen::Index>(q + 1)) =
                    x[static_cast<Eigen::Index>(j * m * m + p * m + q)];
        out.blocks.push_back(std::move(g));
    }
    return out;
}

std::span<const double> cview(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<double> mview(Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace

UniformGrid fd_solve(const CoefficientExpr& a, const CoefficientExpr& f, const Rectangle& domain, std::size_t n) {
    const auto sys = single_equation(domain, a, f);
    const FdBlockOperator op(sys, n);
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(op.field_matrix(0));
    if (llt.info() != Eigen::Success) throw NumericError("finite-difference matrix is not positive definite");
    const Eigen::VectorXd x = llt.solve(op.rhs());
    if (!x.allFinite()) throw NumericError("finite-difference solution is not finite");
    return std::move(unpack(sys, n, x).blocks.front());
}

UniformGrid fd_solve_richardson(const CoefficientExpr& a, const CoefficientExpr& f, const Rectangle& domain,
                                std::size_t n) {
    UniformGrid coarse = fd_solve(a, f, domain, n);
    const UniformGrid fine = fd_solve(a, f, domain, 2 * n - 1);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            const auto P = static_cast<Eigen::Index>(p);
            const auto Q = static_cast<Eigen::Index>(q);
            coarse.values(P, Q) = (4.0 * fine.values(2 * P, 2 * Q) - coarse.values(P, Q)) / 3.0;
        }
    return coarse;
}

BlockFdResult fd_solve_block(const CoupledSystem& sys, std::size_t n, const BlockFdOptions& opts) {
    const FdBlockOperator op(sys, n);
    const std::size_t bs = op.block_size();
    const auto nb = static_cast<std::ptrdiff_t>(op.blocks());
    const Eigen::VectorXd b = op.rhs();
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(op.field_matrix(0));
    if (llt.info() != Eigen::Success) throw NumericError("mean-field FD operator is not positive definite");

    const auto exec = opts.exec;
    auto precondition = [&](const Eigen::VectorXd& r, Eigen::VectorXd& z) {
        const auto B = static_cast<Eigen::Index>(bs);
        if (exec == Execution::serial) {
            for (std::ptrdiff_t j = 0; j < nb; ++j) z.segment(j * B, B) = llt.solve(r.segment(j * B, B));
            return;
        }
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t j = 0; j < nb; ++j) z.segment(j * B, B) = llt.solve(r.segment(j * B, B));
    };

    const auto N = b.size();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
    const double bnorm = std::sqrt(dot(cview(b), cview(b), exec));
    BlockFdResult out;
    if (bnorm == 0.0) {
        out = unpack(sys, n, x);
        return out;
    }
    Eigen::VectorXd r = b, z(N), q(N);
    precondition(r, z);
    Eigen::VectorXd p = z;
    double rz = dot(cview(r), cview(z), exec);
    int it = 0;
    double rel = 1.0;
    while (true) {
        op.apply(cview(p), mview(q), exec);
        const double pq = dot(cview(p), cview(q), exec);
        if (!(pq > 0.0)) throw NumericError("block FD operator is not positive definite (PCG breakdown)");
        const double alpha = rz / pq;
        x += alpha * p;
        r -= alpha * q;
        ++it;
        rel = std::sqrt(dot(cview(r), cview(r), exec)) / bnorm;
        if (rel <= opts.tolerance) break;
        if (it >= opts.max_iterations)
            throw NumericError("block FD PCG did not converge in " + std::to_string(opts.max_iterations) + " iterations");
        precondition(r, z);
        const double rz_new = dot(cview(r), cview(z), exec);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    out = unpack(sys, n, x);
    out.iterations = it;
    out.relative_residual = rel;
    return out;
}

BlockFdResult fd_solve_block_direct(const CoupledSystem& sys, std::size_t n) {
    const FdBlockOperator op(sys, n);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(op.assemble());
    if (ldlt.info() != Eigen::Success) throw NumericError("block FD matrix factorization failed");
    const Eigen::VectorXd b = op.rhs();
    const Eigen::VectorXd x = ldlt.solve(b);
    if (!x.allFinite()) throw NumericError("block FD solution is not finite");
    auto out = unpack(sys, n, x);
    const double bn = b.norm();
    out.relative_residual = bn > 0 ? (op.assemble() * x - b).norm() / bn : 0.0;
    return out;
}

Lattice Lattice::uniform(const Rectangle& d, std::size_t n) {
    if (n < 2) throw DomainError("lattice needs at least 2 points per axis");
    Lattice lat{d, n, {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
        lat.xs.push_back(node(d.x_lo, d.x_hi, i, n));
        lat.ys.push_back(node(d.y_lo, d.y_hi, i, n));
    }
    return lat;
}

Eigen::MatrixXd sample(const FieldEvaluator& f, const Lattice& lat) {
    const auto n = static_cast<Eigen::Index>(lat.n);
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index p = 0; p < n; ++p)
        for (Eigen::Index q = 0; q < n; ++q)
            out(p, q) = f(lat.xs[static_cast<std::size_t>(p)], lat.ys[static_cast<std::size_t>(q)]);
    return out;
}

ErrorReport error_norms(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Lattice& lat) {
    const auto n = static_cast<Eigen::Index>(lat.n);
    if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
        throw DimensionMismatch("field samples do not match the lattice");
    const double hx = (lat.domain.x_hi - lat.domain.x_lo) / static_cast<double>(n - 1);
    const double hy = (lat.domain.y_hi - lat.domain.y_lo) / static_cast<double>(n - 1);
    auto weight = [n](Eigen::Index i) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; };
    ErrorReport rep;
    rep.lattice_n = lat.n;
    std::vector<double> rows(static_cast<std::size_t>(n));
    for (Eigen::Index p = 0; p < n; ++p) {
        std::vector<double> terms(static_cast<std::size_t>(n));
        for (Eigen::Index q = 0; q < n; ++q) {
            const double e = a(p, q) - b(p, q);
            rep.sup = std::max(rep.sup, std::abs(e));
            terms[static_cast<std::size_t>(q)] = weight(q) * e * e;
        }
        rows[static_cast<std::size_t>(p)] = weight(p) * pairwise_sum(terms);
    }
    rep.l2 = std::sqrt(hx * hy * pairwise_sum(rows));
    return rep;
}

ErrorReport error_norms(const FieldEvaluator& a, const FieldEvaluator& b, const Lattice& lat) {
    return error_norms(sample(a, lat), sample(b, lat), lat);
}

bool SemiAnalyticExample1::applicable(const SpdeProblem& p) {
    if (p.K != 1 || p.a.size() != 1) return false;
    if (!p.a0.is_constant() || !p.a[0].is_constant() || !p.f.is_constant()) return false;
    const double a0 = p.a0(0, 0);
    const double c = p.b0 * p.a[0](0, 0);
    return a0 > 0 && std::abs(c) < a0;
}

SemiAnalyticExample1::SemiAnalyticExample1(const SpdeProblem& p, std::size_t n) {
    if (!applicable(p))
        throw DomainError("semi-analytic reference needs K = 1, constant a0, a_1, f and a0 > |b0 a_1|");
    const double a0 = p.a0(0, 0);
    const double c = p.b0 * p.a[0](0, 0);
    const double f = p.f(0, 0);
    const double m1 = c == 0.0 ? 1.0 / a0 : std::atanh(c / a0) / c;
    const double m2 = 1.0 / (a0 * a0 - c * c);
    mean_factor_ = -f * m1;
    variance_factor_ = f * f * (m2 - m1 * m1);
    w_ = fd_solve_richardson(CoefficientExpr::number(1.0), CoefficientExpr::number(-1.0), p.domain, n);
}

double SemiAnalyticExample1::w(double x, double y) const { return w_.bicubic(x, y); }

namespace {

template <class Leaf>
Eigen::MatrixXd pairwise_matrix_sum(std::size_t lo, std::size_t hi, const Leaf& leaf) {
    if (hi - lo == 1) return leaf(lo);
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_matrix_sum(lo, mid, leaf) + pairwise_matrix_sum(mid, hi, leaf);
}

}  // namespace

MomentFields sampled_reference(const SpdeProblem& p, const QuadratureRule& rule, const RealizationSolver& solve,
                               Execution exec) {
    p.check();
    const std::size_t q = rule.nodes.size();
    if (q == 0 || rule.weights.size() != q) throw DimensionMismatch("quadrature rule is empty or inconsistent");
    std::size_t total = 1;
    for (int k = 0; k < p.K; ++k) {
        if (total > 200000 / q) throw DomainError("tensor quadrature has too many nodes");
        total *= q;
    }

    std::vector<Eigen::MatrixXd> u(total);
    std::vector<double> w(total);
    std::vector<std::optional<std::string>> failure(total);
    auto one = [&](std::size_t s) {
        std::vector<double> theta(static_cast<std::size_t>(p.K));
        double weight = 1.0;
        std::size_t code = s;
        for (int k = 0; k < p.K; ++k) {
            theta[static_cast<std::size_t>(k)] = rule.nodes[code % q];
            weight *= rule.weights[code % q];
            code /= q;
        }
        w[s] = weight;
        try {
            u[s] = solve(p.realize(theta));
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "reference solve failed at quadrature node " << s << " (theta =";
            for (double t : theta) msg << ' ' << t;
            msg << "): " << e.what();
            failure[s] = msg.str();
        }
    };
    const auto count = static_cast<std::ptrdiff_t>(total);
    if (exec == Execution::serial) {
        for (std::ptrdiff_t s = 0; s < count; ++s) one(static_cast<std::size_t>(s));
    } else {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t s = 0; s < count; ++s) one(static_cast<std::size_t>(s));
    }
    for (const auto& f : failure)
        if (f) throw NumericError(*f);
    for (std::size_t s = 1; s < total; ++s)
        if (u[s].rows() != u[0].rows() || u[s].cols() != u[0].cols())
            throw DimensionMismatch("realization solver returned inconsistent lattices");

    MomentFields out;
    out.mean = pairwise_matrix_sum(0, total, [&](std::size_t s) -> Eigen::MatrixXd { return w[s] * u[s]; });
    const Eigen::MatrixXd second =
        pairwise_matrix_sum(0, total, [&](std::size_t s) -> Eigen::MatrixXd { return w[s] * u[s].array().square().matrix(); });
    out.variance = second - out.mean.array().square().matrix();
    return out;
}

RealizationSolver fd_realization_solver(const SpdeProblem& p, std::size_t n, const Lattice& lat, bool richardson) {
    return [f = p.f, domain = p.domain, n, lat, richardson](const CoefficientExpr& a) {
        const UniformGrid g = richardson ? fd_solve_richardson(a, f, domain, n) : fd_solve(a, f, domain, n);
        return sample([&g](double x, double y) { return g.bicubic(x, y); }, lat);
    };
}

DecayFit decay_fit(std::span<const double> maxima) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < maxima.size(); ++i)
        if (maxima[i] > 0.0 && std::isfinite(maxima[i])) {
            xs.push_back(static_cast<double>(i));
            ys.push_back(std::log(maxima[i]));
        }
    if (xs.size() < 3) throw DomainError("decay fit needs at least 3 positive maxima");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    return DecayFit{std::exp(my - slope * mx), -slope, xs.size()};
}

}  // namespace polysinc
