#include "polysinc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polysinc/errors.hpp"

namespace polysinc {

NonCoerciveError::NonCoerciveError(double floor, double x, double y)
    : std::runtime_error("diffusion coefficient not coercive: worst-case floor " + std::to_string(floor) +
                         " at (" + std::to_string(x) + ", " + std::to_string(y) + ")"),
      floor_(floor),
      x_(x),
      y_(y) {}

CoefficientExpr SpdeProblem::realize(std::span<const double> theta) const {
    if (theta.size() != static_cast<std::size_t>(K)) throw DimensionMismatch("theta has wrong dimension");
    CoefficientExpr out = a0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!(theta[k] >= -1.0 && theta[k] <= 1.0)) throw DomainError("random parameter outside [-1, 1]");
        const double c = b0 * theta[k];
        if (c == 0.0 || a[k].is_zero()) continue;
        out = CoefficientExpr::add(out, CoefficientExpr::mul(CoefficientExpr::number(c), a[k]));
    }
    return out;
}

void SpdeProblem::check() const {
    if (!(domain.x_lo < domain.x_hi) || !(domain.y_lo < domain.y_hi))
        throw DomainError("spatial domain must be a non-degenerate rectangle");
    if (K < 1) throw DomainError("stochastic dimension K must be >= 1");
    if (a.size() != static_cast<std::size_t>(K))
        throw DimensionMismatch("expected " + std::to_string(K) + " coefficient fields a_k, got " +
                                std::to_string(a.size()));
    if (!std::isfinite(b0)) throw DomainError("b0 must be finite");
    if (!(coercivity_floor > 0.0)) throw DomainError("coercivity floor alpha must be positive");
}

double validate_coercivity(const SpdeProblem& p, int sample_density) {
    p.check();
    if (sample_density < 1) throw DomainError("coercivity sample density must be >= 1");
    double best = std::numeric_limits<double>::infinity();
    double bx = 0.0;
    double by = 0.0;
    const auto& d = p.domain;
    for (int s = 0; s <= sample_density; ++s) {
        const double x = d.x_lo + (d.x_hi - d.x_lo) * s / sample_density;
        for (int t = 0; t <= sample_density; ++t) {
            const double y = d.y_lo + (d.y_hi - d.y_lo) * t / sample_density;
            double spread = 0.0;
            for (const auto& ak : p.a) spread += std::abs(ak(x, y));
            const double v = p.a0(x, y) - std::abs(p.b0) * spread;
            if (v < best) {
                best = v;
                bx = x;
                by = y;
            }
        }
    }
    if (!(best > 0.0) || best < p.coercivity_floor) throw NonCoerciveError(best, bx, by);
    return best;
}

double CoupledSystem::laplacian_weight(std::size_t j, std::size_t i) const {
    double w = 0.0;
    for (const auto& t : equations.at(j))
        if (t.block == i && t.field == 0) w += t.coefficient;
    return w;
}

double CoupledSystem::coupling(std::size_t k, std::size_t j, std::size_t i) const {
    double c = 0.0;
    for (const auto& t : equations.at(j))
        if (t.block == i && t.field == k) c += t.coefficient;
    return c;
}

bool CoupledSystem::block_is_zero(std::size_t j, std::size_t i) const {
    return std::none_of(equations.at(j).begin(), equations.at(j).end(),
                        [&](const BlockTerm& t) { return t.block == i && t.coefficient != 0.0; });
}

CoupledSystem galerkin_assemble(const SpdeProblem& p, const ChaosBasis& basis,
                                const TripleTensor& tensor, double threshold) {
    p.check();
    if (basis.dimension() != p.K) throw DimensionMismatch("basis dimension differs from problem K");
    if (tensor.dimension() != p.K || tensor.basis_size() != basis.size())
        throw DimensionMismatch("triple tensor was not built from this basis");

    CoupledSystem sys;
    sys.domain = p.domain;
    sys.fields.reserve(p.a.size() + 1);
    sys.fields.push_back(p.a0);
    for (const auto& ak : p.a) sys.fields.push_back(ak);

    const std::size_t m1 = basis.size();
    sys.equations.resize(m1);
    sys.rhs.assign(m1, CoefficientExpr());
    sys.rhs[0] = p.f;
    for (std::size_t j = 0; j < m1; ++j) {
        auto& eq = sys.equations[j];
        for (std::size_t i = 0; i < m1; ++i) {
            if (i == j) eq.push_back({j, 0, 1.0});
            if (p.b0 == 0.0) continue;
            for (int k = 0; k < p.K; ++k) {
                if (p.a[static_cast<std::size_t>(k)].is_zero()) continue;
                const double t = tensor(k, i, j);
                if (std::abs(t) <= threshold) continue;
                eq.push_back({i, static_cast<std::size_t>(k) + 1, p.b0 * t});
            }
        }
    }
    return sys;
}

CoupledSystem single_equation(const Rectangle& domain, CoefficientExpr a, CoefficientExpr f) {
    CoupledSystem sys;
    sys.domain = domain;
    sys.fields = {std::move(a)};
    sys.equations = {{BlockTerm{0, 0, 1.0}}};
    sys.rhs = {std::move(f)};
    return sys;
}

}  // namespace polysinc
