#include "polysinc/chaos.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

#include "polysinc/errors.hpp"
#include "polysinc/io.hpp"

namespace polysinc {

namespace {

// Appends every tuple of `len` non-negative entries summing to `degree`,
// lexicographically decreasing.
void append_graded(int degree, int len, MultiIndex& prefix, std::vector<MultiIndex>& out) {
    if (len == 1) {
        prefix.push_back(degree);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int first = degree; first >= 0; --first) {
        prefix.push_back(first);
        append_graded(degree - first, len - 1, prefix, out);
        prefix.pop_back();
    }
}

// <xi phi_a, phi_b> for orthonormal Legendre under density 1/2.
double univariate_triple(int a, int b, const QuadratureRule& rule) {
    double sum = 0.0;
    for (std::size_t s = 0; s < rule.size(); ++s) {
        const double x = rule.nodes[s];
        sum += rule.weights[s] * x * legendre_orthonormal(a, x) * legendre_orthonormal(b, x);
    }
    return sum;
}

void fill_entry(TripleTensor& t, const MultiIndexSet& set, const std::vector<double>& table,
                int P, std::size_t i, std::size_t j) {
    const auto& ii = set[i];
    const auto& jj = set[j];
    const int K = set.dimension();
    // all coordinates must agree except (at most) one
    int differing = -1;
    for (int r = 0; r < K; ++r) {
        if (ii[r] != jj[r]) {
            if (differing >= 0) return;
            differing = r;
        }
    }
    const auto stride = static_cast<std::size_t>(P + 1);
    if (differing >= 0) {
        const int r = differing;
        t.at(r, i, j) = table[static_cast<std::size_t>(ii[r]) * stride + static_cast<std::size_t>(jj[r])];
    } else {
        for (int r = 0; r < K; ++r)
            t.at(r, i, j) = table[static_cast<std::size_t>(ii[r]) * stride + static_cast<std::size_t>(jj[r])];
    }
}

std::vector<double> univariate_table(int P, int q) {
    const auto rule = gauss_legendre(q);
    const auto stride = static_cast<std::size_t>(P + 1);
    std::vector<double> table(stride * stride);
    // xi phi_a lies in span{phi_{a-1}, phi_{a+1}}: only the first off-diagonals survive
    for (int a = 0; a < P; ++a) {
        const double v = univariate_triple(a, a + 1, rule);
        table[static_cast<std::size_t>(a) * stride + static_cast<std::size_t>(a + 1)] = v;
        table[static_cast<std::size_t>(a + 1) * stride + static_cast<std::size_t>(a)] = v;
    }
    return table;
}

int resolve_quadrature(const ChaosBasis& basis, int q) {
    const int P = basis.total_degree();
    if (q == 0) return P + 2;
    if (q < P + 1)
        throw DomainError("triple-tensor quadrature needs at least P+1 nodes, got " + std::to_string(q));
    return q;
}

}  // namespace

int MultiIndexSet::degree(const MultiIndex& i) { return std::accumulate(i.begin(), i.end(), 0); }

std::size_t basis_count(int K, int P) {
    if (K < 1 || P < 0) throw DomainError("basis count needs K >= 1 and P >= 0");
    // C(K+P, P) by the multiplicative formula; every prefix is an integer
    unsigned long long c = 1;
    for (int r = 1; r <= P; ++r) {
        c = c * static_cast<unsigned long long>(K + r) / static_cast<unsigned long long>(r);
        if (c > (1ULL << 40)) return static_cast<std::size_t>(-1);
    }
    return static_cast<std::size_t>(c);
}

MultiIndexSet::MultiIndexSet(int K, int P, std::size_t cap) : K_(K), P_(P) {
    if (K < 1) throw DomainError("stochastic dimension K must be >= 1");
    if (P < 0) throw DomainError("total degree P must be >= 0");
    const std::size_t count = basis_count(K, P);
    if (count > cap)
        throw DomainError("basis of (K=" + std::to_string(K) + ", P=" + std::to_string(P) +
                          ") exceeds the cap of " + std::to_string(cap) + " functions");
    indices_.reserve(count);
    MultiIndex prefix;
    prefix.reserve(static_cast<std::size_t>(K));
    for (int d = 0; d <= P; ++d) append_graded(d, K, prefix, indices_);
}

MultiIndexSet multi_index_set(int K, int P, std::size_t cap) { return MultiIndexSet(K, P, cap); }

double legendre_orthonormal(int degree, double xi, bool allow_outside) {
    if (degree < 0) throw DomainError("Legendre degree must be non-negative");
    if (!allow_outside && !(xi >= -1.0 && xi <= 1.0))
        throw DomainError("Legendre argument outside [-1, 1]");
    double prev = 1.0;
    double cur = xi;
    if (degree == 0) return 1.0;
    for (int n = 1; n < degree; ++n) {
        const double next = ((2.0 * n + 1.0) * xi * cur - n * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return std::sqrt(2.0 * degree + 1.0) * cur;
}

QuadratureRule gauss_legendre(int q) {
    if (q < 1) throw DomainError("Gauss rule needs q >= 1");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(q));
    rule.weights.resize(static_cast<std::size_t>(q));
    const int half = (q + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton on L_q from the Chebyshev-like initial guess
        double z = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double deriv = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = z;
            for (int n = 1; n < q; ++n) {
                const double p2 = ((2.0 * n + 1.0) * z * p1 - n * p0) / (n + 1.0);
                p0 = p1;
                p1 = p2;
            }
            if (q == 1) {
                p1 = z;
                p0 = 1.0;
            }
            deriv = q * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / deriv;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // recompute the derivative at the converged node
        double p0 = 1.0;
        double p1 = z;
        for (int n = 1; n < q; ++n) {
            const double p2 = ((2.0 * n + 1.0) * z * p1 - n * p0) / (n + 1.0);
            p0 = p1;
            p1 = p2;
        }
        deriv = (q == 1) ? 1.0 : q * (z * p1 - p0) / (z * z - 1.0);
        // weight for the density 1/2: (1/2) * 2 / ((1 - z^2) L_q'(z)^2)
        const double w = 1.0 / ((1.0 - z * z) * deriv * deriv);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(q - 1 - i);
        rule.nodes[lo] = -z;
        rule.nodes[hi] = z;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (q % 2 == 1) rule.nodes[static_cast<std::size_t>(q / 2)] = 0.0;
    return rule;
}

ChaosBasis::ChaosBasis(MultiIndexSet index_set) : set_(std::move(index_set)) {}

double ChaosBasis::evaluate(std::size_t i, std::span<const double> theta) const {
    if (theta.size() != static_cast<std::size_t>(dimension()))
        throw DimensionMismatch("random parameter has wrong dimension");
    const auto& idx = set_[i];
    double v = 1.0;
    for (std::size_t r = 0; r < theta.size(); ++r) v *= legendre_orthonormal(idx[r], theta[r]);
    return v;
}

std::vector<double> ChaosBasis::evaluate_all(std::span<const double> theta) const {
    if (theta.size() != static_cast<std::size_t>(dimension()))
        throw DimensionMismatch("random parameter has wrong dimension");
    const int P = total_degree();
    const auto stride = static_cast<std::size_t>(P + 1);
    std::vector<double> table(theta.size() * stride);
    for (std::size_t r = 0; r < theta.size(); ++r)
        for (int d = 0; d <= P; ++d) table[r * stride + static_cast<std::size_t>(d)] = legendre_orthonormal(d, theta[r]);
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        double v = 1.0;
        for (std::size_t r = 0; r < theta.size(); ++r) v *= table[r * stride + static_cast<std::size_t>(set_[i][r])];
        out[i] = v;
    }
    return out;
}

TripleTensor::TripleTensor(int K, std::size_t m_plus_1)
    : K_(K), m1_(m_plus_1), data_(static_cast<std::size_t>(K) * m_plus_1 * m_plus_1, 0.0) {}

std::vector<TripleTensor::Entry> TripleTensor::nonzeros(double threshold) const {
    std::vector<Entry> out;
    for (int k = 0; k < K_; ++k)
        for (std::size_t i = 0; i < m1_; ++i)
            for (std::size_t j = 0; j < m1_; ++j) {
                const double v = (*this)(k, i, j);
                if (std::abs(v) > threshold) out.push_back({k, i, j, v});
            }
    return out;
}

TripleTensor triple_tensor_serial(const ChaosBasis& basis, int q) {
    q = resolve_quadrature(basis, q);
    const int P = basis.total_degree();
    const auto table = univariate_table(P, q);
    TripleTensor t(basis.dimension(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) fill_entry(t, basis.index_set(), table, P, i, j);
    return t;
}

TripleTensor triple_tensor(const ChaosBasis& basis, int q) {
    q = resolve_quadrature(basis, q);
    const int P = basis.total_degree();
    const auto table = univariate_table(P, q);
    TripleTensor t(basis.dimension(), basis.size());
    const auto m1 = static_cast<std::ptrdiff_t>(basis.size());
    // each (i, j) writes only its own slots
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m1; ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            fill_entry(t, basis.index_set(), table, P, static_cast<std::size_t>(i), j);
    return t;
}

void write_triplets(std::ostream& os, const TripleTensor& t, double threshold) {
    os << "k,i,j,value\n";
    for (const auto& e : t.nonzeros(threshold))
        os << (e.k + 1) << ',' << e.i << ',' << e.j << ',' << format_real(e.value) << '\n';
}

FieldSamples pce_mean(std::span<const FieldSamples> coeffs) {
    if (coeffs.empty()) throw DomainError("chaos expansion has no coefficients");
    return coeffs[0];
}

FieldSamples pce_variance(std::span<const FieldSamples> coeffs) {
    if (coeffs.empty()) throw DomainError("chaos expansion has no coefficients");
    FieldSamples var(coeffs[0].size(), 0.0);
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        if (coeffs[i].size() != var.size()) throw DimensionMismatch("coefficient fields differ in length");
        for (std::size_t p = 0; p < var.size(); ++p) var[p] += coeffs[i][p] * coeffs[i][p];
    }
    return var;
}

FieldSamples pce_realize(std::span<const FieldSamples> coeffs, const ChaosBasis& basis,
                         std::span<const double> theta) {
    if (coeffs.size() != basis.size()) throw DimensionMismatch("coefficient count differs from basis size");
    for (double t : theta)
        if (!(t >= -1.0 && t <= 1.0)) throw DomainError("random parameter outside [-1, 1]");
    const auto phi = basis.evaluate_all(theta);
    FieldSamples out(coeffs.empty() ? 0 : coeffs[0].size(), 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].size() != out.size()) throw DimensionMismatch("coefficient fields differ in length");
        for (std::size_t p = 0; p < out.size(); ++p) out[p] += phi[i] * coeffs[i][p];
    }
    return out;
}

}  // namespace polysinc
