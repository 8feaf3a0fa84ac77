#pragma once

// Orthonormal Legendre polynomial chaos on [-1,1]^K with the uniform
// probability density (1/2)^K as weight.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace polysinc {

using MultiIndex = std::vector<int>;

/// Total-degree index set {i : |i| <= P}, graded lexicographic order
/// (zero tuple first; within a degree, lexicographically decreasing so
/// (1,0,...) precedes (0,1,...)).
class MultiIndexSet {
public:
    static constexpr std::size_t default_cap = 10000;

    MultiIndexSet(int K, int P, std::size_t cap = default_cap);

    int dimension() const noexcept { return K_; }
    int total_degree() const noexcept { return P_; }
    std::size_t size() const noexcept { return indices_.size(); }
    const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
    const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

    static int degree(const MultiIndex& i);

private:
    int K_;
    int P_;
    std::vector<MultiIndex> indices_;
};

MultiIndexSet multi_index_set(int K, int P, std::size_t cap = MultiIndexSet::default_cap);

/// (K+P)! / (K! P!), computed without overflow for the sizes in use.
std::size_t basis_count(int K, int P);

/// sqrt(2d+1) L_d(xi). Throws DomainError outside [-1,1] unless
/// allow_outside is set.
double legendre_orthonormal(int degree, double xi, bool allow_outside = false);

/// Gauss-Legendre rule normalized to the density 1/2: sum of weights is 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

QuadratureRule gauss_legendre(int q);

/// Tensor-product Legendre chaos basis over a MultiIndexSet.
class ChaosBasis {
public:
    explicit ChaosBasis(MultiIndexSet index_set);
    ChaosBasis(int K, int P) : ChaosBasis(MultiIndexSet(K, P)) {}

    const MultiIndexSet& index_set() const noexcept { return set_; }
    int dimension() const noexcept { return set_.dimension(); }
    int total_degree() const noexcept { return set_.total_degree(); }
    std::size_t size() const noexcept { return set_.size(); }

    /// Phi_i(theta) = prod_r phi_{i_r}(theta_r).
    double evaluate(std::size_t i, std::span<const double> theta) const;
    /// All basis values at theta.
    std::vector<double> evaluate_all(std::span<const double> theta) const;

private:
    MultiIndexSet set_;
};

/// T[k][i][j] = <xi_k Phi_i, Phi_j>.
class TripleTensor {
public:
    struct Entry {
        int k;
        std::size_t i;
        std::size_t j;
        double value;
    };

    TripleTensor(int K, std::size_t m_plus_1);

    int dimension() const noexcept { return K_; }
    std::size_t basis_size() const noexcept { return m1_; }

    double operator()(int k, std::size_t i, std::size_t j) const {
        return data_[(static_cast<std::size_t>(k) * m1_ + i) * m1_ + j];
    }
    double& at(int k, std::size_t i, std::size_t j) {
        return data_[(static_cast<std::size_t>(k) * m1_ + i) * m1_ + j];
    }

    /// Entries with |value| > threshold, ordered by (k, i, j).
    std::vector<Entry> nonzeros(double threshold = 0.0) const;

private:
    int K_;
    std::size_t m1_;
    std::vector<double> data_;
};

/// Builds the tensor from univariate q-point Gauss integrals using the
/// product structure of the basis. q = 0 selects P + 2.
TripleTensor triple_tensor(const ChaosBasis& basis, int q = 0);
TripleTensor triple_tensor_serial(const ChaosBasis& basis, int q = 0);

/// "k,i,j,value" lines with a header, 17 significant digits.
void write_triplets(std::ostream& os, const TripleTensor& t, double threshold = 1e-14);

// Moments of a chaos expansion with coefficient fields coeffs[i] sampled at
// common spatial points.
using FieldSamples = std::vector<double>;

FieldSamples pce_mean(std::span<const FieldSamples> coeffs);
FieldSamples pce_variance(std::span<const FieldSamples> coeffs);
FieldSamples pce_realize(std::span<const FieldSamples> coeffs, const ChaosBasis& basis,
                         std::span<const double> theta);

}  // namespace polysinc
