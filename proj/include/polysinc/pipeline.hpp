#pragma once

// End-to-end runs shared by the CLI and the acceptance suite.

#include <memory>
#include <vector>

#include "polysinc/chaos.hpp"
#include "polysinc/colloc.hpp"
#include "polysinc/config.hpp"
#include "polysinc/reference.hpp"

namespace polysinc {

struct PolySincSettings {
    int P = 3;
    int N = 5;
    double h = 0.0;  ///< <= 0: default_step(N)
    double tau = 1e3;
    int quadrature = 0;
    SolveOptions solve;
};

PolySincSettings settings_from(const RunConfig& c);

struct PolySincRun {
    std::shared_ptr<const ChaosBasis> basis;
    std::size_t unknowns = 0;
    std::size_t rows = 0;
    LeastSquaresResult details;
    double rhs_norm = 0.0;
    std::vector<double> timings;  ///< seconds: basis+tensor, assembly, solve
    PceSolution solution;
};

/// Galerkin projection, collocation and least-squares solve.
PolySincRun run_polysinc(const SpdeProblem& p, const PolySincSettings& s);

MomentFields moments(const PceSolution& sol, const Lattice& lat);

/// Galerkin system of degree P solved by block FD on an n-node grid, moments
/// read back on the lattice (bilinear, or bicubic for fine references).
MomentFields fd_moments(const SpdeProblem& p, int P, std::size_t n, const Lattice& lat, bool bicubic = false);

/// Per-basis sup |u_i| over the Sinc grid nodes.
std::vector<double> coefficient_maxima(const PceSolution& sol);

/// Moments of the reference selected in `c.compare` (semi-analytic, sampled,
/// fd-fine); ReferenceKind::polysinc uses the Poly-Sinc solution of grid
/// size `n_polysinc`.
MomentFields reference_moments(const RunConfig& c, const Lattice& lat, int n_polysinc = 0);

struct SweepRow {
    int n = 0;
    double l2_mean_polysinc = 0.0;
    double l2_mean_fd = 0.0;
    double l2_var_polysinc = 0.0;
    double l2_var_fd = 0.0;
};

/// Poly-Sinc (N = (n-1)/2) and FD (n x n nodes) errors against the configured
/// reference for every n in the sweep.
std::vector<SweepRow> compare_sweep(const RunConfig& c, const std::vector<int>& n_values);

}  // namespace polysinc
