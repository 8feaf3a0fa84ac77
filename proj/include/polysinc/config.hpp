#pragma once

// Problem/run configuration documents (JSON).
//
//   {
//     "name": "example1",
//     "domain": {"x": [-1, 1], "y": [-1, 1]},
//     "K": 1, "P": 3,
//     "a0": "2", "b0": 1, "a": ["1"], "f": "-1",
//     "coercivity_floor": 1e-8,
//     "solver": {"N": 5, "h": 0.805, "tau": 1000, "quadrature": 0, "dense_limit": 2500},
//     "compare": {"n_sweep": [5, 7, 9, 11, 13], "reference": "semi-analytic",
//                 "fd_fine_n": 161, "reference_P": 4, "sample_nodes": 100},
//     "output": {"lattice": 201}
//   }
//
// Expressions (a0, a[k], f) are strings in the coefficient language or plain
// numbers. Only "K", "a" and "domain" are required; every other key has a
// default. Unknown keys anywhere are rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polysinc/model.hpp"

namespace polysinc {

enum class ReferenceKind { semi_analytic, sampled, fd_fine, polysinc };

ReferenceKind parse_reference_kind(std::string_view name);
std::string to_string(ReferenceKind kind);

struct SolverConfig {
    int N = 5;
    std::optional<double> h;  ///< default_step(N) when absent
    double tau = 1e3;
    int quadrature = 0;       ///< 0: P + 2
    std::size_t dense_limit = 2500;

    double step() const;
};

struct CompareConfig {
    std::vector<int> n_sweep{5, 7, 9, 11, 13};
    ReferenceKind reference = ReferenceKind::semi_analytic;
    int fd_fine_n = 161;
    int reference_P = 4;
    int sample_nodes = 100;
};

struct RunConfig {
    std::string name;
    SpdeProblem problem;
    int P = 3;
    SolverConfig solver;
    CompareConfig compare;
    int lattice = 201;
};

/// Throws ConfigError (schema, ranges, expression syntax).
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON rendering; parse_config(config_to_json(c)) reproduces c.
std::string config_to_json(const RunConfig& c);

}  // namespace polysinc
