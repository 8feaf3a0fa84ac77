#include "polysinc/cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polysinc/errors.hpp"
#include "polysinc/io.hpp"
#include "polysinc/pipeline.hpp"

namespace polysinc {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct Options {
    std::string config;
    std::string out = ".";
    std::string n_sweep;
    std::optional<double> tau;
    std::string reference;
    std::string n_range = "3:13";
    bool dump_system = false;
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("--n-sweep: '" + item + "' is not an integer");
        }
    }
    if (out.empty()) throw ConfigError("--n-sweep is empty");
    return out;
}

RunConfig load_with_overrides(const Options& o) {
    RunConfig c = load_config(o.config);
    if (o.tau) {
        if (!(*o.tau > 0.0) || !std::isfinite(*o.tau)) throw ConfigError("--tau must be positive");
        c.solver.tau = *o.tau;
    }
    if (!o.reference.empty()) c.compare.reference = parse_reference_kind(o.reference);
    if (!o.n_sweep.empty()) {
        c.compare.n_sweep = parse_int_list(o.n_sweep);
        for (int n : c.compare.n_sweep)
            if (n < 3 || n > 81 || n % 2 == 0) throw ConfigError("--n-sweep entries must be odd in [3, 81]");
    }
    return c;
}

std::string lattice_csv(const Eigen::MatrixXd& v, const Lattice& lat) {
    return grid_csv(v, lat.domain.x_lo, lat.domain.x_hi, lat.domain.y_lo, lat.domain.y_hi);
}

int cmd_validate(const Options& o, std::ostream& out) {
    const RunConfig c = load_with_overrides(o);
    const double floor = validate_coercivity(c.problem);
    const auto m1 = basis_count(c.problem.K, c.P);
    out << "config ok: " << (c.name.empty() ? o.config : c.name) << "\n"
        << "basis functions: " << m1 << "\n"
        << "coercivity floor: " << format_real(floor) << "\n";
    return exit_ok;
}

int cmd_solve(const Options& o, std::ostream& out) {
    const RunConfig c = load_with_overrides(o);
    validate_coercivity(c.problem);
    const fs::path dir(o.out);
    const auto settings = settings_from(c);
    auto run = run_polysinc(c.problem, settings);
    const auto& sol = run.solution;
    const auto lat = Lattice::uniform(c.problem.domain, static_cast<std::size_t>(c.lattice));
    const auto mom = moments(sol, lat);

    write_file_atomic(dir / "mean.csv", lattice_csv(mom.mean, lat));
    write_file_atomic(dir / "variance.csv", lattice_csv(mom.variance, lat));
    for (std::size_t i = 0; i < sol.basis_size(); ++i)
        write_file_atomic(dir / ("coeff_" + std::to_string(i) + ".csv"),
                          lattice_csv(sol.sample_coefficient(i, lat.xs, lat.ys), lat));

    const auto maxima = coefficient_maxima(sol);
    std::string decay = "i,max_abs\n";
    for (std::size_t i = 0; i < maxima.size(); ++i) decay += std::to_string(i) + "," + format_real(maxima[i]) + "\n";
    write_file_atomic(dir / "decay.csv", decay);

    ojson s;
    s["name"] = c.name;
    s["K"] = c.problem.K;
    s["P"] = c.P;
    s["basis_count"] = sol.basis_size();
    s["unknowns"] = run.unknowns;
    s["rows"] = run.rows;
    s["N"] = settings.N;
    s["h"] = settings.h;
    s["tau"] = settings.tau;
    s["solver"] = to_string(run.details.method);
    s["iterations"] = run.details.iterations;
    s["residual_norm"] = run.details.residual_norm;
    s["relative_residual"] = run.rhs_norm > 0 ? run.details.residual_norm / run.rhs_norm : 0.0;
    std::size_t positive = 0;
    for (double m : maxima) positive += m > 0.0 ? 1 : 0;
    if (positive >= 3) {
        const auto fit = decay_fit(maxima);
        s["decay_fit"] = {{"alpha", fit.alpha}, {"beta", fit.beta}};
    }
    if (!o.reference.empty()) {
        const auto ref = reference_moments(c, lat, 2 * settings.N + 1);
        const auto em = error_norms(mom.mean, ref.mean, lat);
        const auto ev = error_norms(mom.variance, ref.variance, lat);
        s["errors"] = {{"reference", to_string(c.compare.reference)},
                       {"lattice", lat.n},
                       {"l2_mean", em.l2},
                       {"sup_mean", em.sup},
                       {"l2_var", ev.l2},
                       {"sup_var", ev.sup}};
    }
    s["timings_s"] = {{"basis_tensor", run.timings[0]}, {"assembly", run.timings[1]}, {"solve", run.timings[2]}};
    write_file_atomic(dir / "summary.json", s.dump(2) + "\n");

    if (o.dump_system) {
        const auto tensor = triple_tensor(*run.basis, c.solver.quadrature);
        std::ostringstream ts;
        write_triplets(ts, tensor);
        write_file_atomic(dir / "tensor_triplets.csv", ts.str());
        const auto sys = galerkin_assemble(c.problem, *run.basis, tensor);
        const auto g = build_global_system(sys, sol.grid_x(), sol.grid_y(), settings.tau);
        std::ostringstream ms;
        write_system_triplets(ms, g);
        write_file_atomic(dir / "system_triplets.csv", ms.str());
        std::ostringstream rs;
        write_system_rhs(rs, g);
        write_file_atomic(dir / "system_rhs.csv", rs.str());
    }

    out << "basis functions: " << sol.basis_size() << "\n"
        << "unknowns: " << run.unknowns << "\n"
        << "residual norm: " << format_real(run.details.residual_norm) << "\n";
    if (s.contains("errors"))
        out << "L2 error mean: " << format_real(s["errors"]["l2_mean"].get<double>())
            << "  variance: " << format_real(s["errors"]["l2_var"].get<double>()) << "\n";
    return exit_ok;
}

int cmd_compare(const Options& o, std::ostream& out) {
    const RunConfig c = load_with_overrides(o);
    validate_coercivity(c.problem);
    const auto rows = compare_sweep(c, c.compare.n_sweep);
    std::string csv = "n,l2_mean_polysinc,l2_mean_fd,l2_var_polysinc,l2_var_fd\n";
    for (const auto& r : rows)
        csv += std::to_string(r.n) + "," + format_real(r.l2_mean_polysinc) + "," + format_real(r.l2_mean_fd) + "," +
               format_real(r.l2_var_polysinc) + "," + format_real(r.l2_var_fd) + "\n";
    write_file_atomic(fs::path(o.out) / "sweep.csv", csv);
    out << csv;
    return exit_ok;
}

int cmd_lebesgue(const Options& o, std::ostream& out) {
    const auto colon = o.n_range.find(':');
    int lo = 0, hi = 0;
    try {
        if (colon == std::string::npos) throw std::invalid_argument(o.n_range);
        lo = std::stoi(o.n_range.substr(0, colon));
        hi = std::stoi(o.n_range.substr(colon + 1));
    } catch (const std::exception&) {
        throw ConfigError("--n-range must look like 3:13");
    }
    if (lo < 3 || hi < lo || hi > 201) throw ConfigError("--n-range needs 3 <= lo <= hi <= 201");
    std::string csv = "n,estimate,measured\n";
    for (int n = lo + (lo % 2 == 0 ? 1 : 0); n <= hi; n += 2) {
        const int N = (n - 1) / 2;
        const SincGrid g(-1.0, 1.0, N, default_step(N));
        csv += std::to_string(n) + "," + format_real(lebesgue_estimate(n)) + "," +
               format_real(lebesgue_measured(g, 20000)) + "\n";
    }
    write_file_atomic(fs::path(o.out) / "lebesgue.csv", csv);
    out << csv;
    return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stochastic Galerkin / Poly-Sinc solver for elliptic SPDEs", "polysinc"};
    app.require_subcommand(1);
    Options o;

    auto* solve = app.add_subcommand("solve", "solve a configured problem and write moment grids");
    solve->add_option("--config", o.config, "problem configuration (JSON)")->required();
    solve->add_option("--out", o.out, "output directory");
    solve->add_option("--tau", o.tau, "boundary row weight");
    solve->add_option("--reference", o.reference, "also report errors against semi-analytic|sampled|fd-fine|polysinc");
    solve->add_flag("--dump-system", o.dump_system, "write tensor and global system triplets");

    auto* compare = app.add_subcommand("compare", "Poly-Sinc and FD error sweep against a reference");
    compare->add_option("--config", o.config, "problem configuration (JSON)")->required();
    compare->add_option("--out", o.out, "output directory");
    compare->add_option("--n-sweep", o.n_sweep, "comma-separated odd grid sizes");
    compare->add_option("--tau", o.tau, "boundary row weight");
    compare->add_option("--reference", o.reference, "semi-analytic|sampled|fd-fine|polysinc");

    auto* lebesgue = app.add_subcommand("lebesgue", "Lebesgue constant estimate vs measurement");
    lebesgue->add_option("--out", o.out, "output directory");
    lebesgue->add_option("--n-range", o.n_range, "lo:hi (odd n in range)");

    auto* validate = app.add_subcommand("validate", "check a configuration and its coercivity");
    validate->add_option("--config", o.config, "problem configuration (JSON)")->required();
    validate->add_option("--tau", o.tau, "boundary row weight");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_config;
    }

    try {
        if (solve->parsed()) return cmd_solve(o, out);
        if (compare->parsed()) return cmd_compare(o, out);
        if (lebesgue->parsed()) return cmd_lebesgue(o, out);
        if (validate->parsed()) return cmd_validate(o, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const NonCoerciveError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return exit_numeric;
    }
    return exit_usage;
}

}  // namespace polysinc
