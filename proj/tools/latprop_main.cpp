// latprop: exact propagators and dispersive-decay scans for Schrodinger
// operators on lattice x finite-crystal product graphs.
//
// Exit codes: 0 pass, 1 numeric assertion or bound failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latprop/analysis.hpp"
#include "latprop/bessel.hpp"
#include "latprop/json_io.hpp"
#include "latprop/kernel.hpp"
#include "latprop/oracle.hpp"
#include "latprop/spectral.hpp"
#include "latprop/util.hpp"

using namespace latprop;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const std::map<std::string, std::string>& builtin_specs() {
    static const std::map<std::string, std::string> table{
        {"p2", R"({"kind": "path", "size": 2})"},
        {"p2q", R"({"kind": "path", "size": 2, "potential": [1.0, -1.0]})"},
        {"p4", R"({"kind": "path", "size": 4})"},
        {"c3", R"({"kind": "cycle", "size": 3})"},
        {"c3q", R"({"kind": "cycle", "size": 3, "potential": [0.7, -0.3, 1.1]})"},
        {"star3", R"({"kind": "star", "size": 3})"},
        {"point", R"({"kind": "path", "size": 1})"},
    };
    return table;
}

FiniteGraph load_graph(const std::string& name) {
    if (std::ifstream probe(name); probe.good())
        return build_finite_graph(load_graph_spec_file(name));
    if (auto it = builtin_specs().find(name); it != builtin_specs().end())
        return build_finite_graph(parse_graph_spec_text(it->second));
    throw std::invalid_argument("graph spec: no file or built-in named '" + name + "'");
}

std::vector<long long> parse_offset(const std::string& text, int d) {
    std::vector<long long> nu;
    if (!text.empty()) {
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) nu.push_back(std::stoll(item));
    }
    if (nu.empty()) nu.assign(static_cast<std::size_t>(d), 0);
    if (static_cast<int>(nu.size()) != d)
        throw std::invalid_argument("--offset must list exactly d integers");
    return nu;
}

int run_bessel(int nu, double t, int nodes, bool as_json) {
    const double value = bessel_j(nu, t);
    const int abs_nu = std::abs(nu);
    if (nodes <= 0) nodes = 2 * (abs_nu + static_cast<int>(std::ceil(t))) + 32;
    const cplx quad = bessel_integral_oracle(abs_nu, t, nodes);
    const double quad_err = std::abs(quad - unit_imag_power(abs_nu) * bessel_j(abs_nu, t));

    std::optional<double> recurrence_err;
    if (t > 0.0) {
        const double lhs = bessel_j(nu - 1, t) + bessel_j(nu + 1, t);
        const double rhs = (2.0 * nu / t) * value;
        recurrence_err = std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-30);
    }

    const bool pass = quad_err < 1e-11 && recurrence_err.value_or(0.0) < 1e-10;
    if (as_json) {
        json out{{"nu", nu}, {"t", t}, {"value", value}, {"integral_check", quad_err},
                 {"nodes", nodes}, {"pass", pass}};
        if (recurrence_err) out["recurrence_check"] = *recurrence_err;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "J_" << nu << "(" << fmt17(t) << ") = " << fmt17(value) << "\n";
        std::cout << "integral identity error  = " << fmt17(quad_err) << " (" << nodes
                  << " nodes)\n";
        if (recurrence_err)
            std::cout << "recurrence residual      = " << fmt17(*recurrence_err) << "\n";
        std::cout << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
}

int run_kernel(const std::string& graph_name, int d, double t, const std::string& offset_text,
               int p, int q, bool dump_block, bool dump_spectrum, bool as_json) {
    const FiniteGraph g = load_graph(graph_name);
    const Spectrum s = eigendecompose(hamiltonian_matrix(g));
    const std::vector<long long> nu = parse_offset(offset_text, d);

    const std::vector<long long> origin(static_cast<std::size_t>(d), 0);
    const cplx value = kernel(g, s, ProductPoint{nu, p}, ProductPoint{origin, q}, t);

    json out{{"graph", graph_name}, {"d", d}, {"t", t}, {"offset", nu},
             {"p", p}, {"q", q}, {"re", value.real()}, {"im", value.imag()},
             {"abs", std::abs(value)}};
    if (dump_block) out["block"] = kernel_block_to_json(kernel_block(g, s, nu, t));
    if (dump_spectrum) out["spectrum"] = spectrum_to_json(s);

    if (as_json) {
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "kernel(offset=" << json(nu).dump() << ", p=" << p << ", q=" << q
                  << ", t=" << fmt17(t) << ") = " << fmt17(value.real()) << " + "
                  << fmt17(value.imag()) << " i  (|.| = " << fmt17(std::abs(value)) << ")\n";
        if (dump_block) std::cout << out["block"].dump() << "\n";
        if (dump_spectrum) std::cout << out["spectrum"].dump() << "\n";
    }
    return 0;
}

int run_verify(const std::string& graph_name, int d, double t, int L, int probes, int quad_cases,
               std::uint64_t seed, bool as_json) {
    const FiniteGraph g = load_graph(graph_name);
    const Spectrum s = eigendecompose(hamiltonian_matrix(g));

    const OracleComparison rep = compare_kernel_vs_oracle(g, d, t, L, probes, seed);

    std::mt19937_64 rng(seed + 1);
    double quad_err = 0.0;
    for (int c = 0; c < quad_cases; ++c) {
        std::vector<long long> nu(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) nu[j] = uniform_int(rng, -8, 8);
        const int pp = static_cast<int>(uniform_int(rng, 0, g.size() - 1));
        const int qq = static_cast<int>(uniform_int(rng, 0, g.size() - 1));
        long long max_abs = 0;
        for (long long c2 : nu) max_abs = std::max(max_abs, std::llabs(c2));
        const int nodes =
            static_cast<int>(2 * (max_abs + static_cast<long long>(std::ceil(2 * std::abs(t)))) + 16);
        const cplx via_quad = kernel_via_fiber_quadrature(g, s, nu, pp, qq, t, nodes);
        const cplx closed =
            kernel(g, s, ProductPoint{nu, pp},
                   ProductPoint{std::vector<long long>(static_cast<std::size_t>(d), 0), qq}, t);
        quad_err = std::max(quad_err, std::abs(via_quad - closed));
    }

    const bool pass = rep.max_error < 1e-8 && quad_err < 1e-11;
    if (as_json) {
        std::cout << json{{"graph", graph_name}, {"d", d}, {"t", t}, {"L", rep.L},
                          {"seed", seed}, {"oracle_max_error", rep.max_error},
                          {"oracle_probes", rep.probes}, {"quadrature_max_error", quad_err},
                          {"quadrature_cases", quad_cases}, {"pass", pass}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "verify " << graph_name << "  d=" << d << "  t=" << fmt17(t)
                  << "  L=" << rep.L << "  seed=" << seed << "\n";
        std::cout << "  kernel vs truncated lattice: max error " << fmt17(rep.max_error) << " over "
                  << rep.probes << " probes (tol 1e-08)\n";
        std::cout << "  kernel vs fiber quadrature : max error " << fmt17(quad_err) << " over "
                  << quad_cases << " cases (tol 1e-11)\n";
        std::cout << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
}

int run_scan(const std::string& graph_name, int d, double t_min, double t_max, int points,
             const std::string& out_path, bool as_json) {
    if (!(t_min < t_max)) throw std::invalid_argument("scan: need --t-min < --t-max");
    if (!(t_min > 0.0)) throw std::invalid_argument("scan: need --t-min > 0");
    if (points <= 0)  // default density: 32 points per decade
        points = std::max(2, static_cast<int>(std::ceil(32.0 * std::log10(t_max / t_min))) + 1);
    const FiniteGraph g = load_graph(graph_name);
    const Spectrum s = eigendecompose(hamiltonian_matrix(g));
    const DecaySeries series = dispersion_scan(g, s, d, log_grid(t_min, t_max, points));

    std::ostringstream csv;
    csv << "t,sup_norm,envelope,bound\n";
    const double bound_const = dispersion_bound_constant(d);
    for (const DecaySample& sample : series.samples)
        csv << fmt17(sample.t) << ',' << fmt17(sample.sup_norm) << ',' << fmt17(sample.envelope)
            << ',' << fmt17(bound_const * std::pow(sample.t, -d / 3.0)) << "\n";

    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("scan: cannot open output file '" + out_path + "'");
        out << csv.str();
    }
    if (as_json)
        std::cout << json{{"graph", graph_name}, {"d", d}, {"points", points},
                          {"bound_satisfied", series.bound_satisfied},
                          {"first_violation_t", series.first_violation_t}}
                         .dump()
                  << "\n";
    else if (!series.bound_satisfied)
        std::cerr << "scan: dispersion bound violated at t = " << fmt17(series.first_violation_t)
                  << "\n";
    return series.bound_satisfied ? 0 : 1;
}

int run_fit(const std::string& in_path, double t_min, const std::string& column, bool running_max) {
    std::ifstream in(in_path);
    if (!in) throw std::invalid_argument("fit: cannot open input file '" + in_path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("fit: empty input file");

    std::vector<std::string> header;
    {
        std::stringstream h(line);
        std::string item;
        while (std::getline(h, item, ',')) header.push_back(item);
    }
    int col = -1;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) col = static_cast<int>(i);
    if (col <= 0) throw std::invalid_argument("fit: no column named '" + column + "' in input");

    std::vector<std::pair<double, double>> series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string item;
        std::vector<double> fields;
        while (std::getline(row, item, ',')) fields.push_back(std::stod(item));
        if (static_cast<int>(fields.size()) <= col)
            throw std::invalid_argument("fit: short row in input");
        series.emplace_back(fields[0], fields[col]);
    }
    if (running_max) series = running_max_envelope(series);
    const DecayFit fit = fit_decay_exponent(series, t_min);
    std::cout << json{{"exponent", fit.exponent}, {"log_intercept", fit.log_intercept},
                      {"max_residual", fit.max_residual}, {"points_used", fit.points_used},
                      {"column", column}}
                     .dump()
              << "\n";
    return 0;
}

int run_no_dispersion(const std::string& graph_name, double t_max, int points, int source,
                      bool as_json) {
    if (!(t_max > 0.0)) throw std::invalid_argument("no-dispersion: need --t-max > 0");
    if (points < 2) throw std::invalid_argument("no-dispersion: need --points >= 2");
    const FiniteGraph g = load_graph(graph_name);
    const Spectrum s = eigendecompose(hamiltonian_matrix(g));

    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) grid[i] = t_max * i / (points - 1);
    const NoDispersionReport rep = finite_no_dispersion(g, s, grid, source);

    if (as_json) {
        std::cout << json{{"graph", graph_name}, {"k", rep.k}, {"bound", rep.bound},
                          {"min_inf_norm", rep.min_inf_norm}, {"min_inf_norm_t", rep.min_inf_norm_t},
                          {"max_return_amplitude", rep.max_return_amplitude},
                          {"max_return_t", rep.max_return_t}, {"pass", rep.pass}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "no-dispersion " << graph_name << "  k=" << rep.k
                  << "  bound=" << fmt17(rep.bound) << "\n";
        std::cout << "  min ||psi_t||_inf     = " << fmt17(rep.min_inf_norm) << " at t = "
                  << fmt17(rep.min_inf_norm_t) << "\n";
        std::cout << "  max return amplitude  = " << fmt17(rep.max_return_amplitude) << " at t = "
                  << fmt17(rep.max_return_t) << "\n";
        std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
    }
    return rep.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact propagators on lattice x finite-crystal product graphs"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable reports");

    auto* cmd_bessel = app.add_subcommand("bessel", "evaluate J_nu(t) with oracle cross-checks");
    int b_nu = 0;
    double b_t = 0.0;
    int b_nodes = 0;
    cmd_bessel->add_option("--nu", b_nu, "integer order")->required();
    cmd_bessel->add_option("--t", b_t, "argument, >= 0")->required();
    cmd_bessel->add_option("--nodes", b_nodes, "quadrature nodes (default: auto)");

    auto* cmd_kernel = app.add_subcommand("kernel", "evaluate the closed-form propagator kernel");
    std::string k_graph, k_offset;
    int k_d = 1, k_p = 0, k_q = 0;
    double k_t = 1.0;
    bool k_block = false, k_spectrum = false;
    cmd_kernel->add_option("--graph", k_graph, "spec file or built-in name")->required();
    cmd_kernel->add_option("--d", k_d, "lattice dimension")->required()->check(CLI::PositiveNumber);
    cmd_kernel->add_option("--t", k_t, "time")->required();
    cmd_kernel->add_option("--offset", k_offset, "comma-separated n1,...,nd (default zeros)");
    cmd_kernel->add_option("--p", k_p, "target crystal vertex");
    cmd_kernel->add_option("--q", k_q, "source crystal vertex");
    cmd_kernel->add_flag("--block", k_block, "dump the full offset block as JSON");
    cmd_kernel->add_flag("--dump-spectrum", k_spectrum, "dump the crystal spectrum as JSON");

    auto* cmd_verify = app.add_subcommand("verify", "three-way kernel/oracle/quadrature comparison");
    std::string v_graph;
    int v_d = 1, v_L = -1, v_probes = 50, v_quad = 20;
    double v_t = 1.0;
    std::uint64_t v_seed = 1;
    cmd_verify->add_option("--graph", v_graph)->required();
    cmd_verify->add_option("--d", v_d)->required()->check(CLI::PositiveNumber);
    cmd_verify->add_option("--t", v_t)->required();
    cmd_verify->add_option("--L", v_L, "truncation radius (default ceil(2|t|)+25)");
    cmd_verify->add_option("--probes", v_probes, "random offsets to probe");
    cmd_verify->add_option("--quad-cases", v_quad, "fiber-quadrature spot checks");
    cmd_verify->add_option("--seed", v_seed, "probe RNG seed");

    auto* cmd_scan = app.add_subcommand("scan", "sup-norm decay series over a log-spaced grid");
    std::string s_graph, s_out;
    int s_d = 1, s_points = 0;
    double s_tmin = 0.1, s_tmax = 500.0;
    cmd_scan->add_option("--graph", s_graph)->required();
    cmd_scan->add_option("--d", s_d)->required()->check(CLI::PositiveNumber);
    cmd_scan->add_option("--t-min", s_tmin)->required();
    cmd_scan->add_option("--t-max", s_tmax)->required();
    cmd_scan->add_option("--points", s_points, "grid size (default: 32 per decade)");
    cmd_scan->add_option("--out", s_out, "CSV path (default: stdout)");

    auto* cmd_fit = app.add_subcommand("fit", "fit a decay exponent to a scan CSV");
    std::string f_in, f_column = "envelope";
    double f_tmin = 10.0;
    bool f_running_max = false;
    cmd_fit->add_option("--in", f_in)->required();
    cmd_fit->add_option("--t-min", f_tmin);
    cmd_fit->add_option("--column", f_column, "CSV column to fit (default envelope)");
    cmd_fit->add_flag("--running-max", f_running_max, "fit the suffix-max envelope of the column");

    auto* cmd_nd = app.add_subcommand("no-dispersion", "finite-crystal inf-norm floor check");
    std::string n_graph;
    double n_tmax = 100.0;
    int n_points = 2001, n_source = 0;
    cmd_nd->add_option("--graph", n_graph)->required();
    cmd_nd->add_option("--t-max", n_tmax);
    cmd_nd->add_option("--points", n_points);
    cmd_nd->add_option("--source", n_source);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_bessel->parsed()) return run_bessel(b_nu, b_t, b_nodes, as_json);
        if (cmd_kernel->parsed())
            return run_kernel(k_graph, k_d, k_t, k_offset, k_p, k_q, k_block, k_spectrum, as_json);
        if (cmd_verify->parsed())
            return run_verify(v_graph, v_d, v_t, v_L, v_probes, v_quad, v_seed, as_json);
        if (cmd_scan->parsed()) return run_scan(s_graph, s_d, s_tmin, s_tmax, s_points, s_out, as_json);
        if (cmd_fit->parsed()) return run_fit(f_in, f_tmin, f_column, f_running_max);
        if (cmd_nd->parsed()) return run_no_dispersion(n_graph, n_tmax, n_points, n_source, as_json);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
