// Command-line front end: generate test problems, run AMG/Krylov solves,
// inspect coarsening, and emit device-memory plans.
//
// Exit codes: 0 converged (or command succeeded), 1 solver did not
// converge (or numerical failure), 2 usage or I/O error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sparsh/sparsh.hpp"

namespace {

using sparsh::CsrMatrix;
using sparsh::DenseVector;
using sparsh::index_t;

struct ProblemSpec {
    enum class Kind { poisson2d, convdiff2d };
    Kind kind = Kind::poisson2d;
    index_t nx = 0;
    index_t ny = 0;
    double bx = 0.0;
    double by = 0.0;
    double c = 0.0;
};

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
}

long parse_long(const std::string &s, const std::string &what) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception &) {
        pos = std::string::npos;
    }
    if (pos != s.size() || s.empty())
        throw std::invalid_argument("bad " + what + " '" + s + "'");
    return v;
}

double parse_double(const std::string &s, const std::string &what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception &) {
        pos = std::string::npos;
    }
    if (pos != s.size() || s.empty())
        throw std::invalid_argument("bad " + what + " '" + s + "'");
    return v;
}

ProblemSpec parse_problem(const std::string &text) {
    const std::string usage =
        " (expected poisson2d:NXxNY or convdiff2d:NXxNY:BX,BY,C)";
    const auto parts = split(text, ':');
    if (parts.size() < 2)
        throw std::invalid_argument("bad --problem '" + text + "'" + usage);
    ProblemSpec spec;
    if (parts[0] == "poisson2d") {
        if (parts.size() != 2)
            throw std::invalid_argument("bad --problem '" + text + "'" + usage);
        spec.kind = ProblemSpec::Kind::poisson2d;
    } else if (parts[0] == "convdiff2d") {
        if (parts.size() != 3)
            throw std::invalid_argument("bad --problem '" + text + "'" + usage);
        spec.kind = ProblemSpec::Kind::convdiff2d;
        const auto coeffs = split(parts[2], ',');
        if (coeffs.size() != 3)
            throw std::invalid_argument("bad --problem '" + text + "'" + usage);
        spec.bx = parse_double(coeffs[0], "convection bx");
        spec.by = parse_double(coeffs[1], "convection by");
        spec.c = parse_double(coeffs[2], "reaction c");
    } else {
        throw std::invalid_argument("bad --problem '" + text + "'" + usage);
    }
    const auto dims = split(parts[1], 'x');
    if (dims.size() != 2)
        throw std::invalid_argument("bad --problem '" + text + "'" + usage);
    spec.nx = static_cast<index_t>(parse_long(dims[0], "grid dimension"));
    spec.ny = static_cast<index_t>(parse_long(dims[1], "grid dimension"));
    return spec;
}

CsrMatrix build_problem(const ProblemSpec &spec) {
    return spec.kind == ProblemSpec::Kind::poisson2d
               ? sparsh::poisson2d(spec.nx, spec.ny)
               : sparsh::convdiff2d(spec.nx, spec.ny, spec.bx, spec.by, spec.c);
}

CsrMatrix load_system(const std::string &problem, const std::string &matrix) {
    if (problem.empty() == matrix.empty())
        throw std::invalid_argument(
            "exactly one of --problem and --matrix is required");
    if (!matrix.empty()) return sparsh::read_matrix_market(matrix);
    return build_problem(parse_problem(problem));
}

DenseVector build_rhs(const std::string &mode, index_t n, unsigned seed) {
    if (mode == "ones") return sparsh::rhs_ones(n);
    if (mode == "random") return sparsh::rhs_random(n, seed);
    if (mode.rfind("file:", 0) == 0) {
        DenseVector v = sparsh::read_vector(mode.substr(5));
        if (v.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument(
                "rhs file has " + std::to_string(v.size()) +
                " entries but the system has " + std::to_string(n));
        return v;
    }
    throw std::invalid_argument("bad --rhs '" + mode +
                                "' (expected ones, random or file:PATH)");
}

void write_report_csv(const std::string &path,
                      const sparsh::ConvergenceReport &rep) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "iter,residual_l2,cumulative_seconds\n";
    char num[40];
    for (std::size_t k = 0; k < rep.residual_history.size(); ++k) {
        std::snprintf(num, sizeof num, "%.17g", rep.residual_history[k]);
        out << k << ',' << num << ',';
        std::snprintf(num, sizeof num, "%.9g", rep.time_history[k]);
        out << num << '\n';
    }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void print_levels(std::ostream &out, const sparsh::HierarchyStats &s) {
    out << std::setw(6) << "level" << std::setw(12) << "size" << std::setw(14)
        << "nnz" << std::setw(9) << "ratio" << '\n';
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
        out << std::setw(6) << i << std::setw(12) << s.levels[i].size
            << std::setw(14) << s.levels[i].nnz;
        if (i == 0) {
            out << std::setw(9) << "-";
        } else {
            const double ratio = static_cast<double>(s.levels[i - 1].size) /
                                 static_cast<double>(s.levels[i].size);
            out << std::setw(9) << std::fixed << std::setprecision(2) << ratio
                << std::defaultfloat;
        }
        out << '\n';
    }
    out << "operator complexity: " << std::setprecision(4)
        << s.operator_complexity << '\n';
    out << "grid complexity:     " << std::setprecision(4) << s.grid_complexity
        << '\n';
    if (s.coarsening_stalled)
        out << "warning: coarsening stalled above the coarse-size target\n";
}

// --- option bundles -------------------------------------------------------

struct SolverOpts {
    std::string problem;
    std::string matrix;
    std::string solver = "amg";
    std::string coarsening = "node_hem";
    std::string smoother = "gs_symmetric";
    std::string coarse_solver = "direct";
    double omega = sparsh::default_jacobi_omega;
    int pre = 6;
    int post = 6;
    long coarse_target = 500;
    int max_levels = 10;
    double tol = 1e-8;
    int max_iters = 1000;
    std::string rhs = "ones";
    unsigned seed = 42;
    std::string out;
    int threads = 1;
    std::string config;
    std::string scheme = "both";

    sparsh::SolverConfig to_config() const {
        sparsh::SolverConfig cfg;
        cfg.coarsening = sparsh::coarsening_from_string(coarsening);
        cfg.smoother = sparsh::smoother_from_string(smoother, omega);
        cfg.pre_sweeps = pre;
        cfg.post_sweeps = post;
        cfg.coarse_target = static_cast<index_t>(coarse_target);
        cfg.max_levels = max_levels;
        cfg.tol = tol;
        cfg.max_iters = max_iters;
        cfg.solver = sparsh::solver_from_string(solver);
        cfg.coarse_solver = sparsh::coarse_solver_from_string(coarse_solver);
        cfg.validate();
        return cfg;
    }
};

void add_system_flags(CLI::App *cmd, SolverOpts &o) {
    cmd->add_option("--problem", o.problem,
                    "generated system: poisson2d:NXxNY or convdiff2d:NXxNY:BX,BY,C");
    cmd->add_option("--matrix", o.matrix, "Matrix Market file to load");
    cmd->add_option("--config", o.config,
                    "key=value file; command-line flags win");
}

void add_hierarchy_flags(CLI::App *cmd, SolverOpts &o) {
    cmd->add_option("--coarsening", o.coarsening, "node_hem or edge_hem");
    cmd->add_option("--coarse-target", o.coarse_target,
                    "stop coarsening at this size");
    cmd->add_option("--max-levels", o.max_levels, "hierarchy level cap");
}

// Runs f and maps numerical failures (divergence, singular coarse
// factorization) to exit code 1.
template <typename Fn> int numeric_section(Fn &&f) {
    try {
        return f();
    } catch (const std::runtime_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_run(const SolverOpts &o) {
    const sparsh::SolverConfig cfg = o.to_config();
    sparsh::set_thread_count(o.threads);
    CsrMatrix A = load_system(o.problem, o.matrix);
    const DenseVector b = build_rhs(o.rhs, A.nrows(), o.seed);

    sparsh::SolveResult res;
    std::optional<sparsh::HierarchyStats> hstats;
    double setup_seconds = 0.0;
    const int code = numeric_section([&] {
        const sparsh::CycleParams params = sparsh::CycleParams::from(cfg);
        std::optional<sparsh::Hierarchy> h;
        const bool needs_hierarchy = cfg.solver == sparsh::SolverKind::amg ||
                                     cfg.solver == sparsh::SolverKind::pcg ||
                                     cfg.solver == sparsh::SolverKind::pbicgstab;
        if (needs_hierarchy) {
            const auto t0 = std::chrono::steady_clock::now();
            h.emplace(A, cfg);
            setup_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
            hstats = sparsh::stats(*h);
            sparsh::log_info("setup: " + std::to_string(h->nlevels()) +
                             " levels in " + std::to_string(setup_seconds) + " s");
        }
        switch (cfg.solver) {
        case sparsh::SolverKind::amg:
            res = sparsh::amg_solve(*h, b, cfg.tol, cfg.max_iters, params);
            break;
        case sparsh::SolverKind::cg:
            res = sparsh::cg(A, b, cfg.tol, cfg.max_iters);
            break;
        case sparsh::SolverKind::pcg:
            res = sparsh::pcg(A, b, sparsh::make_amg_preconditioner(*h, params),
                              cfg.tol, cfg.max_iters);
            break;
        case sparsh::SolverKind::bicgstab:
            res = sparsh::bicgstab(A, b, cfg.tol, cfg.max_iters);
            break;
        case sparsh::SolverKind::pbicgstab:
            res = sparsh::pbicgstab(A, b,
                                    sparsh::make_amg_preconditioner(*h, params),
                                    cfg.tol, cfg.max_iters);
            break;
        }
        return 0;
    });
    if (code != 0) return code;

    if (!o.out.empty()) write_report_csv(o.out, res.report);

    std::cout << "solver: " << to_string(cfg.solver) << '\n';
    if (hstats) print_levels(std::cout, *hstats);
    std::cout << std::setprecision(6) << std::fixed
              << "setup seconds: " << setup_seconds << '\n'
              << "solve seconds: " << res.report.wall_time << '\n'
              << std::defaultfloat
              << "iterations: " << res.report.iterations << '\n'
              << "termination: " << to_string(res.report.termination) << '\n'
              << "final residual: " << std::setprecision(6)
              << res.report.residual_history.back()
              << " (true " << res.report.true_residual << ")\n";

    if (!res.report.converged()) {
        std::cerr << "solver did not converge: "
                  << to_string(res.report.termination) << '\n';
        return 1;
    }
    return 0;
}

int cmd_gen(const std::string &problem, const std::string &out) {
    const CsrMatrix A = build_problem(parse_problem(problem));
    if (out.empty()) {
        sparsh::write_matrix_market(A, std::cout);
    } else {
        sparsh::write_matrix_market(A, out);
        sparsh::log_info("wrote " + std::to_string(A.nrows()) + "x" +
                         std::to_string(A.ncols()) + " matrix (" +
                         std::to_string(A.nnz()) + " nonzeros) to " + out);
    }
    return 0;
}

int cmd_coarsen_info(const SolverOpts &o) {
    sparsh::SolverConfig cfg = o.to_config();
    // Only the level structure is reported; skip the coarse factorization.
    cfg.coarse_solver = sparsh::CoarseSolverKind::cg;
    CsrMatrix A = load_system(o.problem, o.matrix);
    return numeric_section([&] {
        const sparsh::Hierarchy h(std::move(A), cfg);
        print_levels(std::cout, sparsh::stats(h));
        return 0;
    });
}

int cmd_memplan(const SolverOpts &o) {
    sparsh::SolverConfig cfg = o.to_config();
    cfg.coarse_solver = sparsh::CoarseSolverKind::cg; // byte model needs no LU
    if (o.scheme != "ci" && o.scheme != "mi" && o.scheme != "both")
        throw std::invalid_argument("bad --scheme '" + o.scheme +
                                    "' (expected ci, mi or both)");
    CsrMatrix A = load_system(o.problem, o.matrix);
    return numeric_section([&] {
        const sparsh::Hierarchy h(std::move(A), cfg);
        const sparsh::CycleParams params = sparsh::CycleParams::from(cfg);
        std::vector<sparsh::MemoryPlan> plans;
        if (o.scheme != "mi") plans.push_back(sparsh::plan_ci(h, params));
        if (o.scheme != "ci") plans.push_back(sparsh::plan_mi(h, params));

        std::cout << std::setw(7) << "scheme" << std::setw(14) << "peak_bytes"
                  << std::setw(16) << "resident_bytes" << std::setw(17)
                  << "transfer_bytes" << '\n';
        for (const auto &p : plans)
            std::cout << std::setw(7) << to_string(p.scheme) << std::setw(14)
                      << p.peak_device_bytes << std::setw(16)
                      << p.resident_setup_bytes << std::setw(17)
                      << p.per_cycle_transfer_bytes << '\n';
        if (plans.size() == 2 && plans[1].peak_device_bytes > 0 &&
            plans[1].per_cycle_transfer_bytes > 0) {
            std::cout << std::setprecision(3) << "peak(CI)/resident(MI): "
                      << static_cast<double>(plans[0].peak_device_bytes) /
                             static_cast<double>(plans[1].resident_setup_bytes)
                      << '\n'
                      << "transfer(CI)/transfer(MI): "
                      << static_cast<double>(plans[0].per_cycle_transfer_bytes) /
                             static_cast<double>(plans[1].per_cycle_transfer_bytes)
                      << '\n';
        }

        if (!o.out.empty()) {
            std::ofstream csv(o.out);
            if (!csv)
                throw std::runtime_error("cannot open '" + o.out +
                                         "' for writing");
            csv << "scheme,phase,kind,object,bytes,level\n";
            for (const auto &p : plans)
                for (const auto &e : p.events)
                    csv << to_string(p.scheme) << ',' << to_string(e.phase)
                        << ',' << to_string(e.kind) << ',' << e.object << ','
                        << e.bytes << ',' << e.level << '\n';
        }
        return 0;
    });
}

// --- key=value config files ----------------------------------------------

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::pair<std::string, std::string>>
read_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key=value, got '" + line +
                                        "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": empty key");
        pairs.emplace_back(key, value);
    }
    return pairs;
}

/// Applies config-file values for options the command line left unset
/// (precedence: flags, then file, then defaults).
void apply_config(CLI::App *cmd, const std::string &path) {
    std::vector<std::string> args;
    for (const auto &[key, value] : read_config_file(path)) {
        if (key == "config")
            throw std::invalid_argument(path + ": config files cannot nest");
        CLI::Option *opt = cmd->get_option_no_throw("--" + key);
        if (!opt)
            throw std::invalid_argument(path + ": unknown key '" + key + "'");
        if (opt->count() > 0) continue;
        args.push_back("--" + key);
        args.push_back(value);
    }
    if (args.empty()) return;
    std::reverse(args.begin(), args.end()); // parse(vector) wants reversed args
    cmd->parse(args);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"sparsh: aggregation-based algebraic multigrid solver toolkit"};
    app.require_subcommand(1);

    SolverOpts run_opts;
    SolverOpts info_opts;
    SolverOpts plan_opts;
    std::string gen_problem, gen_out;

    CLI::App *gen = app.add_subcommand("gen", "generate a test matrix");
    gen->add_option("--problem", gen_problem,
                    "poisson2d:NXxNY or convdiff2d:NXxNY:BX,BY,C")
        ->required();
    gen->add_option("--out", gen_out,
                    "Matrix Market output path (default: stdout)");

    CLI::App *run = app.add_subcommand("run", "solve a system");
    add_system_flags(run, run_opts);
    add_hierarchy_flags(run, run_opts);
    run->add_option("--solver", run_opts.solver,
                    "amg, cg, pcg, bicgstab or pbicgstab");
    run->add_option("--smoother", run_opts.smoother,
                    "jacobi, gs_forward, gs_backward or gs_symmetric");
    run->add_option("--omega", run_opts.omega, "Jacobi damping weight");
    run->add_option("--pre", run_opts.pre, "pre-smoothing sweeps");
    run->add_option("--post", run_opts.post, "post-smoothing sweeps");
    run->add_option("--coarse-solver", run_opts.coarse_solver, "direct or cg");
    run->add_option("--tol", run_opts.tol, "absolute residual target");
    run->add_option("--max-iters", run_opts.max_iters,
                    "iteration/cycle budget");
    run->add_option("--rhs", run_opts.rhs, "ones, random or file:PATH");
    run->add_option("--seed", run_opts.seed, "seed for --rhs random");
    run->add_option("--out", run_opts.out, "convergence CSV path");
    run->add_option("--threads", run_opts.threads, "kernel thread count")
        ->check(CLI::PositiveNumber);

    CLI::App *info = app.add_subcommand("coarsen-info",
                                        "report the coarsening hierarchy");
    add_system_flags(info, info_opts);
    add_hierarchy_flags(info, info_opts);

    CLI::App *plan = app.add_subcommand("memplan",
                                        "device-memory plan for CI/MI schemes");
    add_system_flags(plan, plan_opts);
    add_hierarchy_flags(plan, plan_opts);
    plan->add_option("--scheme", plan_opts.scheme, "ci, mi or both");
    plan->add_option("--out", plan_opts.out, "event-trace CSV path");

    try {
        app.parse(argc, argv);
        if (run->parsed() && !run_opts.config.empty())
            apply_config(run, run_opts.config);
        if (info->parsed() && !info_opts.config.empty())
            apply_config(info, info_opts.config);
        if (plan->parsed() && !plan_opts.config.empty())
            apply_config(plan, plan_opts.config);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_problem, gen_out);
        if (run->parsed()) return cmd_run(run_opts);
        if (info->parsed()) return cmd_coarsen_info(info_opts);
        return cmd_memplan(plan_opts);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
