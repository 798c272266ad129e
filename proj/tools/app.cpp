#include "app.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace tstein::cli {

namespace {

void add_solver_flags(CLI::App* cmd, SolveArgs& args) {
    cmd->add_option("A", args.a_path, "Matrix Market file for A")->required();
    cmd->add_option("B", args.b_path, "Matrix Market file for B")->required();
    cmd->add_option("C", args.c_path, "Matrix Market file for C")->required();
    cmd->add_option("--method", args.method, "direct, smith or auto")
        ->check(CLI::IsMember({"direct", "smith", "auto"}))
        ->capture_default_str();
    cmd->add_option("--r", args.r, "Smith order r >= 2")->capture_default_str();
    cmd->add_option("--tol", args.tol, "Smith step tolerance")->capture_default_str();
    cmd->add_option("--max-iter", args.max_iter, "Smith iteration cap")->capture_default_str();
    cmd->add_option("--auto-threshold", args.auto_threshold, "auto uses Smith below this rho(A^T B)")
        ->capture_default_str();
    cmd->add_option("--spectral-tol", args.spectral_tol, "tolerance of the solvability test")->capture_default_str();
    cmd->add_option("--out", args.out, "write the solution (or best iterate) here");
    cmd->add_flag("--json", args.json, "emit a JSON report");
}

} // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solver for the T-Stein equation X = A X^T B + C", argv.empty() ? "tstein" : argv.front()};
    app.require_subcommand(1);

    AnalyzeArgs analyze;
    auto* an = app.add_subcommand("analyze", "Spectral analysis and unique-solvability verdicts");
    an->add_option("A", analyze.a_path)->required();
    an->add_option("B", analyze.b_path)->required();
    an->add_option("--tol", analyze.tol, "reciprocal-pair tolerance")->capture_default_str();
    an->add_flag("--json", analyze.json, "emit a JSON report");

    SolveArgs solve_args;
    add_solver_flags(app.add_subcommand("solve", "Solve X = A X^T B + C"), solve_args);
    SolveArgs syl_args;
    add_solver_flags(app.add_subcommand("sylvester", "Solve A X + X^T B = C"), syl_args);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Write a seeded random instance");
    g->add_option("--m", gen.m)->required();
    g->add_option("--n", gen.n)->required();
    g->add_option("--rho", gen.rho, "target rho(A^T B)")->capture_default_str();
    g->add_option("--seed", gen.seed)->capture_default_str();
    g->add_option("--out-prefix", gen.out_prefix, "files are <prefix>A.mtx, <prefix>B.mtx, <prefix>C.mtx")
        ->required();

    BenchArgs bench;
    auto* be = app.add_subcommand("bench", "Compare r-Smith variants; CSV on stdout");
    be->add_option("--sizes", bench.sizes, "N or MxN, comma separated")->delimiter(',')->capture_default_str();
    be->add_option("--rhos", bench.rhos)->delimiter(',')->capture_default_str();
    be->add_option("--rs", bench.rs)->delimiter(',')->capture_default_str();
    be->add_option("--seed", bench.seed)->capture_default_str();
    be->add_option("--tol", bench.tol)->capture_default_str();
    be->add_option("--max-iter", bench.max_iter)->capture_default_str();

    std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
    std::reverse(args.begin(), args.end()); // CLI11 consumes a reversed vector
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (an->parsed()) return cmd_analyze(analyze, out, err);
    if (app.got_subcommand("solve")) return cmd_solve(solve_args, out, err);
    if (app.got_subcommand("sylvester")) return cmd_sylvester(syl_args, out, err);
    if (g->parsed()) return cmd_gen(gen, out, err);
    return cmd_bench(bench, out, err);
}

} // namespace tstein::cli
