#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tstein/solvers.hpp"
#include "tstein/spectral.hpp"

namespace tstein::cli {

/// Process exit codes; a stable contract for scripts.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1, ///< bad arguments, unreadable or malformed files, shape mismatch
    kExitNotUnique = 2,
    kExitNoConvergence = 3,
    kExitSingularPencil = 4,
};

struct AnalyzeArgs {
    std::string a_path;
    std::string b_path;
    double tol = kSpectralTol;
    bool json = false;
};

struct SolveArgs {
    std::string a_path;
    std::string b_path;
    std::string c_path;
    std::string method = "auto"; ///< direct | smith | auto
    int r = 2;
    double tol = 1e-12;
    std::size_t max_iter = 200;
    double auto_threshold = 0.95;
    double spectral_tol = kSpectralTol;
    std::string out; ///< solution file; skipped when empty
    bool json = false;
};

struct GenArgs {
    std::size_t m = 0;
    std::size_t n = 0;
    double rho = 0.5;
    std::uint64_t seed = 0;
    std::string out_prefix;
};

struct BenchArgs {
    std::vector<std::string> sizes{"4", "8", "16"}; ///< "N" (square) or "MxN"
    std::vector<double> rhos{0.5, 0.9};
    std::vector<int> rs{2, 3, 4};
    std::uint64_t seed = 1;
    double tol = 1e-12;
    std::size_t max_iter = 200;
};

/// Shared by `solve` and `sylvester`.
SolveOptions make_solve_options(const SolveArgs& args);

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_sylvester(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

/// Seeded instance used by `gen`: A, B, C of shape m x n with rho(A^T B) = rho.
struct Instance {
    ComplexMatrix a, b, c;
};
Instance generate_instance(std::size_t m, std::size_t n, double rho, std::uint64_t seed);

} // namespace tstein::cli
