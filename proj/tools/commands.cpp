#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>

#include "report.hpp"
#include "tstein/io.hpp"
#include "tstein/random.hpp"
#include "tstein/sylvester.hpp"

namespace tstein::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string complex_text(Complex z) {
    std::string s = format_double(z.real());
    if (z.imag() != 0.0) s += (z.imag() < 0.0 ? " - " : " + ") + format_double(std::abs(z.imag())) + "i";
    return s;
}

void require_same_shape(const ComplexMatrix& x, const ComplexMatrix& y, const std::string& xn, const std::string& yn) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw ShapeError("shape mismatch: " + xn + " is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                         " but " + yn + " is " + std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
}

Json solvability_json(const SolvabilityReport& r) {
    Json pairs = Json::array();
    for (const auto& [i, j] : r.reciprocal_violations) pairs.push_back(Json::array({i, j}));
    return Json{{"eigenvalues_AtB", complex_list_json(r.eigenvalues)},
                {"reciprocal_violations", std::move(pairs)},
                {"minus_one_multiplicity", r.minus_one_multiplicity},
                {"unique_solvable", r.unique_solvable},
                {"tolerance", r.tolerance_used}};
}

Json result_json(const SolveResult& r) {
    return Json{{"method", to_string(r.method)},   {"converged", r.converged},
                {"iterations", r.iterations},      {"multiplications", r.multiplications},
                {"residual", r.residual},          {"x", matrix_json(r.x)}};
}

void print_matrix(std::ostream& out, const std::string& name, const ComplexMatrix& m) {
    out << name << " (" << m.rows() << "x" << m.cols() << "):\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << "  ";
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "  " : "") << complex_text(m(i, j));
        out << "\n";
    }
}

void print_row(std::ostream& out, const std::string& key, const std::string& value) {
    out << std::left << std::setw(26) << key << value << "\n";
}

void print_solvability(std::ostream& out, const SolvabilityReport& r) {
    std::string eig;
    for (const auto& v : r.eigenvalues) eig += (eig.empty() ? "" : ", ") + complex_text(v);
    print_row(out, "eigenvalues of A^T B", "[" + eig + "]");
    std::string pairs;
    for (const auto& [i, j] : r.reciprocal_violations)
        pairs += (pairs.empty() ? "" : ", ") + std::string("(") + std::to_string(i) + "," + std::to_string(j) + ")";
    print_row(out, "reciprocal violations", pairs.empty() ? "none" : pairs);
    print_row(out, "multiplicity of -1", std::to_string(r.minus_one_multiplicity));
    print_row(out, "T-Stein uniquely solvable", r.unique_solvable ? "yes" : "no");
}

void print_result(std::ostream& out, const SolveResult& r) {
    print_row(out, "method", to_string(r.method));
    print_row(out, "converged", r.converged ? "yes" : "no");
    print_row(out, "iterations", std::to_string(r.iterations));
    print_row(out, "multiplications", std::to_string(r.multiplications));
    print_row(out, "residual", format_double(r.residual));
}

MethodChoice parse_method(const std::string& s) {
    if (s == "direct") return MethodChoice::direct;
    if (s == "smith") return MethodChoice::smith;
    if (s == "auto") return MethodChoice::automatic;
    throw InvalidInput("unknown method '" + s + "' (expected direct, smith or auto)");
}

struct Triple {
    ComplexMatrix a, b, c;
};

Triple load_triple(const SolveArgs& args) {
    Triple t{load_matrix_market(args.a_path), load_matrix_market(args.b_path), load_matrix_market(args.c_path)};
    require_same_shape(t.a, t.b, "A", "B");
    require_same_shape(t.a, t.c, "A", "C");
    return t;
}

Json solve_echo(const std::string& command, const SolveArgs& args) {
    return Json{{"command", command},
                {"a", args.a_path},
                {"b", args.b_path},
                {"c", args.c_path},
                {"method", args.method},
                {"r", args.r},
                {"tol", args.tol},
                {"max_iter", args.max_iter},
                {"auto_threshold", args.auto_threshold},
                {"spectral_tol", args.spectral_tol},
                {"out", args.out}};
}

void emit(std::ostream& out, const Json& report) { out << dump_json(report) << "\n"; }

// Exceptions that escape a command body: I/O, parse, shape and argument
// errors all map to the usage code.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: parse failure: " << e.what() << "\n";
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitUsage;
}

} // namespace

SolveOptions make_solve_options(const SolveArgs& args) {
    SolveOptions o;
    o.method = parse_method(args.method);
    o.smith.r = args.r;
    o.smith.tol = args.tol;
    o.smith.max_iter = args.max_iter;
    o.smith.validate();
    if (!(args.auto_threshold > 0.0)) throw InvalidInput("auto threshold must be positive");
    o.auto_threshold = args.auto_threshold;
    return o;
}

Instance generate_instance(std::size_t m, std::size_t n, double rho, std::uint64_t seed) {
    if (m == 0 || n == 0) throw InvalidInput("dimensions must be positive");
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw InvalidInput("rho must be finite and non-negative");
    std::mt19937_64 rng(seed);
    Instance inst;
    inst.a = random_matrix(m, n, rng);
    inst.b = random_matrix(m, n, rng);
    inst.c = random_matrix(m, n, rng);
    inst.b = scale_to_radius(inst.a, inst.b, rho);
    return inst;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!(args.tol > 0.0)) throw InvalidInput("--tol must be positive");
        const auto t0 = Clock::now();
        const auto a = load_matrix_market(args.a_path);
        const auto b = load_matrix_market(args.b_path);
        require_same_shape(a, b, "A", "B");
        const auto report = solvability_report(a, b, args.tol);
        const auto spectrum = operator_spectrum(a, b);
        const bool embedded = stein_embedding_unique(a, b, args.tol);
        const double rho = spectral_radius(transpose(a) * b);
        const double elapsed = ms_since(t0);

        if (args.json) {
            Json j{{"schema", kSchemaVersion},
                   {"command", Json{{"command", "analyze"}, {"a", args.a_path}, {"b", args.b_path}, {"tol", args.tol}}},
                   {"m", a.rows()},
                   {"n", a.cols()},
                   {"spectral_radius_AtB", rho},
                   {"solvability", solvability_json(report)},
                   {"operator_spectrum", complex_list_json(spectrum.values)},
                   {"t_stein_unique", report.unique_solvable},
                   {"embedded_stein_unique", embedded},
                   {"timing_ms", elapsed}};
            emit(out, j);
        } else {
            print_row(out, "shape", std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
            print_row(out, "spectral radius of A^T B", format_double(rho));
            print_solvability(out, report);
            print_row(out, "embedded Stein unique", embedded ? "yes" : "no");
            std::string s;
            for (const auto& v : spectrum.values) s += (s.empty() ? "" : ", ") + complex_text(v);
            print_row(out, "operator spectrum", "[" + s + "]");
            print_row(out, "tolerance", format_double(args.tol));
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const auto opts = make_solve_options(args);
        if (!(args.spectral_tol > 0.0)) throw InvalidInput("--spectral-tol must be positive");
        const auto t = load_triple(args);
        Json j{{"schema", kSchemaVersion}, {"command", solve_echo("solve", args)}};
        const auto report = solvability_report(t.a, t.b, args.spectral_tol);
        j["solvability"] = solvability_json(report);

        const auto t0 = Clock::now();
        try {
            const auto res = solve(t.a, t.b, t.c, opts);
            j["timing_ms"] = ms_since(t0);
            j["status"] = "ok";
            j["result"] = result_json(res);
            if (res.converged) j["embedded_residual"] = stein_residual(stein_embed(t.a, t.b, t.c), res.x);
            if (!args.out.empty()) save_matrix_market(args.out, res.x);
            if (args.json) {
                emit(out, j);
            } else {
                print_solvability(out, report);
                print_result(out, res);
                if (args.out.empty()) print_matrix(out, "X", res.x);
                else print_row(out, "solution written to", args.out);
            }
            return kExitOk;
        } catch (const NotUniquelySolvable& e) {
            j["timing_ms"] = ms_since(t0);
            j["status"] = "not_unique";
            j["message"] = e.what();
            j["pivot"] = e.pivot();
            j["solvability"] = solvability_json(e.report());
            if (args.json) emit(out, j);
            else print_solvability(out, e.report());
            err << "error: " << e.what() << "\n";
            return kExitNotUnique;
        } catch (const SmithNonConvergence& e) {
            j["timing_ms"] = ms_since(t0);
            j["status"] = "not_converged";
            j["message"] = e.what();
            j["result"] = result_json(e.best());
            if (!args.out.empty()) save_matrix_market(args.out, e.best().x, "best iterate; iteration did not converge");
            if (args.json) {
                emit(out, j);
            } else {
                print_result(out, e.best());
                if (args.out.empty()) print_matrix(out, "best iterate", e.best().x);
                else print_row(out, "best iterate written to", args.out);
            }
            err << "error: " << e.what() << "\n";
            return kExitNoConvergence;
        }
    });
}

int cmd_sylvester(const SolveArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        SylvesterOptions opts;
        opts.solve = make_solve_options(args);
        const auto t = load_triple(args);
        if (!t.a.is_square()) throw ShapeError("sylvester: matrices must be square");
        Json j{{"schema", kSchemaVersion}, {"command", solve_echo("sylvester", args)}};
        const auto t0 = Clock::now();
        try {
            const auto sol = solve_t_sylvester(t.a, t.b, t.c, opts);
            const auto& cv = sol.conversion;
            j["timing_ms"] = ms_since(t0);
            j["status"] = "ok";
            j["scalars"] = Json{{"a", complex_json(cv.a)}, {"b", complex_json(cv.b)}, {"smin", cv.smin}};
            j["result"] = result_json(sol.result);
            j["t_stein_residual"] = sol.stein_residual;
            if (!args.out.empty()) save_matrix_market(args.out, sol.result.x);
            if (args.json) {
                emit(out, j);
            } else {
                print_row(out, "scalars (a, b)", complex_text(cv.a) + ", " + complex_text(cv.b));
                print_row(out, "smin(aA + bB^T)", format_double(cv.smin));
                print_result(out, sol.result);
                print_row(out, "T-Stein residual", format_double(sol.stein_residual));
                if (args.out.empty()) print_matrix(out, "X", sol.result.x);
                else print_row(out, "solution written to", args.out);
            }
            return kExitOk;
        } catch (const SingularPencil& e) {
            j["status"] = "singular_pencil";
            j["message"] = e.what();
            j["best_smin"] = e.best_smin();
            if (args.json) emit(out, j);
            err << "error: " << e.what() << "\n";
            return kExitSingularPencil;
        } catch (const NotUniquelySolvable& e) {
            j["status"] = "not_unique";
            j["message"] = e.what();
            j["solvability"] = solvability_json(e.report());
            if (args.json) emit(out, j);
            err << "error: " << e.what() << "\n";
            return kExitNotUnique;
        } catch (const SmithNonConvergence& e) {
            j["status"] = "not_converged";
            j["message"] = e.what();
            if (args.json) emit(out, j);
            err << "error: " << e.what() << "\n";
            return kExitNoConvergence;
        }
    });
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (args.out_prefix.empty()) throw InvalidInput("--out-prefix is required");
        const auto inst = generate_instance(args.m, args.n, args.rho, args.seed);
        for (const auto& [name, mat] : {std::pair{"A", &inst.a}, {"B", &inst.b}, {"C", &inst.c}}) {
            const std::string path = args.out_prefix + name + ".mtx";
            save_matrix_market(path, *mat);
            out << path << "\n";
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::vector<std::pair<std::size_t, std::size_t>> shapes;
        for (const auto& s : args.sizes) {
            std::size_t m = 0, n = 0;
            char x = 0, extra = 0;
            const int got = std::sscanf(s.c_str(), "%zu%c%zu%c", &m, &x, &n, &extra);
            if (got == 1) n = m;
            else if (got != 3 || x != 'x') throw InvalidInput("bad size '" + s + "' (expected N or MxN)");
            if (m == 0 || n == 0) throw InvalidInput("bad size '" + s + "'");
            shapes.emplace_back(m, n);
        }
        for (int r : args.rs)
            if (r < 2) throw InvalidInput("every r must be at least 2");

        out << "m,n,rho,r,iterations,multiplications,wall_ms,residual,converged\n";
        std::uint64_t instance = 0;
        for (const auto& [m, n] : shapes) {
            for (double rho : args.rhos) {
                const auto inst = generate_instance(m, n, rho, args.seed + instance++);
                for (int r : args.rs) {
                    SmithConfig cfg{r, args.tol, args.max_iter};
                    const auto t0 = Clock::now();
                    SolveResult res;
                    try {
                        res = smith_solve(inst.a, inst.b, inst.c, cfg);
                    } catch (const SmithNonConvergence& e) {
                        res = e.best();
                    }
                    const double wall = ms_since(t0);
                    char wall_buf[32];
                    std::snprintf(wall_buf, sizeof wall_buf, "%.3f", wall);
                    out << m << "," << n << "," << format_double(rho) << "," << r << "," << res.iterations << ","
                        << res.multiplications << "," << wall_buf << "," << format_double(res.residual) << ","
                        << (res.converged ? 1 : 0) << "\n";
                }
            }
        }
        return static_cast<int>(kExitOk);
    });
}

} // namespace tstein::cli
