// x = -x + c has the unique solution x = c/2, yet the Stein equation
// obtained by substituting the equation into itself reads x = x + c - c.
// Smith-type iterations work on that embedded form and cannot recover x.

#include <iostream>

#include "tstein/tstein.hpp"

int main() {
    using namespace tstein;
    const ComplexMatrix a{{-1}}, b{{1}}, c{{2}};

    const auto report = solvability_report(a, b);
    std::cout << "uniquely solvable:        " << (report.unique_solvable ? "yes" : "no") << "\n";
    std::cout << "embedded form unique:     " << (stein_embedding_unique(a, b) ? "yes" : "no") << "\n";

    const auto direct = solve_direct(a, b, c);
    std::cout << "direct solution:          " << direct.x(0, 0).real() << "\n";

    try {
        smith_solve(a, b, c);
        std::cout << "smith: converged (unexpected)\n";
        return 1;
    } catch (const SmithNonConvergence& e) {
        std::cout << "smith:                    " << e.what() << "\n";
    }
    return 0;
}
