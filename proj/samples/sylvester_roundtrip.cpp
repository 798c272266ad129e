#include <cstdio>
#include <random>

#include "tstein/tstein.hpp"

int main() {
    using namespace tstein;
    std::mt19937_64 rng(7);
    const std::size_t n = 4;
    const ComplexMatrix a = random_matrix(n, n, rng);
    const ComplexMatrix b = random_matrix(n, n, rng);
    const ComplexMatrix c = random_matrix(n, n, rng);

    const auto sol = solve_t_sylvester(a, b, c);
    const auto& cv = sol.conversion;
    std::printf("scalars a = %.4f%+.4fi, b = %.4f%+.4fi (smin %.3e)\n", cv.a.real(), cv.a.imag(), cv.b.real(),
                cv.b.imag(), cv.smin);
    std::printf("method %s, converted residual %.3e, original residual %.3e\n", to_string(sol.result.method),
                sol.stein_residual, sol.result.residual);
}
