#include <cstdio>
#include <random>

#include "tstein/tstein.hpp"

int main() {
    using namespace tstein;
    std::mt19937_64 rng(42);
    const std::size_t m = 5, n = 3;
    const ComplexMatrix a = random_matrix(m, n, rng);
    const ComplexMatrix b = scale_to_radius(a, random_matrix(m, n, rng), 0.8);
    const ComplexMatrix c = random_matrix(m, n, rng);

    const auto direct = solve_direct(a, b, c);
    std::printf("direct      residual %.3e\n", direct.residual);
    for (int r = 2; r <= 5; ++r) {
        const auto s = smith_solve(a, b, c, {r, 1e-13, 200});
        std::printf("smith r=%d  iterations %2zu  products %3zu  residual %.3e  |X - X_direct| %.3e\n", r,
                    s.iterations, s.multiplications, s.residual, frobenius_norm(s.x - direct.x));
    }
}
