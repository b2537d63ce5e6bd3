#pragma once

#include <complex>
#include <random>

#include "cqed/operators.hpp"

namespace cqed::test {

inline Matrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
    return m;
}

// Random density matrix: G G^dag / Tr.
inline Matrix random_density(int dim, std::mt19937_64& rng) {
    const Matrix g = random_matrix(dim, dim, rng);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace();
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace cqed::test
