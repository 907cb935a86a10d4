#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace remeta {

/// Dense symmetric matrix in row-major storage.
struct SymmetricMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    explicit SymmetricMatrix(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    double trace() const noexcept;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted descending.
/// Throws NumericalError if the off-diagonal mass does not vanish within `max_sweeps`.
std::vector<double> symmetric_eigenvalues(SymmetricMatrix m, int max_sweeps = 64);

}  // namespace remeta
