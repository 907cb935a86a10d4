#include "remeta/eigen.hpp"

#include "remeta/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace remeta {

double SymmetricMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += a[i * n + i];
    return t;
}

namespace {

double off_diagonal_norm(const SymmetricMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i + 1; j < m.n; ++j) s += m(i, j) * m(i, j);
    return std::sqrt(2.0 * s);
}

double frobenius_norm(const SymmetricMatrix& m) {
    double s = 0.0;
    for (double x : m.a) s += x * x;
    return std::sqrt(s);
}

// Rotation in the (p, q) plane that zeroes m(p, q); see Golub & Van Loan, Algorithm 8.5.2.
void rotate(SymmetricMatrix& m, std::size_t p, std::size_t q) {
    const double apq = m(p, q);
    if (apq == 0.0) return;
    const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
    const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    for (std::size_t k = 0; k < m.n; ++k) {
        const double akp = m(k, p);
        const double akq = m(k, q);
        m(k, p) = c * akp - s * akq;
        m(k, q) = s * akp + c * akq;
    }
    for (std::size_t k = 0; k < m.n; ++k) {
        const double apk = m(p, k);
        const double aqk = m(q, k);
        m(p, k) = c * apk - s * aqk;
        m(q, k) = s * apk + c * aqk;
    }
    m(p, q) = 0.0;
    m(q, p) = 0.0;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(SymmetricMatrix m, int max_sweeps) {
    const std::size_t n = m.n;
    const double scale = frobenius_norm(m);
    std::vector<double> out(n);
    if (scale == 0.0 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = m(i, i);
        std::sort(out.begin(), out.end(), std::greater<>());
        return out;
    }
    const double target = 1e-15 * scale;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(m) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(m, p, q);
    }
    const double residual = off_diagonal_norm(m);
    if (residual > target) {
        std::ostringstream msg;
        msg << "Jacobi eigensolver did not converge after " << max_sweeps
            << " sweeps (off-diagonal norm " << residual << ", target " << target << ")";
        throw NumericalError(msg.str());
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = m(i, i);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

}  // namespace remeta
