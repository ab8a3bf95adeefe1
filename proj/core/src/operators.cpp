#include "crpulse/operators.hpp"

#include <cmath>
#include <string>

#include "crpulse/errors.hpp"

namespace crpulse {

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

ComplexMatrix annihilation(int n_levels) {
    if (n_levels < 2) {
        throw InvalidDimensionError("annihilation: n_levels must be >= 2, got " +
                                    std::to_string(n_levels));
    }
    ComplexMatrix b = ComplexMatrix::Zero(n_levels, n_levels);
    for (int k = 0; k + 1 < n_levels; ++k) {
        b(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
    }
    return b;
}

ComplexMatrix embed(const ComplexMatrix& op, int slot, std::pair<int, int> dims) {
    const auto [n1, n2] = dims;
    if (slot != 1 && slot != 2) {
        throw InvalidDimensionError("embed: slot must be 1 or 2");
    }
    const int expected = (slot == 1) ? n1 : n2;
    if (op.rows() != expected || op.cols() != expected) {
        throw InvalidDimensionError(
            "embed: operator dim " + std::to_string(op.rows()) +
            " does not match slot dim " + std::to_string(expected));
    }
    ComplexMatrix out = ComplexMatrix::Zero(n1 * n2, n1 * n2);
    if (slot == 1) {
        for (int a = 0; a < n1; ++a)
            for (int b = 0; b < n1; ++b)
                if (op(a, b) != Complex(0, 0))
                    for (int k = 0; k < n2; ++k)
                        out(a * n2 + k, b * n2 + k) = op(a, b);
    } else {
        for (int a = 0; a < n2; ++a)
            for (int b = 0; b < n2; ++b)
                if (op(a, b) != Complex(0, 0))
                    for (int k = 0; k < n1; ++k)
                        out(k * n2 + a, k * n2 + b) = op(a, b);
    }
    return out;
}

HermitianEigen eigh(const ComplexMatrix& h) {
    if (!is_hermitian(h)) {
        throw ContractViolationError("eigh: matrix is not Hermitian within 1e-12");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw SolverError("eigh: eigendecomposition failed to converge");
    }
    return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm_from_eigen(const HermitianEigen& eig, double t) {
    const Eigen::Index n = eig.eigenvalues.size();
    Eigen::VectorXcd phases(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        phases(a) = std::exp(Complex(0, -t * eig.eigenvalues(a)));
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
    if (!std::isfinite(t)) {
        throw ContractViolationError("expm_hermitian: t must be finite");
    }
    return expm_from_eigen(eigh(h), t);
}

ComplexMatrix expm_derivative_from_eigen(const HermitianEigen& eig,
                                         const ComplexMatrix& d, double t) {
    const Eigen::Index n = eig.eigenvalues.size();
    if (d.rows() != n || d.cols() != n) {
        throw InvalidDimensionError("expm_derivative: dimension mismatch");
    }
    const ComplexMatrix& v = eig.eigenvectors;
    const ComplexMatrix g = v.adjoint() * d * v;
    ComplexMatrix m(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const double la = eig.eigenvalues(a);
        const Complex ea = std::exp(Complex(0, -t * la));
        for (Eigen::Index b = 0; b < n; ++b) {
            const double lb = eig.eigenvalues(b);
            if (std::abs(la - lb) * std::abs(t) < kDegeneracyTol) {
                m(a, b) = Complex(0, -t) * g(a, b) * ea;
            } else {
                const Complex eb = std::exp(Complex(0, -t * lb));
                m(a, b) = g(a, b) * (ea - eb) / (la - lb);
            }
        }
    }
    return v * m * v.adjoint();
}

ComplexMatrix expm_derivative(const ComplexMatrix& h, const ComplexMatrix& d,
                              double t) {
    if (!std::isfinite(t)) {
        throw ContractViolationError("expm_derivative: t must be finite");
    }
    if (!is_hermitian(d)) {
        throw ContractViolationError("expm_derivative: direction is not Hermitian");
    }
    return expm_derivative_from_eigen(eigh(h), d, t);
}

}  // namespace crpulse
