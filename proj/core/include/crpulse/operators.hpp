#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

namespace crpulse {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTol = 1e-12;
// Two eigenvalues count as degenerate for the derivative formula when
// |lambda_a - lambda_b| * |t| falls below this.
inline constexpr double kDegeneracyTol = 1e-9;

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

// Bosonic lowering operator truncated to n_levels: b[k, k+1] = sqrt(k+1).
ComplexMatrix annihilation(int n_levels);

// Place a single-mode operator into the two-mode product space.
// slot 1 -> op (x) I_n2, slot 2 -> I_n1 (x) op.
ComplexMatrix embed(const ComplexMatrix& op, int slot, std::pair<int, int> dims);

// Eigendecomposition of a Hermitian matrix. One factorization serves the
// propagator and all four channel derivatives of a time step.
struct HermitianEigen {
    Eigen::VectorXd eigenvalues;
    ComplexMatrix eigenvectors;  // columns
};

HermitianEigen eigh(const ComplexMatrix& h);

// U = exp(-i t H) = V exp(-i t Lambda) V^dag
ComplexMatrix expm_from_eigen(const HermitianEigen& eig, double t);
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

// d/dc exp(-i t (H + c D)) at c = 0, via the eigenbasis divided-difference
// formula; degenerate pairs take the -i t G_ab e^{-i t lambda_a} branch.
ComplexMatrix expm_derivative_from_eigen(const HermitianEigen& eig,
                                         const ComplexMatrix& d, double t);
ComplexMatrix expm_derivative(const ComplexMatrix& h, const ComplexMatrix& d,
                              double t);

}  // namespace crpulse
