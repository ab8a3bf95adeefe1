#include "crpulse/fidelity.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "crpulse/errors.hpp"

namespace crpulse {

TargetGate target_zx() {
    // exp(-i (pi/4) sigma_z (x) sigma_x) = cos(pi/4) I - i sin(pi/4) sigma_z (x) sigma_x
    const double c = std::cos(std::numbers::pi / 4.0);
    const double s = std::sin(std::numbers::pi / 4.0);
    ComplexMatrix zx = ComplexMatrix::Zero(4, 4);
    zx(0, 1) = 1;
    zx(1, 0) = 1;
    zx(2, 3) = -1;
    zx(3, 2) = -1;
    TargetGate t;
    t.w = c * ComplexMatrix::Identity(4, 4) - Complex(0, s) * zx;
    return t;
}

namespace {

// The projector produced by dress() is diagonal 0/1; recover the subspace
// index list from its diagonal.
std::vector<int> projector_indices(const ComplexMatrix& projector, int n_s) {
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < projector.rows(); ++i) {
        if (std::abs(projector(i, i)) > 0.5) idx.push_back(static_cast<int>(i));
    }
    if (static_cast<int>(idx.size()) != n_s) {
        throw ContractViolationError(
            "gate_fidelity: projector trace does not equal n_s");
    }
    return idx;
}

Complex projected_overlap(const ComplexMatrix& u, const ComplexMatrix& w,
                          const std::vector<int>& idx, int n_s) {
    Complex tr(0, 0);
    const int d = static_cast<int>(idx.size());
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            tr += std::conj(w(a, b)) * u(idx[a], idx[b]);
        }
    }
    return tr / static_cast<double>(n_s);
}

}  // namespace

ComplexMatrix embedded_target(const TargetGate& target,
                              const ComplexMatrix& projector) {
    const auto idx = projector_indices(projector, 4);
    ComplexMatrix out = ComplexMatrix::Zero(projector.rows(), projector.cols());
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            out(idx[a], idx[b]) = target.w(a, b);
        }
    }
    return out;
}

double gate_fidelity(const ComplexMatrix& u_total, const TargetGate& target,
                     const ComplexMatrix& projector, int n_s) {
    if (u_total.rows() != projector.rows()) {
        throw InvalidDimensionError("gate_fidelity: dimension mismatch");
    }
    const auto idx = projector_indices(projector, n_s);
    return std::norm(projected_overlap(u_total, target.w, idx, n_s));
}

Eigen::Matrix<double, kNumChannels, Eigen::Dynamic> fidelity_gradient(
    const PropagationRecord& record, const PropagationGradients& grads,
    const TargetGate& target, const ComplexMatrix& projector, int n_s) {
    const int n = static_cast<int>(record.step_props.size());
    for (int m = 0; m < kNumChannels; ++m) {
        if (static_cast<int>(grads.grad[m].size()) != n) {
            throw InvalidDimensionError("fidelity_gradient: gradient shape mismatch");
        }
    }
    const auto idx = projector_indices(projector, n_s);
    const Complex z = projected_overlap(record.total(), target.w, idx, n_s);

    Eigen::Matrix<double, kNumChannels, Eigen::Dynamic> out(kNumChannels, n);
    for (int m = 0; m < kNumChannels; ++m) {
        for (int k = 0; k < n; ++k) {
            const Complex dz =
                projected_overlap(grads.grad[m][k], target.w, idx, n_s);
            out(m, k) = 2.0 * std::real(std::conj(z) * dz);
        }
    }
    return out;
}

}  // namespace crpulse
