#pragma once

#include "crpulse/propagate.hpp"

namespace crpulse {

struct TargetGate {
    ComplexMatrix w;  // 4x4 unitary on the computational subspace
};

// W = exp(-i (pi/4) sigma_z (x) sigma_x)
TargetGate target_zx();

// Full-dimension matrix acting as W on the range of the (diagonal) projector,
// zero elsewhere. Only the projected product is ever used.
ComplexMatrix embedded_target(const TargetGate& target,
                              const ComplexMatrix& projector);

// F = |tr(W^dag O U(T) O) / n_s|^2; global-phase insensitive.
double gate_fidelity(const ComplexMatrix& u_total, const TargetGate& target,
                     const ComplexMatrix& projector, int n_s);

// Exact chain rule of the projected trace fidelity:
// dF/dc_m[k] = 2 Re[conj(z) tr(W^dag O dU O)/n_s], z = tr(W^dag O U O)/n_s.
Eigen::Matrix<double, kNumChannels, Eigen::Dynamic> fidelity_gradient(
    const PropagationRecord& record, const PropagationGradients& grads,
    const TargetGate& target, const ComplexMatrix& projector, int n_s);

}  // namespace crpulse
