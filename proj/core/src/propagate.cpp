#include "crpulse/propagate.hpp"

#include <algorithm>
#include <cmath>

#include "crpulse/errors.hpp"

namespace crpulse {

namespace {

void check_compatible(const DressedSystem& system, const PulseSet& pulse) {
    pulse.validate();
    const int dim = system.dim();
    for (const auto& c : system.controls) {
        if (c.rows() != dim || c.cols() != dim) {
            throw InvalidDimensionError("propagate: control dimension mismatch");
        }
    }
}

ComplexMatrix step_generator(const DressedSystem& system, const PulseSet& pulse,
                             int k) {
    ComplexMatrix h = system.h0_dressed;
    for (int m = 0; m < kNumChannels; ++m) {
        h += pulse.amplitudes(m, k) * system.controls[m];
    }
    return h;
}

}  // namespace

PropagationRecord propagate(const DressedSystem& system, const PulseSet& pulse) {
    check_compatible(system, pulse);
    PropagationRecord rec;
    rec.step_props.reserve(pulse.n_steps);
    rec.cumulative.reserve(pulse.n_steps);
    ComplexMatrix acc = ComplexMatrix::Identity(system.dim(), system.dim());
    for (int k = 0; k < pulse.n_steps; ++k) {
        const HermitianEigen eig = eigh(step_generator(system, pulse, k));
        ComplexMatrix u = expm_from_eigen(eig, pulse.dt);
        acc = u * acc;
        rec.step_props.push_back(std::move(u));
        rec.cumulative.push_back(acc);
    }
    return rec;
}

std::pair<PropagationRecord, PropagationGradients> propagate_with_gradients(
    const DressedSystem& system, const PulseSet& pulse) {
    check_compatible(system, pulse);
    const int n = pulse.n_steps;
    const int dim = system.dim();

    PropagationRecord rec;
    rec.step_props.reserve(n);
    rec.cumulative.reserve(n);
    std::vector<std::array<ComplexMatrix, kNumChannels>> step_derivs(n);

    ComplexMatrix acc = ComplexMatrix::Identity(dim, dim);
    for (int k = 0; k < n; ++k) {
        const HermitianEigen eig = eigh(step_generator(system, pulse, k));
        ComplexMatrix u = expm_from_eigen(eig, pulse.dt);
        for (int m = 0; m < kNumChannels; ++m) {
            step_derivs[k][m] =
                expm_derivative_from_eigen(eig, system.controls[m], pulse.dt);
        }
        acc = u * acc;
        rec.step_props.push_back(std::move(u));
        rec.cumulative.push_back(acc);
    }

    // suffix[k] = U_n ... U_{k+2} U_{k+1} (identity for k = n-1)
    std::vector<ComplexMatrix> suffix(n);
    ComplexMatrix s = ComplexMatrix::Identity(dim, dim);
    for (int k = n - 1; k >= 0; --k) {
        suffix[k] = s;
        s = s * rec.step_props[k];
    }

    PropagationGradients grads;
    for (int m = 0; m < kNumChannels; ++m) grads.grad[m].resize(n);
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    for (int k = 0; k < n; ++k) {
        const ComplexMatrix& prefix = (k == 0) ? id : rec.cumulative[k - 1];
        for (int m = 0; m < kNumChannels; ++m) {
            grads.grad[m][k] = suffix[k] * step_derivs[k][m] * prefix;
        }
    }
    return {std::move(rec), std::move(grads)};
}

std::vector<double> leakage_from_record(const PropagationRecord& record,
                                        const ComplexMatrix& projector, int n_s) {
    std::vector<double> leakage;
    leakage.reserve(record.cumulative.size());
    // full-rank projector: the computational subspace is the whole space, so
    // there is nothing to leak into and the answer is exactly zero (the trace
    // formula would only report the rounding error of U^dag U)
    if (n_s == projector.rows()) {
        leakage.assign(record.cumulative.size(), 0.0);
        return leakage;
    }
    const double norm = static_cast<double>(n_s) * n_s;
    for (const auto& p : record.cumulative) {
        const Complex tr = (p.adjoint() * projector * p * projector).trace();
        double l = 1.0 - std::norm(tr) / norm;
        leakage.push_back(std::clamp(l, 0.0, 1.0));
    }
    return leakage;
}

std::vector<double> leakage_profile(const DressedSystem& system,
                                    const PulseSet& pulse) {
    return leakage_from_record(propagate(system, pulse), system.projector,
                               system.n_s);
}

}  // namespace crpulse
