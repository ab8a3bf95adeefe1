#pragma once

#include <array>
#include <utility>
#include <vector>

#include "crpulse/model.hpp"
#include "crpulse/pulse.hpp"

namespace crpulse {

struct PropagationRecord {
    std::vector<ComplexMatrix> step_props;  // U_k
    std::vector<ComplexMatrix> cumulative;  // P_k = U_k ... U_1

    const ComplexMatrix& total() const { return cumulative.back(); }
};

// U_k = exp(-i dt (H0 + sum_m c_m[k] H_m)); total is the ordered product,
// later times on the left.
PropagationRecord propagate(const DressedSystem& system, const PulseSet& pulse);

// grad[m][k] = dU(T)/dc_m[k] = S_{k+1} (dU_k/dc_m) P_{k-1}, with the step
// derivative taken at the step's full generator. One forward pass stores the
// prefix products, one backward pass the suffixes.
struct PropagationGradients {
    std::array<std::vector<ComplexMatrix>, kNumChannels> grad;
};

std::pair<PropagationRecord, PropagationGradients> propagate_with_gradients(
    const DressedSystem& system, const PulseSet& pulse);

// L_k = 1 - |tr(P_k^dag O P_k O)|^2 / n_s^2, clamped into [0,1].
std::vector<double> leakage_profile(const DressedSystem& system,
                                    const PulseSet& pulse);
std::vector<double> leakage_from_record(const PropagationRecord& record,
                                        const ComplexMatrix& projector, int n_s);

}  // namespace crpulse
