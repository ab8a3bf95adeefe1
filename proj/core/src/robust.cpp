#include "crpulse/robust.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "crpulse/errors.hpp"

namespace crpulse {

void UncertaintySpec::validate() const {
    if (parameter != "coupling_j") {
        throw SchemaError("UncertaintySpec: unsupported parameter '" + parameter +
                          "' (only coupling_j)");
    }
    if (fraction < 0.0 || fraction > 0.10) {
        throw ContractViolationError(
            "UncertaintySpec: fraction must lie in [0, 0.10]");
    }
    if (n_samples < 1 || n_samples % 2 == 0) {
        throw ContractViolationError("UncertaintySpec: n_samples must be odd and >= 1");
    }
    if (fraction == 0.0 && n_samples != 1) {
        throw ContractViolationError(
            "UncertaintySpec: fraction 0 requires n_samples = 1");
    }
}

UncertaintyEnsemble sample_ensemble(const SystemModel& model,
                                    const UncertaintySpec& spec) {
    spec.validate();
    UncertaintyEnsemble ens;
    const int n = spec.n_samples;
    ens.nominal_index = (n - 1) / 2;
    for (int i = 0; i < n; ++i) {
        SystemModel m = model;
        if (n > 1) {
            const double f = -spec.fraction +
                             2.0 * spec.fraction * i / static_cast<double>(n - 1);
            m.coupling_j = model.coupling_j * (1.0 + f);
        }
        ens.models.push_back(m);
        try {
            ens.systems.push_back(dress(m));
        } catch (const std::exception& e) {
            throw StrongCouplingError("sample_ensemble: dressing failed at J = " +
                                      std::to_string(m.coupling_j) + " rad/ns: " +
                                      e.what());
        }
    }
    return ens;
}

double EnsembleEvaluation::worst_case() const {
    return *std::min_element(fidelities.begin(), fidelities.end());
}

double EnsembleEvaluation::average() const {
    return std::accumulate(fidelities.begin(), fidelities.end(), 0.0) /
           static_cast<double>(fidelities.size());
}

EnsembleEvaluation evaluate_ensemble(const UncertaintyEnsemble& ensemble,
                                     const PulseSet& pulse, bool with_gradients) {
    if (ensemble.systems.empty()) {
        throw ContractViolationError("evaluate_ensemble: empty ensemble");
    }
    const TargetGate target = target_zx();
    EnsembleEvaluation eval;
    eval.fidelities.resize(ensemble.size());
    if (with_gradients) eval.gradients.resize(ensemble.size());

    for (int i = 0; i < ensemble.size(); ++i) {
        const DressedSystem& sys = ensemble.systems[i];
        try {
            if (with_gradients) {
                auto [record, grads] = propagate_with_gradients(sys, pulse);
                eval.fidelities[i] =
                    gate_fidelity(record.total(), target, sys.projector, sys.n_s);
                eval.gradients[i] = fidelity_gradient(record, grads, target,
                                                      sys.projector, sys.n_s);
            } else {
                const PropagationRecord record = propagate(sys, pulse);
                eval.fidelities[i] =
                    gate_fidelity(record.total(), target, sys.projector, sys.n_s);
            }
        } catch (const std::exception& e) {
            throw SolverError("evaluate_ensemble: sample " + std::to_string(i) +
                              " (J = " + std::to_string(ensemble.models[i].coupling_j) +
                              " rad/ns) failed: " + e.what());
        }
    }
    return eval;
}

}  // namespace crpulse
