#pragma once

#include <string>
#include <vector>

#include "crpulse/fidelity.hpp"

namespace crpulse {

struct UncertaintySpec {
    std::string parameter = "coupling_j";
    double fraction = 0.10;  // +/- range as a fraction of the nominal value
    int n_samples = 3;       // odd, so the nominal value is always a sample

    void validate() const;
};

// Models evenly spaced on [J(1-fraction), J(1+fraction)], each dressed
// independently: J moves eigenvalues and eigenvectors alike.
struct UncertaintyEnsemble {
    std::vector<SystemModel> models;
    std::vector<DressedSystem> systems;
    int nominal_index = 0;

    int size() const { return static_cast<int>(systems.size()); }
};

UncertaintyEnsemble sample_ensemble(const SystemModel& model,
                                    const UncertaintySpec& spec);

struct EnsembleEvaluation {
    std::vector<double> fidelities;
    // per sample, 4 x n_steps; empty when gradients were not requested
    std::vector<Eigen::Matrix<double, kNumChannels, Eigen::Dynamic>> gradients;

    double worst_case() const;
    double average() const;
};

EnsembleEvaluation evaluate_ensemble(const UncertaintyEnsemble& ensemble,
                                     const PulseSet& pulse,
                                     bool with_gradients = true);

}  // namespace crpulse
