#pragma once

#include <functional>
#include <vector>

#include "crpulse/robust.hpp"

namespace crpulse {

enum class Objective { worst_case, average };

struct ScpConfig {
    double rho0 = 0.0;        // initial trust radius, per-amplitude inf-norm, rad/ns
    double rho_grow = 1.6;
    double rho_shrink = 0.5;
    double rho_min = 0.0;     // termination radius, rad/ns
    int max_iters = 500;
    double target_fidelity = 0.9999;
    Objective objective = Objective::worst_case;

    void validate() const;
};

// rho0 = 0.05 amp_max, rho_min = 1e-6 amp_max.
ScpConfig make_default_scp_config(double amp_max);

struct TraceEntry {
    int iteration;
    double worst_case;  // of the trial evaluated this iteration
    double average;
    double rho;         // trust radius used for the subproblem
    bool accepted;
};

enum class Termination { target_reached, rho_collapsed, max_iters };

struct OptimizationResult {
    PulseSet pulse;
    std::vector<double> fidelities;  // per sample at the returned pulse
    double worst_case = 0.0;
    double average = 0.0;
    std::vector<TraceEntry> trace;
    Termination termination = Termination::max_iters;
};

// Linearized max-min step: maximize t subject to t <= F_i + g_i . eps for all
// samples, |eps_d| <= rho and |current_d + eps_d| <= amp_max. Worst-case mode
// solves the epigraph LP (dense simplex, box constraints handled as variable
// bounds); average mode and the single-sample case use the separable closed
// form. Increment layout matches PulseSet amplitudes column-major (m + 4k).
Eigen::VectorXd solve_subproblem(const Eigen::VectorXd& fidelities,
                                 const Eigen::MatrixXd& gradients,
                                 const Eigen::VectorXd& current, double rho,
                                 double amp_max, Objective objective);

using ScpObserver = std::function<void(const TraceEntry& entry,
                                       const PulseSet& current,
                                       const PulseSet& trial)>;

// Accept a trial only on strict improvement of the active objective; grow the
// trust region on acceptance (capped at 100 rho0), shrink and retry from the
// same iterate otherwise. Rejected trials reuse the stored linearization.
OptimizationResult scp_optimize(const UncertaintyEnsemble& ensemble,
                                const PulseSet& pulse0, const ScpConfig& config,
                                const ScpObserver& observer = {});

// One clipped gradient-ascent step on the ensemble-average fidelity; the
// fixed-step baseline the trust-region method is contrasted against.
PulseSet grape_average_step(const UncertaintyEnsemble& ensemble,
                            const PulseSet& pulse, double alpha);

}  // namespace crpulse
