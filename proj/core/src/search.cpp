#include "crpulse/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "crpulse/errors.hpp"
#include "crpulse/rng.hpp"

namespace crpulse {

namespace {

bool near_multiple(double value, double dt) {
    const double k = std::round(value / dt);
    return std::abs(value - k * dt) < 1e-9;
}

std::vector<double> duration_grid(const SweepConfig& config) {
    std::vector<double> durations;
    for (int i = 0;; ++i) {
        const double t = config.t_min + i * config.t_step;
        if (t > config.t_max + 1e-9) break;
        durations.push_back(t);
    }
    return durations;
}

double evaluate_at_j(const SystemModel& model, double coupling_j,
                     const PulseSet& pulse, const TargetGate& target) {
    SystemModel perturbed = model;
    perturbed.coupling_j = coupling_j;
    const DressedSystem sys = dress(perturbed);
    return gate_fidelity(propagate(sys, pulse).total(), target, sys.projector,
                         sys.n_s);
}

}  // namespace

void SweepConfig::validate() const {
    if (t_min <= 0.0 || t_step <= 0.0 || t_max < t_min - 1e-12) {
        throw ContractViolationError("SweepConfig: need 0 < t_min <= t_max, t_step > 0");
    }
    if (dt <= 0.0 || !near_multiple(t_min, dt) || !near_multiple(t_step, dt)) {
        throw ContractViolationError(
            "SweepConfig: t_min and t_step must be multiples of dt");
    }
    if (n_starts < 1) {
        throw ContractViolationError("SweepConfig: n_starts must be >= 1");
    }
    if (verify_grid < 2) {
        throw ContractViolationError("SweepConfig: verify_grid must be >= 2");
    }
    if (amp_max <= 0.0 || init_fraction <= 0.0 || init_fraction > 1.0) {
        throw ContractViolationError(
            "SweepConfig: need amp_max > 0 and init_fraction in (0,1]");
    }
    model.validate();
    uncertainty.validate();
    scp.validate();
}

SweepResult run_sweep(const SweepConfig& config, const SweepProgress& progress) {
    config.validate();
    const std::vector<double> durations = duration_grid(config);

    struct Slot {
        StartRecord rec;
        PulseSet pulse;
    };
    const int n_durations = static_cast<int>(durations.size());
    std::vector<std::vector<Slot>> slots(n_durations,
                                         std::vector<Slot>(config.n_starts));

    const int n_tasks = n_durations * config.n_starts;
    std::atomic<int> next_task{0};
    std::mutex progress_mutex;

    auto worker = [&]() {
        for (;;) {
            const int task = next_task.fetch_add(1);
            if (task >= n_tasks) return;
            const int di = task / config.n_starts;
            const int si = task % config.n_starts;
            const double t = durations[di];
            const int n_steps = static_cast<int>(std::round(t / config.dt));
            Slot& slot = slots[di][si];
            slot.rec.seed = derive_seed(config.base_seed,
                                        static_cast<std::uint64_t>(n_steps),
                                        static_cast<std::uint64_t>(si));
            try {
                // built per start so a dressing failure poisons only this
                // record instead of tearing down the whole sweep
                const UncertaintyEnsemble ensemble =
                    sample_ensemble(config.model, config.uncertainty);
                const PulseSet start = random_pulse(config.dt, n_steps,
                                                    config.amp_max,
                                                    config.init_fraction,
                                                    slot.rec.seed);
                OptimizationResult res = scp_optimize(ensemble, start, config.scp);
                slot.rec.objective = config.scp.objective == Objective::worst_case
                                         ? res.worst_case
                                         : res.average;
                slot.pulse = std::move(res.pulse);
            } catch (const std::exception& e) {
                slot.rec.failed = true;
                slot.rec.failure = e.what();
            }
            if (progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                progress(ProgressEvent{di, si, t, slot.rec.objective,
                                       !slot.rec.failed});
            }
        }
    };

    const unsigned hw = std::thread::hardware_concurrency();
    const int n_threads = std::max(1, std::min(n_tasks, static_cast<int>(hw)));
    if (n_threads > 1) {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    } else {
        worker();
    }

    SweepResult result;
    result.base_seed = config.base_seed;
    result.records.reserve(n_durations);
    for (int di = 0; di < n_durations; ++di) {
        DurationRecord rec;
        rec.duration = durations[di];
        rec.n_steps = static_cast<int>(std::round(durations[di] / config.dt));
        double sum = 0.0;
        int n_ok = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (int si = 0; si < config.n_starts; ++si) {
            const StartRecord& sr = slots[di][si].rec;
            rec.starts.push_back(sr);
            if (sr.failed) continue;
            sum += sr.objective;
            ++n_ok;
            if (sr.objective > best) {
                best = sr.objective;
                rec.best_start = si;
            }
        }
        if (n_ok == 0) {
            throw SolverError("run_sweep: every start failed at T = " +
                              std::to_string(durations[di]) + " ns; first failure: " +
                              rec.starts.front().failure);
        }
        rec.best_worst_case = best;
        rec.mean_worst_case = sum / n_ok;
        rec.best_seed = rec.starts[rec.best_start].seed;
        rec.best_pulse = slots[di][rec.best_start].pulse;

        const RobustnessCheck check =
            verify_robustness(rec.best_pulse, config.model,
                              config.uncertainty.fraction, config.verify_grid);
        rec.verified_worst_case = check.min_fidelity;
        rec.verified_argmin_j = check.argmin_j;
        rec.sampling_gap = rec.best_worst_case >= 0.99 &&
                           rec.best_worst_case - rec.verified_worst_case > 0.005;
        result.records.push_back(std::move(rec));
    }
    return result;
}

RobustnessCheck verify_robustness(const PulseSet& pulse, const SystemModel& model,
                                  double fraction, int grid_points) {
    const std::vector<CurvePoint> curve =
        fidelity_vs_parameter_curve(pulse, model, fraction, grid_points);
    RobustnessCheck out;
    out.min_fidelity = std::numeric_limits<double>::infinity();
    for (const CurvePoint& p : curve) {
        if (p.fidelity < out.min_fidelity) {
            out.min_fidelity = p.fidelity;
            out.argmin_j = p.coupling_j;
        }
    }
    return out;
}

std::vector<CurvePoint> fidelity_vs_parameter_curve(const PulseSet& pulse,
                                                    const SystemModel& model,
                                                    double fraction,
                                                    int grid_points) {
    if (grid_points < 2) {
        throw ContractViolationError(
            "fidelity_vs_parameter_curve: grid_points must be >= 2");
    }
    if (fraction < 0.0) {
        throw ContractViolationError(
            "fidelity_vs_parameter_curve: fraction must be >= 0");
    }
    pulse.validate();
    const TargetGate target = target_zx();
    std::vector<CurvePoint> curve;
    curve.reserve(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        const double scale =
            1.0 - fraction +
            2.0 * fraction * static_cast<double>(i) / (grid_points - 1);
        const double j = model.coupling_j * scale;
        curve.push_back({j, evaluate_at_j(model, j, pulse, target)});
    }
    return curve;
}

}  // namespace crpulse
