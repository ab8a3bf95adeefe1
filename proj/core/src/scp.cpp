#include "crpulse/scp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "crpulse/errors.hpp"

namespace crpulse {

void ScpConfig::validate() const {
    if (rho0 <= 0.0 || rho_min <= 0.0 || rho_min >= rho0) {
        throw ContractViolationError("ScpConfig: need 0 < rho_min < rho0");
    }
    if (rho_shrink <= 0.0 || rho_shrink >= 1.0 || rho_grow <= 1.0) {
        throw ContractViolationError("ScpConfig: need 0 < rho_shrink < 1 < rho_grow");
    }
    if (max_iters < 1) {
        throw ContractViolationError("ScpConfig: max_iters must be >= 1");
    }
}

ScpConfig make_default_scp_config(double amp_max) {
    ScpConfig c;
    c.rho0 = 0.05 * amp_max;
    c.rho_min = 1e-6 * amp_max;
    return c;
}

namespace {

constexpr double kOptTol = 1e-9;   // reduced-cost / feasibility tolerance
constexpr double kPivotTol = 1e-11;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense primal simplex for   maximize t  s.t.  t - g_i . y <= F_i,
// l <= y <= u, with box constraints kept as variable bounds. Variables are
// pre-scaled so every bound is O(1). Dantzig pricing with a Bland fallback
// once degenerate pivots stall.
class BoundedSimplex {
public:
    BoundedSimplex(const Eigen::VectorXd& f, const Eigen::MatrixXd& g,
                   const Eigen::VectorXd& lower, const Eigen::VectorXd& upper)
        : n_(static_cast<int>(f.size())),
          dim_(static_cast<int>(lower.size())),
          nvars_(1 + dim_ + n_),
          tab_(n_, 1 + dim_ + n_),
          rhs_(f),
          lo_(nvars_),
          up_(nvars_),
          value_(nvars_),
          status_(nvars_, AT_LOWER),
          basic_in_row_(n_) {
        // t bounds wide enough to never bind at the optimum
        double t_lo = kInf, t_hi = -kInf;
        for (int i = 0; i < n_; ++i) {
            double worst = f(i), best = f(i);
            for (int d = 0; d < dim_; ++d) {
                worst += std::min(g(i, d) * lower(d), g(i, d) * upper(d));
                best += std::max(g(i, d) * lower(d), g(i, d) * upper(d));
            }
            t_lo = std::min(t_lo, worst);
            t_hi = std::max(t_hi, best);
        }
        lo_(0) = t_lo - 1.0;
        up_(0) = t_hi + 1.0;
        for (int d = 0; d < dim_; ++d) {
            lo_(1 + d) = lower(d);
            up_(1 + d) = upper(d);
        }
        for (int i = 0; i < n_; ++i) {
            lo_(1 + dim_ + i) = 0.0;
            up_(1 + dim_ + i) = kInf;
        }

        tab_.setZero();
        for (int i = 0; i < n_; ++i) {
            tab_(i, 0) = 1.0;
            for (int d = 0; d < dim_; ++d) tab_(i, 1 + d) = -g(i, d);
            tab_(i, 1 + dim_ + i) = 1.0;
            basic_in_row_[i] = 1 + dim_ + i;
            status_[1 + dim_ + i] = BASIC;
        }
        for (int j = 0; j < nvars_; ++j) {
            value_(j) = status_[j] == AT_LOWER ? lo_(j) : up_(j);
        }
        refresh_basic_values();
    }

    // returns optimal t; solution y in value_(1..dim_)
    double solve() {
        const int max_pivots = 200 * (nvars_ + n_) + 1000;
        int stall = 0;
        bool bland = false;
        double last_obj = value_(0);
        for (int iter = 0; iter < max_pivots; ++iter) {
            const int row_t = row_of(0);
            int enter = -1;
            double best_score = 0.0;
            for (int j = 0; j < nvars_; ++j) {
                if (status_[j] == BASIC) continue;
                // reduced cost of j for objective e_t
                const double r = (j == 0 ? 1.0 : 0.0) -
                                 (row_t >= 0 ? tab_(row_t, j) : 0.0);
                const bool eligible = (status_[j] == AT_LOWER && r > kOptTol) ||
                                      (status_[j] == AT_UPPER && r < -kOptTol);
                if (!eligible) continue;
                if (bland) {
                    enter = j;
                    break;
                }
                if (std::abs(r) > best_score) {
                    best_score = std::abs(r);
                    enter = j;
                }
            }
            if (enter < 0) return value_(0);  // optimal

            const double sigma = status_[enter] == AT_LOWER ? 1.0 : -1.0;
            // ratio test
            double theta = up_(enter) - lo_(enter);  // bound flip span
            int leave_row = -1;
            bool leave_at_upper = false;
            for (int r = 0; r < n_; ++r) {
                const double rate = -tab_(r, enter) * sigma;  // d x_B[r] / d theta
                const int bv = basic_in_row_[r];
                if (rate > kPivotTol) {
                    if (up_(bv) < kInf) {
                        const double room = (up_(bv) - value_(bv)) / rate;
                        if (room < theta - kPivotTol ||
                            (bland && leave_row >= 0 && room < theta + kPivotTol &&
                             bv < basic_in_row_[leave_row])) {
                            theta = std::max(room, 0.0);
                            leave_row = r;
                            leave_at_upper = true;
                        }
                    }
                } else if (rate < -kPivotTol) {
                    const double room = (value_(bv) - lo_(bv)) / (-rate);
                    if (room < theta - kPivotTol ||
                        (bland && leave_row >= 0 && room < theta + kPivotTol &&
                         bv < basic_in_row_[leave_row])) {
                        theta = std::max(room, 0.0);
                        leave_row = r;
                        leave_at_upper = false;
                    }
                }
            }
            if (theta >= kInf) {
                throw SolverError("solve_subproblem: LP unbounded (t has finite bounds; "
                                  "this indicates a tableau corruption)");
            }

            // move entering variable and basics
            value_(enter) += sigma * theta;
            for (int r = 0; r < n_; ++r) {
                value_(basic_in_row_[r]) -= tab_(r, enter) * sigma * theta;
            }
            if (leave_row < 0) {
                // bound flip, basis unchanged
                status_[enter] = status_[enter] == AT_LOWER ? AT_UPPER : AT_LOWER;
                value_(enter) = status_[enter] == AT_LOWER ? lo_(enter) : up_(enter);
            } else {
                const int leave = basic_in_row_[leave_row];
                value_(leave) = leave_at_upper ? up_(leave) : lo_(leave);
                status_[leave] = leave_at_upper ? AT_UPPER : AT_LOWER;
                pivot(leave_row, enter);
            }

            if (value_(0) > last_obj + kOptTol * (1.0 + std::abs(last_obj))) {
                last_obj = value_(0);
                stall = 0;
                bland = false;
            } else if (++stall > 2 * (nvars_ + n_)) {
                bland = true;  // anti-cycling
            }
        }
        throw SolverError(
            "solve_subproblem: simplex did not converge after " +
            std::to_string(200 * (nvars_ + n_) + 1000) + " pivots; objective " +
            std::to_string(value_(0)) + ", " + std::to_string(n_) + " samples, " +
            std::to_string(dim_) + " coordinates");
    }

    double y(int d) const { return value_(1 + d); }

private:
    enum Status { BASIC, AT_LOWER, AT_UPPER };

    int row_of(int var) const {
        for (int r = 0; r < n_; ++r) {
            if (basic_in_row_[r] == var) return r;
        }
        return -1;
    }

    void refresh_basic_values() {
        // x_B = rhs - sum_{nonbasic j} tab_j x_j   (basis currently identity)
        for (int r = 0; r < n_; ++r) {
            double v = rhs_(r);
            for (int j = 0; j < nvars_; ++j) {
                if (status_[j] != BASIC) v -= tab_(r, j) * value_(j);
            }
            value_(basic_in_row_[r]) = v;
        }
    }

    void pivot(int row, int col) {
        const double p = tab_(row, col);
        tab_.row(row) /= p;
        for (int r = 0; r < n_; ++r) {
            if (r == row) continue;
            const double factor = tab_(r, col);
            if (factor != 0.0) tab_.row(r) -= factor * tab_.row(row);
        }
        basic_in_row_[row] = col;
        status_[col] = BASIC;
    }

    int n_, dim_, nvars_;
    Eigen::MatrixXd tab_;
    Eigen::VectorXd rhs_;
    Eigen::VectorXd lo_, up_, value_;
    std::vector<Status> status_;
    std::vector<int> basic_in_row_;
};

Eigen::VectorXd sign_step(const Eigen::VectorXd& direction,
                          const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    Eigen::VectorXd eps = Eigen::VectorXd::Zero(direction.size());
    for (Eigen::Index d = 0; d < direction.size(); ++d) {
        if (direction(d) > 0.0) {
            eps(d) = hi(d);
        } else if (direction(d) < 0.0) {
            eps(d) = lo(d);
        }
    }
    return eps;
}

}  // namespace

Eigen::VectorXd solve_subproblem(const Eigen::VectorXd& fidelities,
                                 const Eigen::MatrixXd& gradients,
                                 const Eigen::VectorXd& current, double rho,
                                 double amp_max, Objective objective) {
    const int n = static_cast<int>(fidelities.size());
    const int dim = static_cast<int>(current.size());
    if (n < 1 || gradients.rows() != n || gradients.cols() != dim) {
        throw InvalidDimensionError("solve_subproblem: shape mismatch");
    }
    if (rho <= 0.0) {
        throw ContractViolationError("solve_subproblem: rho must be positive");
    }

    Eigen::VectorXd lo(dim), hi(dim);
    for (int d = 0; d < dim; ++d) {
        hi(d) = std::min(rho, amp_max - current(d));
        lo(d) = -std::min(rho, amp_max + current(d));
        hi(d) = std::max(hi(d), 0.0);
        lo(d) = std::min(lo(d), 0.0);
    }

    if (objective == Objective::average) {
        const Eigen::VectorXd mean_grad =
            gradients.colwise().mean().transpose();
        return sign_step(mean_grad, lo, hi);
    }
    if (n == 1) {
        return sign_step(gradients.row(0).transpose(), lo, hi);
    }

    // scale coordinates by rho so the LP works on an O(1) box
    BoundedSimplex lp(fidelities, gradients * rho, lo / rho, hi / rho);
    lp.solve();
    Eigen::VectorXd eps(dim);
    for (int d = 0; d < dim; ++d) {
        eps(d) = std::clamp(rho * lp.y(d), lo(d), hi(d));
    }
    return eps;
}

namespace {

double objective_value(const EnsembleEvaluation& eval, Objective objective) {
    return objective == Objective::worst_case ? eval.worst_case() : eval.average();
}

Eigen::Map<const Eigen::VectorXd> flat(const PulseSet& p) {
    return {p.amplitudes.data(), p.amplitudes.size()};
}

Eigen::MatrixXd stack_gradients(const EnsembleEvaluation& eval) {
    const int n = static_cast<int>(eval.gradients.size());
    const auto size = eval.gradients[0].size();
    Eigen::MatrixXd g(n, size);
    for (int i = 0; i < n; ++i) {
        g.row(i) = Eigen::Map<const Eigen::VectorXd>(eval.gradients[i].data(), size);
    }
    return g;
}

PulseSet apply_increment(const PulseSet& p, const Eigen::VectorXd& eps) {
    PulseSet trial = p;
    Eigen::Map<Eigen::VectorXd>(trial.amplitudes.data(), trial.amplitudes.size()) +=
        eps;
    return clip(std::move(trial));
}

}  // namespace

OptimizationResult scp_optimize(const UncertaintyEnsemble& ensemble,
                                const PulseSet& pulse0, const ScpConfig& config,
                                const ScpObserver& observer) {
    config.validate();
    if (!pulse0.within_bounds(1e-12 * pulse0.amp_max)) {
        throw ContractViolationError("scp_optimize: pulse0 violates amplitude bounds");
    }

    PulseSet current = clip(pulse0);
    EnsembleEvaluation eval = evaluate_ensemble(ensemble, current, true);
    double obj = objective_value(eval, config.objective);
    double rho = config.rho0;

    OptimizationResult result;
    result.trace.push_back(
        {0, eval.worst_case(), eval.average(), rho, true});

    Termination termination = Termination::max_iters;
    if (obj >= config.target_fidelity) {
        termination = Termination::target_reached;
    } else {
        for (int iter = 1; iter <= config.max_iters; ++iter) {
            const Eigen::VectorXd eps =
                solve_subproblem(Eigen::Map<const Eigen::VectorXd>(
                                     eval.fidelities.data(),
                                     static_cast<Eigen::Index>(eval.fidelities.size())),
                                 stack_gradients(eval), flat(current), rho,
                                 current.amp_max, config.objective);
            const PulseSet trial = apply_increment(current, eps);
            const EnsembleEvaluation trial_eval =
                evaluate_ensemble(ensemble, trial, false);
            const double trial_obj = objective_value(trial_eval, config.objective);

            const bool accepted = trial_obj > obj;
            TraceEntry entry{iter, trial_eval.worst_case(), trial_eval.average(),
                             rho, accepted};
            result.trace.push_back(entry);
            if (observer) observer(entry, current, trial);

            if (accepted) {
                current = trial;
                eval = evaluate_ensemble(ensemble, current, true);
                obj = objective_value(eval, config.objective);
                rho = std::min(rho * config.rho_grow, config.rho0 * 100.0);
                if (obj >= config.target_fidelity) {
                    termination = Termination::target_reached;
                    break;
                }
            } else {
                rho *= config.rho_shrink;
                if (rho < config.rho_min) {
                    termination = Termination::rho_collapsed;
                    break;
                }
            }
        }
    }

    result.pulse = current;
    result.fidelities = eval.fidelities;
    result.worst_case = eval.worst_case();
    result.average = eval.average();
    result.termination = termination;
    return result;
}

PulseSet grape_average_step(const UncertaintyEnsemble& ensemble,
                            const PulseSet& pulse, double alpha) {
    if (alpha <= 0.0) {
        throw ContractViolationError("grape_average_step: alpha must be positive");
    }
    const EnsembleEvaluation eval = evaluate_ensemble(ensemble, pulse, true);
    Eigen::VectorXd mean_grad =
        Eigen::VectorXd::Zero(pulse.amplitudes.size());
    for (const auto& g : eval.gradients) {
        mean_grad += Eigen::Map<const Eigen::VectorXd>(g.data(), g.size());
    }
    mean_grad /= static_cast<double>(eval.gradients.size());
    return apply_increment(pulse, alpha * mean_grad);
}

}  // namespace crpulse
