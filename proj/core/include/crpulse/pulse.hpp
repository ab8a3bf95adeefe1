#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace crpulse {

inline constexpr int kNumChannels = 4;

// Piecewise-constant amplitudes for the four drive channels on a uniform
// grid. Channel order follows the c1..c4 convention: e1x, e1y, e2x, e2y.
struct PulseSet {
    double dt = 0.5;       // ns
    int n_steps = 0;
    double amp_max = 0.0;  // rad/ns
    Eigen::Matrix<double, kNumChannels, Eigen::Dynamic> amplitudes;  // rad/ns

    double duration() const { return dt * n_steps; }
    void validate() const;
    bool within_bounds(double slack = 0.0) const;
};

// Amplitudes i.i.d. uniform on [-init_fraction*amp_max, +init_fraction*amp_max],
// drawn channel-major from a seeded deterministic generator.
PulseSet random_pulse(double dt, int n_steps, double amp_max,
                      double init_fraction, std::uint64_t seed);

PulseSet zero_pulse(double dt, int n_steps, double amp_max);

// Clamp every amplitude into [-amp_max, amp_max]. Idempotent.
PulseSet clip(PulseSet pulse);

// CSV schema: optional '#' comment lines, a header line
//   dt_ns=<float>,amp_max_radns=<float>
// then one row per step `k,c1,c2,c3,c4` with 17-significant-digit amplitudes
// in rad/ns. Round-trips bit-for-bit.
void write_pulse(const PulseSet& pulse, const std::filesystem::path& path,
                 const std::vector<std::string>& comments = {});
PulseSet read_pulse(const std::filesystem::path& path);

std::string format_double(double value);  // %.17g, shared by all CSV writers

}  // namespace crpulse
