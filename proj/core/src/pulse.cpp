#include "crpulse/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "crpulse/errors.hpp"
#include "crpulse/rng.hpp"

namespace crpulse {

void PulseSet::validate() const {
    if (dt <= 0.0) throw ContractViolationError("PulseSet: dt must be positive");
    if (n_steps < 1) throw ContractViolationError("PulseSet: n_steps must be >= 1");
    if (amplitudes.cols() != n_steps) {
        throw ContractViolationError("PulseSet: amplitude column count != n_steps");
    }
    if (!within_bounds()) {
        throw ContractViolationError("PulseSet: amplitude exceeds amp_max");
    }
}

bool PulseSet::within_bounds(double slack) const {
    return amplitudes.cwiseAbs().maxCoeff() <= amp_max + slack;
}

PulseSet random_pulse(double dt, int n_steps, double amp_max,
                      double init_fraction, std::uint64_t seed) {
    if (init_fraction <= 0.0 || init_fraction > 1.0) {
        throw ContractViolationError("random_pulse: init_fraction must be in (0, 1]");
    }
    PulseSet p;
    p.dt = dt;
    p.n_steps = n_steps;
    p.amp_max = amp_max;
    p.amplitudes.resize(kNumChannels, n_steps);
    UniformRng rng(seed);
    const double half = init_fraction * amp_max;
    for (int m = 0; m < kNumChannels; ++m) {
        for (int k = 0; k < n_steps; ++k) {
            p.amplitudes(m, k) = rng.next_symmetric(half);
        }
    }
    p.validate();
    return p;
}

PulseSet zero_pulse(double dt, int n_steps, double amp_max) {
    PulseSet p;
    p.dt = dt;
    p.n_steps = n_steps;
    p.amp_max = amp_max;
    p.amplitudes = Eigen::Matrix<double, kNumChannels, Eigen::Dynamic>::Zero(
        kNumChannels, n_steps);
    p.validate();
    return p;
}

PulseSet clip(PulseSet pulse) {
    pulse.amplitudes =
        pulse.amplitudes.cwiseMax(-pulse.amp_max).cwiseMin(pulse.amp_max);
    return pulse;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_pulse(const PulseSet& pulse, const std::filesystem::path& path,
                 const std::vector<std::string>& comments) {
    pulse.validate();
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_pulse: cannot open " + path.string());
    }
    for (const auto& c : comments) out << "# " << c << "\n";
    out << "dt_ns=" << format_double(pulse.dt)
        << ",amp_max_radns=" << format_double(pulse.amp_max) << "\n";
    for (int k = 0; k < pulse.n_steps; ++k) {
        out << k;
        for (int m = 0; m < kNumChannels; ++m) {
            out << "," << format_double(pulse.amplitudes(m, k));
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write_pulse: write failed for " + path.string());
    }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text, int line_no) {
    try {
        size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParseError("read_pulse: bad numeric field '" + text + "'", line_no);
    }
}

}  // namespace

PulseSet read_pulse(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_pulse: cannot open " + path.string());
    }
    std::string line;
    int line_no = 0;

    // skip comment lines
    do {
        if (!std::getline(in, line)) {
            throw ParseError("read_pulse: missing header line", line_no);
        }
        ++line_no;
    } while (!line.empty() && line[0] == '#');

    const std::string dt_key = "dt_ns=";
    const std::string amp_key = ",amp_max_radns=";
    if (line.rfind(dt_key, 0) != 0) {
        throw ParseError("read_pulse: header must start with dt_ns=", line_no);
    }
    const auto amp_pos = line.find(amp_key);
    if (amp_pos == std::string::npos) {
        throw ParseError("read_pulse: header missing amp_max_radns=", line_no);
    }
    PulseSet p;
    p.dt = parse_double(line.substr(dt_key.size(), amp_pos - dt_key.size()), line_no);
    p.amp_max = parse_double(line.substr(amp_pos + amp_key.size()), line_no);

    std::vector<std::array<double, kNumChannels>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 1 + kNumChannels) {
            throw SchemaError("read_pulse: expected 4 channel columns, got " +
                              std::to_string(fields.size() > 0 ? fields.size() - 1 : 0) +
                              " (line " + std::to_string(line_no) + ")");
        }
        const double k_val = parse_double(fields[0], line_no);
        if (k_val != static_cast<double>(rows.size())) {
            throw ParseError("read_pulse: step index " + fields[0] +
                                 " out of order, expected " +
                                 std::to_string(rows.size()),
                             line_no);
        }
        std::array<double, kNumChannels> row{};
        for (int m = 0; m < kNumChannels; ++m) {
            row[m] = parse_double(fields[m + 1], line_no);
        }
        rows.push_back(row);
    }
    if (rows.empty()) {
        throw ParseError("read_pulse: no amplitude rows", line_no);
    }
    p.n_steps = static_cast<int>(rows.size());
    p.amplitudes.resize(kNumChannels, p.n_steps);
    for (int k = 0; k < p.n_steps; ++k) {
        for (int m = 0; m < kNumChannels; ++m) p.amplitudes(m, k) = rows[k][m];
    }
    if (!p.within_bounds()) {
        throw SchemaError("read_pulse: amplitude exceeds amp_max in " + path.string());
    }
    p.validate();
    return p;
}

}  // namespace crpulse
