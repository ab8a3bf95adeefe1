#pragma once

#include <array>
#include <utility>
#include <vector>

#include "crpulse/operators.hpp"

namespace crpulse {

// Physical parameters of the two coupled transmons. All angular frequencies
// are in rad/ns (1 rad/ns = 1e9 rad/s), times in ns; that keeps every product
// entering a propagator O(1) and matches the CSV/config units exactly.
struct SystemModel {
    double omega1 = 0.0;      // qubit 1 frequency, rad/ns
    double omega2 = 0.0;      // qubit 2 frequency, rad/ns
    double delta1 = 0.0;      // anharmonicity 1, rad/ns (ignored for levels=2)
    double delta2 = 0.0;      // anharmonicity 2, rad/ns (ignored for levels=2)
    double coupling_j = 0.0;  // exchange coupling J, rad/ns
    double drive_freq = 0.0;  // shared drive-frame frequency, rad/ns
    double alpha1 = 0.0;      // crosstalk of drive 1 onto qubit 2
    double alpha2 = 0.0;      // crosstalk of drive 2 onto qubit 1
    int levels = 3;           // 2 or 3

    int dim() const { return levels * levels; }
    double detuning1() const { return omega1 - drive_freq; }
    double detuning2() const { return omega2 - drive_freq; }
    double qubit_detuning() const { return omega1 - omega2; }  // Delta_12

    // |J / Delta_12| > 0.1 leaves the weak-coupling regime the perturbative
    // diagnostics assume. Not an error, just a flag.
    bool strong_coupling_flag() const;

    void validate() const;
};

// Static Hamiltonian eigen-decomposed and everything downstream needs:
// diagonal drift, transformed controls, computational-subspace projector.
struct DressedSystem {
    ComplexMatrix h0_dressed;                // diagonal, rad/ns
    std::array<ComplexMatrix, 4> controls;   // c1=e1x, c2=e1y, c3=e2x, c4=e2y
    ComplexMatrix projector;                 // O-hat, rank n_s
    int n_s = 4;
    std::array<int, 4> comp_indices{};       // basis indices of |00>,|01>,|10>,|11>
    std::vector<int> basis_map;              // bare label -> eigensolver column
    std::vector<double> overlaps;            // population of bare label in its dressed state
    int levels = 3;

    int dim() const { return static_cast<int>(h0_dressed.rows()); }
};

// H0 = sum_j [Delta_j n_j + (delta_j/2) n_j (n_j - 1)] + J (b1^dag b2 + b1 b2^dag)
// in the bare product basis |n1 n2>, index n1*levels + n2.
ComplexMatrix build_static(const SystemModel& model);

// Drive operators with classical crosstalk:
// H1x = (b1^dag + b1) + alpha1 (b2^dag + b2), H1y the y-quadrature analogue,
// and symmetrically for drive 2 with alpha2.
std::array<ComplexMatrix, 4> build_controls(const SystemModel& model);

// Eigendecompose the static Hamiltonian, assign dressed states to bare labels
// by maximum overlap (phase fixed so the dominant component is real positive),
// and conjugate the controls into that basis.
DressedSystem dress(const SystemModel& model);

// Perturbative decoupled frequencies (omega1 + J^2/Delta_12, omega2 - J^2/Delta_12).
std::pair<double, double> dressed_frequencies(const SystemModel& model);

// J / Delta_12: weight of the sigma_z (x) sigma_x drive term per unit amplitude.
double effective_zx_coefficient(const SystemModel& model);

}  // namespace crpulse
