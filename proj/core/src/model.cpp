#include "crpulse/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crpulse/errors.hpp"

namespace crpulse {

bool SystemModel::strong_coupling_flag() const {
    const double d12 = qubit_detuning();
    if (d12 == 0.0) return true;
    return std::abs(coupling_j / d12) > 0.1;
}

void SystemModel::validate() const {
    if (levels != 2 && levels != 3) {
        throw InvalidDimensionError("SystemModel: levels must be 2 or 3, got " +
                                    std::to_string(levels));
    }
    if (alpha1 < 0.0 || alpha1 > 1.0 || alpha2 < 0.0 || alpha2 > 1.0) {
        throw ContractViolationError("SystemModel: alpha1, alpha2 must lie in [0, 1]");
    }
}

ComplexMatrix build_static(const SystemModel& model) {
    model.validate();
    const int L = model.levels;
    const std::pair<int, int> dims{L, L};
    const ComplexMatrix b = annihilation(L);
    const ComplexMatrix b1 = embed(b, 1, dims);
    const ComplexMatrix b2 = embed(b, 2, dims);
    const ComplexMatrix n1 = b1.adjoint() * b1;
    const ComplexMatrix n2 = b2.adjoint() * b2;
    const ComplexMatrix id = ComplexMatrix::Identity(model.dim(), model.dim());

    ComplexMatrix h0 =
        model.detuning1() * n1 + model.detuning2() * n2 +
        0.5 * model.delta1 * n1 * (n1 - id) + 0.5 * model.delta2 * n2 * (n2 - id) +
        model.coupling_j * (b1.adjoint() * b2 + b1 * b2.adjoint());
    // symmetrize away roundoff
    return 0.5 * (h0 + h0.adjoint().eval());
}

std::array<ComplexMatrix, 4> build_controls(const SystemModel& model) {
    model.validate();
    const int L = model.levels;
    const std::pair<int, int> dims{L, L};
    const ComplexMatrix b = annihilation(L);
    const ComplexMatrix b1 = embed(b, 1, dims);
    const ComplexMatrix b2 = embed(b, 2, dims);
    const Complex i_unit(0, 1);

    const ComplexMatrix x1 = b1.adjoint() + b1;
    const ComplexMatrix x2 = b2.adjoint() + b2;
    const ComplexMatrix y1 = i_unit * (b1.adjoint() - b1);
    const ComplexMatrix y2 = i_unit * (b2.adjoint() - b2);

    return {x1 + model.alpha1 * x2, y1 + model.alpha1 * y2,
            x2 + model.alpha2 * x1, y2 + model.alpha2 * y1};
}

namespace {

// bare label index for |n1 n2>
int bare_index(int n1, int n2, int levels) { return n1 * levels + n2; }

}  // namespace

DressedSystem dress(const SystemModel& model) {
    const ComplexMatrix h0 = build_static(model);
    const HermitianEigen eig = eigh(h0);
    const int dim = model.dim();

    // Assign each eigenvector to the bare label carrying most of its weight.
    // Population > 0.5 for every state makes the assignment a bijection.
    std::vector<int> label_of_column(dim, -1);
    std::vector<double> overlap_of_column(dim, 0.0);
    for (int col = 0; col < dim; ++col) {
        int best = 0;
        double best_pop = 0.0;
        for (int row = 0; row < dim; ++row) {
            const double pop = std::norm(eig.eigenvectors(row, col));
            if (pop > best_pop) {
                best_pop = pop;
                best = row;
            }
        }
        if (best_pop <= 0.5) {
            throw StrongCouplingError(
                "dress: eigenstate " + std::to_string(col) +
                " has maximum bare overlap " + std::to_string(best_pop) +
                " <= 0.5; dressed-state assignment is ambiguous");
        }
        label_of_column[col] = best;
        overlap_of_column[col] = best_pop;
    }

    std::vector<int> column_of_label(dim, -1);
    for (int col = 0; col < dim; ++col) {
        const int label = label_of_column[col];
        if (column_of_label[label] != -1) {
            throw StrongCouplingError("dress: two eigenstates map to bare label " +
                                      std::to_string(label));
        }
        column_of_label[label] = col;
    }

    // Reorder columns by bare label and fix each phase so the dominant
    // component is real positive.
    ComplexMatrix v(dim, dim);
    Eigen::VectorXd energies(dim);
    std::vector<double> overlaps(dim);
    for (int label = 0; label < dim; ++label) {
        const int col = column_of_label[label];
        Complex dominant = eig.eigenvectors(label, col);
        Complex phase = std::abs(dominant) > 0.0 ? dominant / std::abs(dominant)
                                                 : Complex(1, 0);
        v.col(label) = eig.eigenvectors.col(col) * std::conj(phase);
        energies(label) = eig.eigenvalues(col);
        overlaps[label] = overlap_of_column[col];
    }

    DressedSystem sys;
    sys.levels = model.levels;
    sys.h0_dressed = energies.cast<Complex>().asDiagonal();
    sys.basis_map = column_of_label;
    sys.overlaps = overlaps;

    const auto controls_bare = build_controls(model);
    for (int m = 0; m < 4; ++m) {
        ComplexMatrix c = v.adjoint() * controls_bare[m] * v;
        sys.controls[m] = 0.5 * (c + c.adjoint().eval());
    }

    const int L = model.levels;
    sys.comp_indices = {bare_index(0, 0, L), bare_index(0, 1, L),
                        bare_index(1, 0, L), bare_index(1, 1, L)};
    sys.projector = ComplexMatrix::Zero(dim, dim);
    for (int idx : sys.comp_indices) sys.projector(idx, idx) = Complex(1, 0);
    sys.n_s = 4;
    return sys;
}

std::pair<double, double> dressed_frequencies(const SystemModel& model) {
    const double d12 = model.qubit_detuning();
    if (d12 == 0.0) {
        throw DegenerateQubitsError(
            "dressed_frequencies: omega1 == omega2, perturbative shift diverges");
    }
    const double shift = model.coupling_j * model.coupling_j / d12;
    return {model.omega1 + shift, model.omega2 - shift};
}

double effective_zx_coefficient(const SystemModel& model) {
    const double d12 = model.qubit_detuning();
    if (d12 == 0.0) {
        throw DegenerateQubitsError("effective_zx_coefficient: omega1 == omega2");
    }
    return model.coupling_j / d12;
}

}  // namespace crpulse
