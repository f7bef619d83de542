#include "iftsim/ising.hpp"

#include <cmath>
#include <string>

#include "iftsim/error.hpp"

namespace ift {

void validate(const IsingModel& model) {
    if (model.L < 2) {
        throw InvalidArgument("IsingModel: L must be >= 2, got " + std::to_string(model.L));
    }
}

std::vector<PauliString> hamiltonian_terms(const IsingModel& model) {
    validate(model);
    const int L = model.L;
    std::vector<PauliString> terms;
    const int n_bonds = model.boundary == Boundary::PBC ? L : L - 1;
    for (int n = 0; n < n_bonds; ++n) {
        terms.push_back(PauliString(-1.0, {{n, Pauli::Z}, {(n + 1) % L, Pauli::Z}}));
    }
    for (int n = 0; n < L; ++n) {
        if (model.g_x != 0.0) terms.push_back(PauliString(-model.g_x, {{n, Pauli::X}}));
        if (model.g_z != 0.0) terms.push_back(PauliString(-model.g_z, {{n, Pauli::Z}}));
    }
    return merge_terms(std::move(terms));
}

std::vector<PauliString> energy_density_terms(const IsingModel& model, int n) {
    validate(model);
    const int L = model.L;
    if (n < 0 || n >= L) {
        throw InvalidArgument("energy_density_terms: site " + std::to_string(n) +
                              " out of range for L=" + std::to_string(L));
    }
    std::vector<PauliString> terms;
    auto bond = [&](int a, double w) {
        terms.push_back(PauliString(-w, {{a % L, Pauli::Z}, {(a + 1) % L, Pauli::Z}}));
    };
    if (model.boundary == Boundary::PBC) {
        bond((n - 1 + L) % L, 0.5);
        bond(n, 0.5);
    } else if (L == 2) {
        // Degenerate two-site open chain: split the single bond evenly.
        bond(0, 0.5);
    } else {
        // Edge sites own their bond with full weight; the sites next to an
        // edge carry only half of their interior bond.
        if (n == 0) {
            bond(0, 1.0);
        } else if (n == L - 1) {
            bond(L - 2, 1.0);
        } else {
            if (n - 1 > 0) bond(n - 1, 0.5);
            if (n + 1 < L - 1) bond(n, 0.5);
        }
    }
    if (model.g_x != 0.0) terms.push_back(PauliString(-model.g_x, {{n, Pauli::X}}));
    if (model.g_z != 0.0) terms.push_back(PauliString(-model.g_z, {{n, Pauli::Z}}));
    return merge_terms(std::move(terms));
}

double scaling_ratio(const IsingModel& model) {
    if (model.g_z == 0.0) {
        throw InvalidArgument("scaling_ratio: g_z must be nonzero");
    }
    return (model.g_x - 1.0) / std::pow(std::abs(model.g_z), 8.0 / 15.0);
}

} // namespace ift
