#include "iftsim/trotter.hpp"

#include <bit>
#include <cmath>

#include "iftsim/lanczos.hpp"

namespace ift {

// H = -sum_bonds Z Z - g_x sum X - g_z sum Z, so each factor of the split is
// exp(+i a dt sum P) with a the (positive) coupling. RX(t) = exp(-i t X / 2)
// gives exp(+i g_x dt X) = RX(-2 g_x dt), and likewise for RZ and RZZ.

Circuit trotter_rx_layer(const IsingModel& model, double dt, double fraction) {
    Circuit c(model.L);
    if (model.g_x == 0.0) return c;
    for (int n = 0; n < model.L; ++n)
        c.gate(GateKind::RX, n, -2.0 * model.g_x * dt * fraction);
    return c;
}

Circuit trotter_rz_layer(const IsingModel& model, double dt) {
    Circuit c(model.L);
    if (model.g_z == 0.0) return c;
    for (int n = 0; n < model.L; ++n) c.gate(GateKind::RZ, n, -2.0 * model.g_z * dt);
    return c;
}

Circuit trotter_rzz_layer(const IsingModel& model, double dt) {
    Circuit c(model.L);
    const int n_bonds = model.boundary == Boundary::PBC ? model.L : model.L - 1;
    for (int n = 0; n < n_bonds; n += 2)
        c.gate2(GateKind::RZZ, n, (n + 1) % model.L, -2.0 * dt);
    for (int n = 1; n < n_bonds; n += 2)
        c.gate2(GateKind::RZZ, n, (n + 1) % model.L, -2.0 * dt);
    return c;
}

Circuit trotter_step_circuit(const IsingModel& model, double dt) {
    validate(model);
    Circuit c(model.L);
    c.append(trotter_rx_layer(model, dt, 0.5));
    c.append(trotter_rz_layer(model, dt));
    c.append(trotter_rzz_layer(model, dt));
    c.append(trotter_rx_layer(model, dt, 0.5));
    return c;
}

void evolve_exact(const IsingModel& model, double t, StateVector& psi) {
    auto terms = hamiltonian_terms(model);
    struct Masks {
        uint64_t flip, phase;
        double coeff;
    };
    std::vector<Masks> masks;
    double norm_bound = 0.0;
    for (const auto& s : terms) {
        uint64_t flip = 0, phase = 0;
        for (const auto& [site, p] : s.factors) {
            uint64_t bit = uint64_t{1} << site;
            if (p == Pauli::X) flip |= bit;
            if (p == Pauli::Y) {
                flip |= bit;
                phase |= bit;
            }
            if (p == Pauli::Z) phase |= bit;
        }
        masks.push_back({flip, phase, s.coefficient});
        norm_bound += std::abs(s.coefficient);
    }
    const size_t dim = psi.dim();
    MatVec apply = [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
        y.setZero();
        for (const Masks& m : masks) {
            for (size_t b = 0; b < dim; ++b) {
                double sign = (std::popcount(b & m.phase) & 1) ? -1.0 : 1.0;
                y[b ^ m.flip] += m.coeff * sign * x[b];
            }
        }
    };
    Eigen::VectorXcd vec = Eigen::Map<Eigen::VectorXcd>(psi.amp.data(), dim);
    krylov_exp_apply(apply, -t, norm_bound, vec); // exp(-i H t)
    Eigen::Map<Eigen::VectorXcd>(psi.amp.data(), dim) = vec;
}

} // namespace ift
