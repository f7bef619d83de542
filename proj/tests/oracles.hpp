#pragma once

// Dense-matrix test oracles built independently of the library's bit-mask
// kernels: explicit Kronecker products, dense exponentials, full unitaries.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "iftsim/circuit.hpp"
#include "iftsim/pauli.hpp"
#include "iftsim/state_vector.hpp"

namespace oracle {

using ift::cd;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli_matrix(char p) {
    Mat m(2, 2);
    switch (p) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cd{0, -1}, cd{0, 1}, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::runtime_error("bad pauli");
    }
    return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Matrix of a single-site operator on qubit q of an L-qubit register,
/// little-endian (qubit 0 = least significant factor).
inline Mat at_site(const Mat& op, int q, int L) {
    Mat out = Mat::Identity(1, 1);
    for (int n = L - 1; n >= 0; --n) out = kron(out, n == q ? op : pauli_matrix('I'));
    return out;
}

inline Mat dense_operator(const std::vector<ift::PauliString>& terms, int L) {
    const int dim = 1 << L;
    Mat out = Mat::Zero(dim, dim);
    for (const auto& t : terms) {
        Mat m = Mat::Identity(dim, dim);
        for (const auto& [site, p] : t.factors) {
            char c = p == ift::Pauli::X ? 'X' : p == ift::Pauli::Y ? 'Y' : 'Z';
            m = m * at_site(pauli_matrix(c), site, L);
        }
        out += t.coefficient * m;
    }
    return out;
}

inline Mat gate_matrix_2x2(const ift::Gate& g) {
    using ift::GateKind;
    const cd i{0, 1};
    const double t = g.angle;
    Mat m(2, 2);
    switch (g.kind) {
        case GateKind::X: m << 0, 1, 1, 0; break;
        case GateKind::H: m << 1, 1, 1, -1; m /= std::sqrt(2.0); break;
        case GateKind::S: m << 1, 0, 0, i; break;
        case GateKind::Sdg: m << 1, 0, 0, -i; break;
        case GateKind::Htilde: {
            Mat s(2, 2), h(2, 2);
            s << 1, 0, 0, i;
            h << 1, 1, 1, -1;
            h /= std::sqrt(2.0);
            m = s * h * s.adjoint();
            break;
        }
        case GateKind::RX:
            m << std::cos(t / 2), -i * std::sin(t / 2), -i * std::sin(t / 2), std::cos(t / 2);
            break;
        case GateKind::RY:
            m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
            break;
        case GateKind::RZ:
            m << std::exp(-i * (t / 2)), 0, 0, std::exp(i * (t / 2));
            break;
        default: throw std::runtime_error("not a one-qubit gate");
    }
    return m;
}

/// Full 2^L unitary of one gate.
inline Mat gate_unitary(const ift::Gate& g, int L) {
    using ift::GateKind;
    const int dim = 1 << L;
    if (!ift::gate_is_two_qubit(g.kind)) {
        return at_site(gate_matrix_2x2(g), g.sites[0], L);
    }
    Mat out = Mat::Zero(dim, dim);
    // embed the 4x4 on (a, b) by explicit index arithmetic
    Eigen::Matrix4cd u;
    const cd i{0, 1};
    const double t = g.angle;
    switch (g.kind) {
        case GateKind::CNOT:
            u.setZero();
            u(0, 0) = u(1, 1) = 1;
            u(2, 3) = u(3, 2) = 1;
            break;
        case GateKind::CZ:
            u.setIdentity();
            u(3, 3) = -1;
            break;
        case GateKind::RZZ:
            u.setZero();
            u(0, 0) = u(3, 3) = std::exp(-i * (t / 2));
            u(1, 1) = u(2, 2) = std::exp(i * (t / 2));
            break;
        case GateKind::CRY:
            u.setIdentity();
            u(2, 2) = std::cos(t / 2);
            u(2, 3) = -std::sin(t / 2);
            u(3, 2) = std::sin(t / 2);
            u(3, 3) = std::cos(t / 2);
            break;
        default: throw std::runtime_error("bad 2q gate");
    }
    const uint64_t ba = uint64_t{1} << g.sites[0], bb = uint64_t{1} << g.sites[1];
    for (uint64_t col = 0; col < static_cast<uint64_t>(dim); ++col) {
        int cin = ((col & ba) ? 2 : 0) | ((col & bb) ? 1 : 0);
        uint64_t base = col & ~(ba | bb);
        for (int r = 0; r < 4; ++r) {
            uint64_t row = base | ((r & 2) ? ba : 0) | ((r & 1) ? bb : 0);
            out(row, col) += u(r, cin);
        }
    }
    return out;
}

/// Product of the circuit's gates (unitary circuits only).
inline Mat circuit_unitary(const ift::Circuit& c) {
    const int dim = 1 << c.n_qubits;
    Mat u = Mat::Identity(dim, dim);
    for (const auto& op : c.ops) {
        const auto* g = std::get_if<ift::Gate>(&op);
        if (!g) throw std::runtime_error("circuit_unitary: not a unitary circuit");
        u = gate_unitary(*g, c.n_qubits) * u;
    }
    return u;
}

inline Mat expm_hermitian(const Mat& h, cd factor) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Mat out = Mat::Zero(h.rows(), h.cols());
    for (int i = 0; i < h.rows(); ++i) {
        out += std::exp(factor * es.eigenvalues()[i]) * es.eigenvectors().col(i) *
               es.eigenvectors().col(i).adjoint();
    }
    return out;
}

inline Vec to_eigen(const ift::StateVector& psi) {
    Vec v(psi.dim());
    for (size_t i = 0; i < psi.dim(); ++i) v[i] = psi.amp[i];
    return v;
}

inline ift::StateVector from_eigen(const Vec& v, int n_qubits) {
    ift::StateVector psi(n_qubits);
    for (int i = 0; i < v.size(); ++i) psi.amp[i] = v[i];
    return psi;
}

inline std::vector<double> random_coefficients(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::vector<double> c(d);
    double s = 0.0;
    for (double& v : c) {
        v = unif(rng);
        s += v * v;
    }
    for (double& v : c) v /= std::sqrt(s);
    return c;
}

inline std::vector<double> random_phases(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-3.14159, 3.14159);
    std::vector<double> p(d);
    for (double& v : p) v = unif(rng);
    return p;
}

} // namespace oracle
