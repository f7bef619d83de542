#include "iftsim/wstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "iftsim/error.hpp"

namespace ift {

namespace {

constexpr double kZeroWeight = 1e-28; // amplitudes below 1e-14 are exact zeros

void check_normalized(const WCoefficients& coeffs) {
    double s = 0.0;
    for (double c : coeffs.c) s += c * c;
    if (std::abs(s - 1.0) > 1e-12)
        throw InvalidArgument("W coefficients are not normalized");
}

/// Angle with cos^2(theta/2) = keep / (keep + pass), solved from the exact
/// weights so that vanishing branches give exact 0 or pi.
double split_angle(double keep_w, double pass_w) {
    if (keep_w + pass_w < kZeroWeight) return 0.0;
    return 2.0 * std::atan2(std::sqrt(std::max(pass_w, 0.0)),
                            std::sqrt(std::max(keep_w, 0.0)));
}

/// Moves the sin(theta/2) share of an excitation from src to dst:
/// |1_src 0_dst> -> cos(theta/2)|10> + sin(theta/2)|01>, |00> fixed.
/// Two CNOTs.
void emit_transfer(Circuit& c, double theta, int src, int dst) {
    const double phi = theta - std::numbers::pi;
    c.gate(GateKind::RY, dst, -phi / 2);
    c.gate2(GateKind::CNOT, src, dst);
    c.gate(GateKind::RY, dst, phi / 2);
    c.gate2(GateKind::CNOT, dst, src);
}

void emit_phase_layer(Circuit& c, const std::vector<double>& phi, int offset = 0) {
    for (size_t n = 0; n < phi.size(); ++n) {
        if (phi[n] != 0.0) c.gate(GateKind::RZ, static_cast<int>(n) + offset, phi[n]);
    }
}

double suffix_weight(const std::vector<double>& w, int from) {
    double s = 0.0;
    for (size_t i = from; i < w.size(); ++i) s += w[i];
    return s;
}

double prefix_weight(const std::vector<double>& w, int to_excl) {
    double s = 0.0;
    for (int i = 0; i < to_excl; ++i) s += w[i];
    return s;
}

// Ladder ops for magnitudes `cc` (odd length) emitted on a circuit with the
// local site i mapped to qubit i + offset. Skips transfers whose passed
// weight is exactly zero, so a zero-amplitude pad site is never touched.
void emit_ladder(Circuit& circ, const std::vector<double>& cc, int offset) {
    const int dd = static_cast<int>(cc.size());
    const int eta = (dd - 1) / 2;
    std::vector<double> w(dd);
    for (int i = 0; i < dd; ++i) w[i] = cc[i] * cc[i];
    const double up = suffix_weight(w, eta);
    const double lo = prefix_weight(w, eta);
    circ.gate(GateKind::RY, eta + offset, split_angle(lo, up));
    if (eta >= 1 && lo >= kZeroWeight) {
        // seed the lower branch; skipped entirely when it carries no weight,
        // which also keeps an even-d pad site untouched
        circ.gate2(GateKind::CNOT, eta + offset, eta - 1 + offset);
        circ.gate(GateKind::X, eta - 1 + offset);
    }
    for (int j = 0; j < eta; ++j) {
        double rest = suffix_weight(w, eta + j + 1);
        if (rest < kZeroWeight) break;
        emit_transfer(circ, split_angle(w[eta + j], rest), eta + j + offset,
                      eta + j + 1 + offset);
    }
    for (int j = 1; j < eta; ++j) {
        double rest = prefix_weight(w, eta - j);
        if (rest < kZeroWeight) break;
        emit_transfer(circ, split_angle(w[eta - j], rest), eta - j + offset,
                      eta - j - 1 + offset);
    }
}

} // namespace

Circuit linear_circuit(const WCoefficients& coeffs) {
    check_normalized(coeffs);
    const int d = coeffs.d();
    Circuit circ(d);
    if (d == 1) {
        circ.gate(GateKind::X, 0);
        emit_phase_layer(circ, coeffs.phi);
        return circ;
    }
    const bool pad = (d % 2 == 0);
    std::vector<double> cc = coeffs.c;
    if (pad) cc.insert(cc.begin(), 0.0);
    // with a pad the local ladder index i corresponds to qubit i - 1
    emit_ladder(circ, cc, pad ? -1 : 0);
    emit_phase_layer(circ, coeffs.phi);
    return circ;
}

Circuit heavyhex_circuit(const WCoefficients& coeffs) {
    check_normalized(coeffs);
    const int d = coeffs.d();
    if (d % 4 != 2 || d < 6)
        throw InvalidArgument("heavyhex_circuit supports d = 2 mod 4, d >= 6");
    const int eta = (d - 2) / 4;
    const int A = d; // ancilla
    std::vector<double> w(d);
    for (int i = 0; i < d; ++i) w[i] = coeffs.c[i] * coeffs.c[i];
    auto range_w = [&](int a, int b) { // [a, b)
        double s = 0.0;
        for (int i = a; i < b; ++i) s += w[i];
        return s;
    };
    const double s1 = range_w(eta, 2 * eta);
    const double s2 = range_w(0, eta);
    const double s3 = range_w(2 * eta, 3 * eta + 1);
    const double s4 = range_w(3 * eta + 1, d);

    Circuit circ(d + 1);
    circ.gate(GateKind::RY, eta, split_angle(s2 + s3 + s4, s1));
    circ.gate2(GateKind::CNOT, eta, eta - 1);
    circ.gate(GateKind::X, eta - 1);
    emit_transfer(circ, split_angle(s2, s3 + s4), eta - 1, A);
    emit_transfer(circ, split_angle(0.0, 1.0), A, 3 * eta + 1); // hand everything over
    emit_transfer(circ, split_angle(s4, s3), 3 * eta + 1, 3 * eta);
    for (int j = 0; j + 1 < eta; ++j) { // S1 chain, eta .. 2 eta - 1
        double rest = range_w(eta + j + 1, 2 * eta);
        if (rest < kZeroWeight) break;
        emit_transfer(circ, split_angle(w[eta + j], rest), eta + j, eta + j + 1);
    }
    for (int j = 0; j + 1 < eta; ++j) { // S2 chain, eta - 1 .. 0
        double rest = range_w(0, eta - 1 - j);
        if (rest < kZeroWeight) break;
        emit_transfer(circ, split_angle(w[eta - 1 - j], rest), eta - 1 - j, eta - 2 - j);
    }
    for (int j = 0; j < eta; ++j) { // S4 chain, 3 eta + 1 .. d - 1
        double rest = range_w(3 * eta + 2 + j, d);
        if (rest < kZeroWeight) break;
        emit_transfer(circ, split_angle(w[3 * eta + 1 + j], rest), 3 * eta + 1 + j,
                      3 * eta + 2 + j);
    }
    for (int j = 0; j < eta; ++j) { // S3 chain, 3 eta .. 2 eta
        double rest = range_w(2 * eta, 3 * eta - j);
        if (rest < kZeroWeight) break;
        emit_transfer(circ, split_angle(w[3 * eta - j], rest), 3 * eta - j, 3 * eta - 1 - j);
    }
    emit_phase_layer(circ, coeffs.phi);
    return circ;
}

Circuit logdepth_circuit(const WCoefficients& coeffs) {
    check_normalized(coeffs);
    const int d = coeffs.d();
    Circuit circ(d);
    if (d == 1) {
        circ.gate(GateKind::X, 0);
        emit_phase_layer(circ, coeffs.phi);
        return circ;
    }
    std::vector<double> W(d);
    for (int i = 0; i < d; ++i) W[i] = coeffs.c[i] * coeffs.c[i];
    std::vector<int> levels;
    for (int n = 0; (1 << n) < d; ++n) levels.push_back(n);
    // solve angles backward: aggregate subtree weights up the doubling tree
    std::vector<std::vector<double>> theta(levels.size());
    std::vector<std::vector<bool>> skip(levels.size());
    for (int li = static_cast<int>(levels.size()) - 1; li >= 0; --li) {
        int n = levels[li];
        int count = std::min(1 << n, d - (1 << n));
        theta[li].resize(count);
        skip[li].resize(count);
        for (int j = 0; j < count; ++j) {
            int src = j, dst = (1 << n) + j;
            theta[li][j] = split_angle(W[src], W[dst]);
            skip[li][j] = W[dst] < kZeroWeight; // empty subtree, transfer is identity
            W[src] += W[dst];
        }
    }
    circ.gate(GateKind::X, 0);
    for (size_t li = 0; li < levels.size(); ++li) {
        int n = levels[li];
        int count = std::min(1 << n, d - (1 << n));
        for (int j = 0; j < count; ++j) {
            if (skip[li][j]) continue;
            emit_transfer(circ, theta[li][j], j, (1 << n) + j);
        }
    }
    // verify the factorized amplitudes reproduce the targets
    std::vector<double> check(d, 0.0);
    check[0] = 1.0;
    for (size_t li = 0; li < levels.size(); ++li) {
        int n = levels[li];
        int count = std::min(1 << n, d - (1 << n));
        for (int j = 0; j < count; ++j) {
            double t = theta[li][j];
            double moved = check[j] * std::sin(t / 2);
            check[j] *= std::cos(t / 2);
            check[(1 << n) + j] = moved;
        }
    }
    for (int i = 0; i < d; ++i) {
        if (std::abs(check[i] - coeffs.c[i]) > 1e-9)
            throw NumericalError("logdepth_circuit: angle system is singular at index " +
                                 std::to_string(i));
    }
    emit_phase_layer(circ, coeffs.phi);
    return circ;
}

McmffCircuit mcmff_circuit(const WCoefficients& coeffs, double delta) {
    check_normalized(coeffs);
    const int d = coeffs.d();
    if (d % 2 != 0) throw InvalidArgument("mcmff_circuit requires even d");
    if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must be in (0, 1]");
    const int m = d / 2;
    const auto& c = coeffs.c;
    std::vector<double> pairw(m);
    for (int n = 0; n < m; ++n) pairw[n] = c[2 * n] * c[2 * n] + c[2 * n + 1] * c[2 * n + 1];

    Circuit circ(d);
    int next_reg = 0;
    // seed amplitudes on the odd-numbered qubits
    for (int n = 0; n < m; ++n) {
        double s = std::sqrt(std::min(1.0, delta * pairw[n]));
        circ.gate(GateKind::RY, 2 * n + 1, 2.0 * std::asin(s));
    }
    circ.gate(GateKind::H, 0);

    // even qubits: chain members keep the entangled flag, links are consumed
    std::vector<int> members{0};
    for (int q = 4; q <= d - 2; q += 4) members.push_back(q);
    bool extension = (d - 2) % 4 != 0 && d >= 4;
    if (extension) members.push_back(d - 2);
    std::vector<int> links;
    for (int q = 2; q <= d - 2; q += 2) {
        if (std::find(members.begin(), members.end(), q) == members.end()) links.push_back(q);
    }
    for (int q : links) circ.gate(GateKind::H, q);
    for (int q : links) {
        if (q + 2 <= d - 2) circ.gate2(GateKind::CNOT, q, q + 2);
    }
    if (extension) circ.gate2(GateKind::CNOT, d - 4, d - 2);
    for (int q : links) circ.gate2(GateKind::CNOT, q - 2, q);
    std::vector<int> link_reg(links.size());
    for (size_t i = 0; i < links.size(); ++i) {
        link_reg[i] = next_reg++;
        circ.measure(links[i], link_reg[i]);
    }
    for (int qm : members) {
        if (qm == 0) continue;
        Predicate pred;
        pred.kind = Predicate::Kind::Parity;
        pred.parity = 1;
        for (size_t i = 0; i < links.size(); ++i) {
            if (links[i] < qm) pred.regs.push_back(link_reg[i]);
        }
        if (!pred.regs.empty()) circ.conditional(pred, Gate::one(GateKind::X, qm));
    }
    // parity kickback: one CZ from every odd qubit to a chain member
    for (int o = 1; o < d; o += 2) {
        int partner;
        if (o % 4 == 1) {
            partner = o - 1;
        } else {
            partner = (o + 1 <= d - 2 && (o + 1) % 4 == 0) ? o + 1 : o - 1;
        }
        circ.gate2(GateKind::CZ, o, partner);
    }
    // fold the members back onto q0
    std::vector<int> member_regs;
    for (int qm : members) {
        if (qm == 0) continue;
        int reg = next_reg++;
        member_regs.push_back(reg);
        circ.gate(GateKind::H, qm);
        circ.measure(qm, reg);
    }
    if (!member_regs.empty()) {
        Predicate pred;
        pred.kind = Predicate::Kind::Parity;
        pred.regs = member_regs;
        pred.parity = 1;
        circ.conditional(pred, Gate::one(GateKind::RZ, 0, std::numbers::pi)); // Z up to branch phase
    }
    circ.gate(GateKind::H, 0);
    int parity_reg = next_reg++;
    circ.measure(0, parity_reg);
    for (int q = 0; q < d; q += 2) circ.reset(q);
    // spread each pair's amplitude from the odd to the even site
    for (int n = 0; n < m; ++n) {
        if (pairw[n] < kZeroWeight) continue;
        emit_transfer(circ, split_angle(c[2 * n + 1] * c[2 * n + 1], c[2 * n] * c[2 * n]),
                      2 * n + 1, 2 * n);
    }
    emit_phase_layer(circ, coeffs.phi);
    return McmffCircuit{std::move(circ), parity_reg};
}

FusionCircuit fusion_circuit(const WCoefficients& coeffs) {
    check_normalized(coeffs);
    const int d = coeffs.d();
    if (d % 2 != 0 || d < 6) throw InvalidArgument("fusion_circuit requires even d >= 6");
    const int h = d / 2;
    const auto& c = coeffs.c;
    std::vector<double> w(d);
    for (int i = 0; i < d; ++i) w[i] = c[i] * c[i];
    const double w_lo = std::accumulate(w.begin(), w.begin() + h, 0.0);
    const double w_hi = 1.0 - w_lo;
    const bool symmetric = std::abs(w_lo - w_hi) < 1e-12;

    // choose the Bell weights a0^2 = u and b_{h-1}^2 = v; the constraint
    // u (1-v) w_hi = v (1-u) w_lo keeps the repaired halves proportional to
    // the target, and u is picked to maximize the success probability.
    double u = 0.5, v = 0.5, p_succ = 0.5;
    if (!symmetric) {
        auto v_of = [&](double uu) { return uu * w_hi / (uu * w_hi + (1.0 - uu) * w_lo); };
        auto p_of = [&](double uu) {
            double vv = v_of(uu);
            return uu + vv - 2.0 * uu * vv;
        };
        double a = 1e-9, b = 1.0 - 1e-9;
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        for (int it = 0; it < 200; ++it) {
            if (p_of(c1) > p_of(c2))
                b = c2;
            else
                a = c1;
            c1 = b - gr * (b - a);
            c2 = a + gr * (b - a);
        }
        u = 0.5 * (a + b);
        v = v_of(u);
        p_succ = p_of(u);
    }

    std::vector<double> bvec(h, 0.0), avec(h, 0.0);
    const double sb = w_lo > kZeroWeight ? std::sqrt((1.0 - v) / w_lo) : 0.0;
    const double sa = w_hi > kZeroWeight ? std::sqrt((1.0 - u) / w_hi) : 0.0;
    for (int n = 0; n < h - 2; ++n) bvec[n] = c[n] * sb;
    bvec[h - 2] = std::sqrt(w[h - 2] + w[h - 1]) * sb;
    bvec[h - 1] = std::sqrt(v);
    avec[0] = std::sqrt(u);
    avec[1] = std::sqrt(w[h] + w[h + 1]) * sa;
    for (int j = 2; j < h; ++j) avec[j] = c[h + j] * sa;

    Circuit circ(d);
    {
        WCoefficients half;
        half.c = bvec;
        half.phi.assign(h, 0.0);
        circ.append(embedded(linear_circuit(half), 0, d));
        half.c = avec;
        circ.append(embedded(linear_circuit(half), h, d));
    }
    // Bell measurement on u = q_h, v = q_{h-1}
    const int reg_u = 0, reg_v = 1;
    circ.gate2(GateKind::CNOT, h - 1, h);
    circ.gate(GateKind::H, h - 1);
    circ.measure(h, reg_u);
    circ.measure(h - 1, reg_v);
    {
        Predicate pred;
        pred.kind = Predicate::Kind::Match;
        pred.regs = {reg_u, reg_v};
        pred.bits = {1, 1};
        for (int q = h + 1; q < d; ++q)
            circ.conditional(pred, Gate::one(GateKind::RZ, q, std::numbers::pi));
    }
    circ.reset(h);
    circ.reset(h - 1);
    emit_transfer(circ, split_angle(w[h - 2], w[h - 1]), h - 2, h - 1);
    emit_transfer(circ, split_angle(w[h + 1], w[h]), h + 1, h);
    emit_phase_layer(circ, coeffs.phi);
    return FusionCircuit{std::move(circ), reg_u, reg_v, !symmetric, p_succ};
}

double predict_success(const WCoefficients& coeffs, double delta) {
    const int d = coeffs.d();
    if (d % 2 != 0) throw InvalidArgument("predict_success requires even d");
    double prod = 1.0;
    for (int n = 0; n < d / 2; ++n) {
        double wn = coeffs.c[2 * n] * coeffs.c[2 * n] +
                    coeffs.c[2 * n + 1] * coeffs.c[2 * n + 1];
        prod *= 1.0 - 2.0 * delta * wn;
    }
    return 0.5 - 0.5 * prod;
}

double predict_infidelity(const WCoefficients& coeffs, double delta) {
    const int d = coeffs.d();
    if (d % 2 != 0) throw InvalidArgument("predict_infidelity requires even d");
    const int m = d / 2;
    std::vector<double> wn(m);
    for (int n = 0; n < m; ++n)
        wn[n] = coeffs.c[2 * n] * coeffs.c[2 * n] + coeffs.c[2 * n + 1] * coeffs.c[2 * n + 1];
    double s = 0.0;
    for (int n = 0; n < m; ++n) {
        double t = delta * wn[n];
        for (int l = 0; l < m; ++l) {
            if (l != n) t *= 1.0 - delta * wn[l];
        }
        s += t;
    }
    return 1.0 - s / predict_success(coeffs, delta);
}

} // namespace ift
