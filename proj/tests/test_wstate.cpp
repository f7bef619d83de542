#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "iftsim/error.hpp"
#include "iftsim/simulate.hpp"
#include "iftsim/wstate.hpp"
#include "oracles.hpp"

using namespace ift;

namespace {

WCoefficients make_coeffs(const std::vector<double>& c, const std::vector<double>& phi) {
    WCoefficients w;
    w.c = c;
    w.phi = phi.empty() ? std::vector<double>(c.size(), 0.0) : phi;
    return w;
}

WCoefficients uniform_coeffs(int d) {
    return make_coeffs(std::vector<double>(d, 1.0 / std::sqrt(double(d))), {});
}

WCoefficients gaussian_coeffs(int d, double width = 1.4) {
    std::vector<double> c(d);
    double s = 0;
    for (int i = 0; i < d; ++i) {
        double x = (i - (d - 1) / 2.0) / width;
        c[i] = std::exp(-0.5 * x * x);
        s += c[i] * c[i];
    }
    for (double& v : c) v /= std::sqrt(s);
    return make_coeffs(c, {});
}

StateVector target_state(const WCoefficients& w, int n_qubits) {
    StateVector t(n_qubits);
    for (int i = 0; i < w.d(); ++i)
        t.amp[uint64_t{1} << i] = w.c[i] * std::exp(cd{0.0, w.phi[i]});
    return t;
}

StateVector strip_top_qubit(const StateVector& psi) {
    // the dropped qubit must hold |0>
    StateVector out(psi.n_qubits - 1);
    for (uint64_t b = 0; b < out.dim(); ++b) out.amp[b] = psi.amp[b];
    double leak = 0;
    for (uint64_t b = out.dim(); b < psi.dim(); ++b) leak += std::norm(psi.amp[b]);
    REQUIRE(leak < 1e-20);
    return out;
}

} // namespace

TEST_SUITE_BEGIN("wstate");

TEST_CASE("linear ladder prepares arbitrary seeds exactly") {
    std::mt19937_64 rng(21);
    for (int d : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}) {
        auto w = make_coeffs(oracle::random_coefficients(d, rng),
                             oracle::random_phases(d, rng));
        auto circ = linear_circuit(w);
        CHECK(circ.n_qubits == d);
        StateVector psi = StateVector::zero_state(d);
        apply_unitary(psi, circ);
        CHECK(fidelity(psi, target_state(w, d)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(circ.two_qubit_depth() <= 2 * (d / 2) + 2);
        CHECK(circ.two_qubit_count() <= 2 * d);
    }
}

TEST_CASE("linear ladder solves the uniform three-site angles") {
    auto circ = linear_circuit(uniform_coeffs(3));
    const auto* first = std::get_if<Gate>(&circ.ops[0]);
    REQUIRE(first != nullptr);
    CHECK(first->kind == GateKind::RY);
    CHECK(first->angle == doctest::Approx(1.91063).epsilon(1e-5));
    // the single transfer splits the remaining weight evenly: theta = pi/2
    bool found_half_pi = false;
    for (const auto& op : circ.ops) {
        if (const auto* g = std::get_if<Gate>(&op)) {
            if (g->kind == GateKind::RY && g->sites[0] == 2 &&
                std::abs(std::abs(g->angle) -
                         std::abs((std::numbers::pi / 2 - std::numbers::pi) / 2)) < 1e-9)
                found_half_pi = true;
        }
    }
    CHECK(found_half_pi);
}

TEST_CASE("single-site packet is one X gate") {
    auto circ = linear_circuit(make_coeffs({1.0}, {}));
    REQUIRE(circ.ops.size() == 1);
    CHECK(std::get<Gate>(circ.ops[0]).kind == GateKind::X);
}

TEST_CASE("ancilla-assisted builder is exact with the ancilla returned") {
    std::mt19937_64 rng(31);
    for (int d : {6, 10}) {
        auto w = make_coeffs(oracle::random_coefficients(d, rng),
                             oracle::random_phases(d, rng));
        auto circ = heavyhex_circuit(w);
        CHECK(circ.n_qubits == d + 1);
        StateVector psi = StateVector::zero_state(d + 1);
        apply_unitary(psi, circ);
        auto data = strip_top_qubit(psi);
        CHECK(fidelity(data, target_state(w, d)) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(circ.two_qubit_depth() == 7 + 2 * ((d - 2 + 3) / 4));
    }
    CHECK_THROWS_AS(heavyhex_circuit(uniform_coeffs(8)), InvalidArgument);
}

TEST_CASE("ancilla-assisted builder handles a delta packet") {
    std::vector<double> c(6, 0.0);
    c[3] = 1.0;
    auto circ = heavyhex_circuit(make_coeffs(c, {}));
    StateVector psi = StateVector::zero_state(7);
    apply_unitary(psi, circ);
    auto data = strip_top_qubit(psi);
    CHECK(std::abs(data.amp[uint64_t{1} << 3]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("doubling-tree builder is exact at logarithmic depth") {
    std::mt19937_64 rng(41);
    for (int d : {2, 3, 5, 6, 8, 11}) {
        auto w = make_coeffs(oracle::random_coefficients(d, rng),
                             oracle::random_phases(d, rng));
        auto circ = logdepth_circuit(w);
        StateVector psi = StateVector::zero_state(d);
        apply_unitary(psi, circ);
        CHECK(fidelity(psi, target_state(w, d)) == doctest::Approx(1.0).epsilon(1e-10));
        int levels = 0;
        while ((1 << levels) < d) ++levels;
        CHECK(circ.two_qubit_depth() == 2 * levels);
    }
}

TEST_CASE("doubling-tree builder on two uniform sites") {
    auto circ = logdepth_circuit(uniform_coeffs(2));
    StateVector psi = StateVector::zero_state(2);
    apply_unitary(psi, circ);
    CHECK(std::abs(psi.amp[1]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(psi.amp[2]) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("constant-depth protocol: two sites") {
    auto w = make_coeffs({0.6, 0.8}, {0.4, -1.2});
    auto mc = mcmff_circuit(w, 0.3);
    auto out = run_post_selected(StateVector::zero_state(2), mc.circuit,
                                 {{mc.parity_reg, 1}});
    CHECK(out.probability == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(fidelity(out.state, target_state(w, 2)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(predict_infidelity(w, 0.3) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("constant-depth protocol: uniform eight sites") {
    auto w = uniform_coeffs(8);
    const double delta = 0.2;
    auto mc = mcmff_circuit(w, delta);
    auto out = run_post_selected(StateVector::zero_state(8), mc.circuit,
                                 {{mc.parity_reg, 1}});
    CHECK(out.probability == doctest::Approx(predict_success(w, delta)).epsilon(1e-12));
    // uniform pair weights: the overlap infidelity equals the closed form
    double infid = 1.0 - fidelity(out.state, target_state(w, 8));
    CHECK(infid == doctest::Approx(predict_infidelity(w, delta)).epsilon(1e-10));
    CHECK(mc.circuit.two_qubit_depth() <= 13);
}

TEST_CASE("constant-depth protocol: random packets") {
    std::mt19937_64 rng(51);
    for (int d : {4, 6, 10, 12}) {
        auto w = make_coeffs(oracle::random_coefficients(d, rng),
                             oracle::random_phases(d, rng));
        double delta = 0.1 + 0.2 * (d % 3);
        auto mc = mcmff_circuit(w, delta);
        auto branches = run_enumerate(StateVector::zero_state(d), mc.circuit);
        double p = 0.0;
        const StateVector* first = nullptr;
        double single_excitation_weight = -1.0;
        for (const auto& b : branches) {
            if (b.record.at(mc.parity_reg) != 1) continue;
            p += b.probability;
            if (!first) {
                first = &b.state;
                single_excitation_weight = 0.0;
                for (int n = 0; n < d; ++n)
                    single_excitation_weight += std::norm(b.state.amp[uint64_t{1} << n]);
            } else {
                CHECK(fidelity(*first, b.state) == doctest::Approx(1.0).epsilon(1e-10));
            }
        }
        REQUIRE(first != nullptr);
        CHECK(p == doctest::Approx(predict_success(w, delta)).epsilon(1e-12));
        // the closed-form infidelity is exactly the weight outside the
        // single-excitation sector of the post-selected state
        CHECK(1.0 - single_excitation_weight ==
              doctest::Approx(predict_infidelity(w, delta)).epsilon(1e-11));
        // and the overlap infidelity approaches it at small delta
        auto mc2 = mcmff_circuit(w, 1e-5);
        auto out2 = run_post_selected(StateVector::zero_state(d), mc2.circuit,
                                      {{mc2.parity_reg, 1}});
        CHECK(fidelity(out2.state, target_state(w, d)) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("constant-depth protocol stays constant depth") {
    for (int d : {4, 8, 12, 16}) {
        auto mc = mcmff_circuit(uniform_coeffs(d), 0.25);
        CHECK(mc.circuit.two_qubit_depth() <= 13);
    }
}

TEST_CASE("success and infidelity predictions") {
    std::mt19937_64 rng(61);
    SUBCASE("series consistency at small delta") {
        auto w = make_coeffs(oracle::random_coefficients(8, rng), {});
        double p = predict_success(w, 1e-3);
        CHECK(std::abs(p - 1e-3) <= 2e-6);
    }
    SUBCASE("monotone approach of the uniform limit") {
        const double delta = 0.2;
        double limit = 0.5 * (1.0 - std::exp(-2.0 * delta));
        double prev = 1.0;
        for (int d : {8, 16, 32}) {
            double p = predict_success(uniform_coeffs(d), delta);
            CHECK(p > limit);
            CHECK(p < prev);
            prev = p;
        }
    }
    SUBCASE("lower bound over random packets") {
        for (int trial = 0; trial < 200; ++trial) {
            int d = 2 * (2 + static_cast<int>(rng() % 5)); // 4..12
            auto w = make_coeffs(oracle::random_coefficients(d, rng), {});
            double delta = 0.1 + 0.9 * (rng() % 10) / 10.0;
            CHECK(predict_success(w, delta) >= 0.43 * delta);
        }
    }
}

TEST_CASE("fusion: symmetric packets succeed half the time, exactly") {
    std::mt19937_64 rng(71);
    for (int d : {6, 10}) {
        auto w = gaussian_coeffs(d);
        w.phi = oracle::random_phases(d, rng);
        auto fc = fusion_circuit(w);
        CHECK_FALSE(fc.asymmetric_split);
        CHECK(fc.predicted_success == doctest::Approx(0.5));
        auto branches = run_enumerate(StateVector::zero_state(d), fc.circuit);
        double p = 0.0;
        auto target = target_state(w, d);
        for (const auto& b : branches) {
            if (b.record.at(fc.reg_u) != 1) continue;
            p += b.probability;
            CHECK(fidelity(b.state, target) == doctest::Approx(1.0).epsilon(1e-10));
        }
        CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("fusion: the 11 outcome needs its feedforward") {
    auto w = gaussian_coeffs(6);
    auto fc = fusion_circuit(w);
    Circuit without(fc.circuit.n_qubits);
    for (const auto& op : fc.circuit.ops) {
        if (std::holds_alternative<Conditional>(op)) continue;
        without.add(op);
    }
    auto target = target_state(w, 6);
    for (const auto& b : run_enumerate(StateVector::zero_state(6), without)) {
        if (b.record.at(fc.reg_u) == 1 && b.record.at(fc.reg_v) == 1) {
            CHECK(fidelity(b.state, target) < 0.999);
        }
        if (b.record.at(fc.reg_u) == 1 && b.record.at(fc.reg_v) == 0) {
            CHECK(fidelity(b.state, target) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("fusion: the 00 outcome carries the vacuum component") {
    auto w = gaussian_coeffs(6);
    auto fc = fusion_circuit(w);
    for (const auto& b : run_enumerate(StateVector::zero_state(6), fc.circuit)) {
        if (b.record.at(fc.reg_u) == 0 && b.record.at(fc.reg_v) == 0) {
            // a0 = b2 = 1/sqrt(2): |0...0> weight a0^2 b2^2 normalized by
            // P(00) = (1 - a0^2 - b2^2 + 2 a0^2 b2^2) / 2
            CHECK(std::norm(b.state.amp[0]) == doctest::Approx(0.5).epsilon(1e-10));
            CHECK(b.probability == doctest::Approx(0.25).epsilon(1e-12));
        }
    }
}

TEST_CASE("fusion: asymmetric packets keep fidelity through the adjusted split") {
    std::mt19937_64 rng(81);
    std::vector<double> c = oracle::random_coefficients(6, rng);
    c[0] = 1.3 * c[0] + 0.4; // force asymmetry
    double s = 0;
    for (double v : c) s += v * v;
    for (double& v : c) v /= std::sqrt(s);
    auto w = make_coeffs(c, {});
    auto fc = fusion_circuit(w);
    CHECK(fc.asymmetric_split);
    auto target = target_state(w, 6);
    double p = 0.0;
    for (const auto& b : run_enumerate(StateVector::zero_state(6), fc.circuit)) {
        if (b.record.at(fc.reg_u) != 1) continue;
        p += b.probability;
        CHECK(fidelity(b.state, target) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(p == doctest::Approx(fc.predicted_success).epsilon(1e-10));
}

TEST_CASE("all constructions agree on the same packet") {
    std::mt19937_64 rng(91);
    const int d = 6;
    auto w = gaussian_coeffs(d);
    w.phi = oracle::random_phases(d, rng);
    auto target = target_state(w, d);

    StateVector lin = StateVector::zero_state(d);
    apply_unitary(lin, linear_circuit(w));
    StateVector log = StateVector::zero_state(d);
    apply_unitary(log, logdepth_circuit(w));
    StateVector hex = StateVector::zero_state(d + 1);
    apply_unitary(hex, heavyhex_circuit(w));
    auto hex_data = strip_top_qubit(hex);
    auto fus = fusion_circuit(w);
    auto fus_out =
        run_post_selected(StateVector::zero_state(d), fus.circuit, {{fus.reg_u, 1}});
    auto mc = mcmff_circuit(w, 1e-6); // vanishing delta: exact output
    auto mc_out =
        run_post_selected(StateVector::zero_state(d), mc.circuit, {{mc.parity_reg, 1}});

    const StateVector* states[] = {&lin, &log, &hex_data, &fus_out.state, &mc_out.state};
    for (const auto* a : states) {
        for (const auto* b : states) {
            CHECK(fidelity(*a, *b) == doctest::Approx(1.0).epsilon(1e-10));
        }
        CHECK(fidelity(*a, target) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("builders reject unnormalized input") {
    CHECK_THROWS_AS(linear_circuit(make_coeffs({0.5, 0.5}, {})), InvalidArgument);
    CHECK_THROWS_AS(mcmff_circuit(uniform_coeffs(3), 0.2), InvalidArgument);
    CHECK_THROWS_AS(mcmff_circuit(uniform_coeffs(4), 1.5), InvalidArgument);
    CHECK_THROWS_AS(fusion_circuit(uniform_coeffs(4)), InvalidArgument);
}

TEST_SUITE_END();
