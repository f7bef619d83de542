#include "iftsim/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include <nlohmann/json.hpp>

#include "iftsim/error.hpp"
#include "iftsim/simulate.hpp"
#include "iftsim/threading.hpp"

namespace ift {

PauliNoiseSpec PauliNoiseSpec::depolarizing(double p) {
    PauliNoiseSpec s;
    s.p_err = p;
    s.distribution.fill(p / 15.0);
    s.distribution[0] = 1.0 - p;
    return s;
}

void PauliNoiseSpec::validate() const {
    double sum = 0.0;
    for (double v : distribution) {
        if (v < -1e-12) throw InvalidArgument("noise distribution has negative entries");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidArgument("noise distribution does not sum to 1");
    if (std::abs(distribution[0] - (1.0 - p_err)) > 1e-9)
        throw InvalidArgument("identity probability must equal 1 - p_err");
}

namespace {

// single-qubit Pauli matrices indexed 0..3 = I,X,Y,Z
const cd kPauli[4][2][2] = {
    {{{1, 0}, {0, 0}}, {{0, 0}, {1, 0}}},
    {{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}},
    {{{0, 0}, {0, -1}}, {{0, 1}, {0, 0}}},
    {{{1, 0}, {0, 0}}, {{0, 0}, {-1, 0}}},
};

Eigen::Matrix4cd kron2(int p1, int p2) {
    Eigen::Matrix4cd m;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    m(2 * a + c, 2 * b + d) = kPauli[p1][a][b] * kPauli[p2][c][d];
    return m;
}

Eigen::Matrix4cd gate_matrix(GateKind kind, double angle) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    if (kind == GateKind::CZ) {
        m(3, 3) = -1.0;
    } else if (kind == GateKind::RZZ) {
        cd pe = std::exp(cd{0.0, -angle / 2}), po = std::exp(cd{0.0, angle / 2});
        m(0, 0) = pe;
        m(1, 1) = po;
        m(2, 2) = po;
        m(3, 3) = pe;
    } else {
        throw InvalidArgument("twirl set: unsupported gate");
    }
    return m;
}

} // namespace

TwirlSet twirl_sets(GateKind gate) {
    TwirlSet set;
    set.gate = gate;
    if (gate == GateKind::RZZ) {
        set.tuples = {
            {0, 0, 0, 0}, {1, 1, 1, 1}, {2, 2, 2, 2}, {3, 3, 3, 3},
            {1, 2, 1, 2}, {2, 1, 2, 1}, {3, 0, 3, 0}, {0, 3, 0, 3},
        };
        return set;
    }
    if (gate == GateKind::CZ) {
        // compensate each (P1, P2) by its CZ conjugate, found numerically
        Eigen::Matrix4cd cz = gate_matrix(GateKind::CZ, 0.0);
        for (int p1 = 0; p1 < 4; ++p1) {
            for (int p2 = 0; p2 < 4; ++p2) {
                Eigen::Matrix4cd target = cz * kron2(p1, p2) * cz.adjoint();
                bool found = false;
                for (int q1 = 0; q1 < 4 && !found; ++q1) {
                    for (int q2 = 0; q2 < 4 && !found; ++q2) {
                        Eigen::Matrix4cd cand = kron2(q1, q2);
                        // target == phase * cand?
                        cd phase{0, 0};
                        double mismatch = 0.0;
                        for (int i = 0; i < 4 && mismatch < 1e-9; ++i)
                            for (int j = 0; j < 4; ++j) {
                                if (std::abs(cand(i, j)) > 0.5) {
                                    if (phase == cd{0, 0}) phase = target(i, j) / cand(i, j);
                                } else if (std::abs(target(i, j)) > 1e-9) {
                                    mismatch = 1.0;
                                }
                            }
                        if (mismatch < 1e-9 && std::abs(std::abs(phase) - 1.0) < 1e-9 &&
                            (target - phase * cand).norm() < 1e-9) {
                            set.tuples.push_back({p1, p2, q1, q2});
                            found = true;
                        }
                    }
                }
                if (!found) throw NumericalError("CZ twirl conjugate not found");
            }
        }
        return set;
    }
    throw InvalidArgument("twirl sets exist for CZ and RZZ only");
}

namespace {

void apply_pauli_1q(StateVector& psi, int pauli, int site) {
    if (pauli == 0) return;
    PauliString p(1.0, {{site, pauli == 1   ? Pauli::X
                               : pauli == 2 ? Pauli::Y
                                            : Pauli::Z}});
    // exp(i pi/2 P) = i P; the phase is irrelevant for expectation values
    apply_pauli_exponential(psi, p, std::numbers::pi / 2);
}

uint64_t mix_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

NoisyRunResult noisy_run(const Circuit& circuit, const PauliNoiseSpec& noise, bool twirling,
                         int shots, uint64_t seed,
                         const std::vector<Observable>& observables, int threads,
                         int bootstrap_n) {
    if (shots < 1) throw InvalidArgument("noisy_run: shots must be >= 1");
    noise.validate();
    const TwirlSet rzz_twirls = twirl_sets(GateKind::RZZ);
    const TwirlSet cz_twirls = twirl_sets(GateKind::CZ);

    NoisyRunResult result;
    result.labels.reserve(observables.size());
    for (const auto& o : observables) result.labels.push_back(o.label);
    result.samples.assign(observables.size(), std::vector<double>(shots, 0.0));

    const StateVector init = StateVector::zero_state(circuit.n_qubits);
    parallel_for(shots, threads, [&](int traj) {
        std::mt19937_64 rng(mix_seed(seed, traj));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        auto draw_error = [&](int a, int b, StateVector& psi) {
            double r = unif(rng);
            double acc = 0.0;
            int pick = 0;
            for (int i = 0; i < 16; ++i) {
                acc += noise.distribution[i];
                if (r < acc) {
                    pick = i;
                    break;
                }
            }
            apply_pauli_1q(psi, pick / 4, a);
            apply_pauli_1q(psi, pick % 4, b);
        };
        StateVector psi = init;
        std::vector<int> record(circuit.max_register() + 1, -1);
        for (const Op& op : circuit.ops) {
            if (const auto* g = std::get_if<Gate>(&op)) {
                if (gate_is_two_qubit(g->kind) && g->kind != GateKind::CRY) {
                    const TwirlSet& tw =
                        g->kind == GateKind::RZZ ? rzz_twirls : cz_twirls;
                    std::array<int, 4> tuple{0, 0, 0, 0};
                    if (twirling && (g->kind == GateKind::RZZ || g->kind == GateKind::CZ)) {
                        tuple = tw.tuples[static_cast<size_t>(unif(rng) * tw.tuples.size()) %
                                          tw.tuples.size()];
                        apply_pauli_1q(psi, tuple[0], g->sites[0]);
                        apply_pauli_1q(psi, tuple[1], g->sites[1]);
                    }
                    Gate noisy = *g;
                    if (g->kind == GateKind::RZZ)
                        noisy.angle += noise.coherent_rzz_overrotation;
                    apply_gate(psi, noisy);
                    if (twirling && (g->kind == GateKind::RZZ || g->kind == GateKind::CZ)) {
                        apply_pauli_1q(psi, tuple[2], g->sites[0]);
                        apply_pauli_1q(psi, tuple[3], g->sites[1]);
                    }
                    draw_error(g->sites[0], g->sites[1], psi);
                } else if (g->kind == GateKind::CRY) {
                    apply_gate(psi, *g);
                    draw_error(g->sites[0], g->sites[1], psi);
                } else {
                    apply_gate(psi, *g);
                }
            } else if (const auto* m = std::get_if<Measure>(&op)) {
                StateVector probe = psi;
                double p1 = project_site(probe, m->site, 1);
                int outcome = unif(rng) < p1 ? 1 : 0;
                project_site(psi, m->site, outcome);
                if (m->reg >= static_cast<int>(record.size())) record.resize(m->reg + 1, -1);
                record[m->reg] = outcome;
            } else if (const auto* r = std::get_if<Reset>(&op)) {
                StateVector probe = psi;
                double p1 = project_site(probe, r->site, 1);
                int outcome = unif(rng) < p1 ? 1 : 0;
                project_site(psi, r->site, outcome);
                if (outcome == 1) apply_gate(psi, Gate::one(GateKind::X, r->site));
            } else {
                const auto& cond = std::get<Conditional>(op);
                if (cond.pred.holds(record)) apply_gate(psi, cond.gate);
            }
        }
        for (size_t oi = 0; oi < observables.size(); ++oi) {
            result.samples[oi][traj] = expval(psi, observables[oi].terms);
        }
    });

    // means and bootstrap errors
    std::mt19937_64 brng(mix_seed(seed, 0xb001ull));
    result.mean.resize(observables.size());
    result.sigma.resize(observables.size());
    for (size_t oi = 0; oi < observables.size(); ++oi) {
        double m = 0.0;
        for (double v : result.samples[oi]) m += v;
        m /= shots;
        result.mean[oi] = m;
        std::vector<double> boots(bootstrap_n);
        for (int b = 0; b < bootstrap_n; ++b) {
            double s = 0.0;
            for (int i = 0; i < shots; ++i)
                s += result.samples[oi][brng() % shots];
            boots[b] = s / shots;
        }
        double bm = 0.0, bv = 0.0;
        for (double v : boots) bm += v;
        bm /= bootstrap_n;
        for (double v : boots) bv += (v - bm) * (v - bm);
        result.sigma[oi] = std::sqrt(bv / (bootstrap_n - 1));
    }
    return result;
}

std::vector<MitigatedObservable> odr_rescale(const NoisyRunResult& physics,
                                             const NoisyRunResult& mitigation,
                                             const std::vector<double>& mitigation_pred,
                                             int bootstrap_n, uint64_t seed) {
    if (physics.labels != mitigation.labels ||
        physics.labels.size() != mitigation_pred.size())
        throw InvalidArgument("odr_rescale: observable sets do not match");
    const size_t n = physics.labels.size();
    std::vector<MitigatedObservable> out(n);
    for (size_t i = 0; i < n; ++i) {
        MitigatedObservable& o = out[i];
        o.label = physics.labels[i];
        o.raw = physics.mean[i];
        if (std::abs(mitigation_pred[i]) < 1e-6) {
            o.usable = false;
            continue;
        }
        o.p_signal = mitigation.mean[i] / mitigation_pred[i];
        if (o.p_signal < 0.01) {
            o.usable = false;
            continue;
        }
        o.mitigated = o.raw / o.p_signal;
    }
    // bootstrap the full pipeline over trajectories of both runs
    std::mt19937_64 rng(mix_seed(seed, 0x0d2));
    const int np = physics.samples.empty() ? 0 : static_cast<int>(physics.samples[0].size());
    const int nm = mitigation.samples.empty() ? 0
                                              : static_cast<int>(mitigation.samples[0].size());
    std::vector<std::vector<double>> boots(n);
    for (int b = 0; b < bootstrap_n; ++b) {
        std::vector<int> ip(np), im(nm);
        for (int i = 0; i < np; ++i) ip[i] = static_cast<int>(rng() % np);
        for (int i = 0; i < nm; ++i) im[i] = static_cast<int>(rng() % nm);
        for (size_t oi = 0; oi < n; ++oi) {
            if (!out[oi].usable) continue;
            double sp = 0.0, sm = 0.0;
            for (int i : ip) sp += physics.samples[oi][i];
            for (int i : im) sm += mitigation.samples[oi][i];
            sp /= np;
            sm /= nm;
            double p = sm / mitigation_pred[oi];
            if (std::abs(p) < 1e-6) continue;
            boots[oi].push_back(sp / p);
        }
    }
    for (size_t oi = 0; oi < n; ++oi) {
        if (!out[oi].usable || boots[oi].size() < 2) continue;
        double bm = 0.0;
        for (double v : boots[oi]) bm += v;
        bm /= boots[oi].size();
        double bv = 0.0;
        for (double v : boots[oi]) bv += (v - bm) * (v - bm);
        out[oi].sigma = std::sqrt(bv / (boots[oi].size() - 1));
    }
    return out;
}

std::vector<double> energy_rescale(const std::vector<double>& e_odr, double e_total) {
    double sum = 0.0;
    for (double v : e_odr) sum += v;
    if (sum == 0.0 || sum * e_total < 0.0)
        throw NumericalError("energy_rescale: zero or sign-flipped total");
    std::vector<double> out(e_odr.size());
    for (size_t i = 0; i < e_odr.size(); ++i) out[i] = e_odr[i] * e_total / sum;
    return out;
}

std::string mitigation_report_json(const std::vector<MitigatedObservable>& obs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& o : obs) {
        arr.push_back({{"observable", o.label},
                       {"p_O", o.p_signal},
                       {"raw", o.raw},
                       {"mitigated", o.mitigated},
                       {"sigma", o.sigma},
                       {"usable", o.usable}});
    }
    return arr.dump(2);
}

} // namespace ift
