#include "iftsim/simulate.hpp"

#include <cmath>
#include <random>

#include "iftsim/error.hpp"

namespace ift {

double project_site(StateVector& psi, int site, int outcome) {
    const uint64_t bit = uint64_t{1} << site;
    double p = 0.0;
    for (uint64_t b = 0; b < psi.dim(); ++b) {
        bool one = b & bit;
        if (one == (outcome == 1)) p += std::norm(psi.amp[b]);
    }
    if (p > 0.0) {
        const double inv = 1.0 / std::sqrt(p);
        for (uint64_t b = 0; b < psi.dim(); ++b) {
            bool one = b & bit;
            if (one == (outcome == 1))
                psi.amp[b] *= inv;
            else
                psi.amp[b] = 0.0;
        }
    }
    return p;
}

namespace {

struct Branch {
    StateVector state;
    std::vector<int> record; // indexed by register id, -1 = unwritten
    double probability = 1.0;
};

int count_registers(const Circuit& c) { return c.max_register() + 1; }

std::map<int, int> to_map(const std::vector<int>& record) {
    std::map<int, int> m;
    for (size_t r = 0; r < record.size(); ++r) {
        if (record[r] >= 0) m[static_cast<int>(r)] = record[r];
    }
    return m;
}

// Walks the circuit over a set of live branches. `on_measure` decides the
// handling of each measurement: it receives the branch and the site/register
// and returns which outcomes to keep.
enum class MeasureMode { Sample, Enumerate, PostSelect };

} // namespace

std::vector<RunOutcome> run_enumerate(const StateVector& in, const Circuit& c,
                                      double prune_tol) {
    if (in.n_qubits != c.n_qubits)
        throw InvalidArgument("run: state and circuit qubit counts differ");
    int n_regs = count_registers(c);
    std::vector<Branch> live;
    live.push_back(Branch{in, std::vector<int>(n_regs, -1), 1.0});
    auto do_measure = [&](std::vector<Branch>& branches, int site, int reg) {
        std::vector<Branch> next;
        next.reserve(branches.size() * 2);
        for (Branch& br : branches) {
            for (int outcome : {0, 1}) {
                StateVector s = br.state;
                double p = project_site(s, site, outcome);
                if (p * br.probability <= prune_tol) continue;
                Branch nb{std::move(s), br.record, br.probability * p};
                if (reg >= 0) {
                    if (reg >= static_cast<int>(nb.record.size())) nb.record.resize(reg + 1, -1);
                    nb.record[reg] = outcome;
                }
                next.push_back(std::move(nb));
            }
        }
        branches = std::move(next);
    };
    int scratch_reg = n_regs; // hidden registers for resets
    for (const Op& op : c.ops) {
        if (const auto* g = std::get_if<Gate>(&op)) {
            for (Branch& br : live) apply_gate(br.state, *g);
        } else if (const auto* m = std::get_if<Measure>(&op)) {
            do_measure(live, m->site, m->reg);
        } else if (const auto* r = std::get_if<Reset>(&op)) {
            // measure into a hidden register, then flip conditionally
            int reg = scratch_reg++;
            do_measure(live, r->site, reg);
            for (Branch& br : live) {
                if (br.record[reg] == 1) apply_gate(br.state, Gate::one(GateKind::X, r->site));
            }
        } else {
            const auto& cond = std::get<Conditional>(op);
            for (Branch& br : live) {
                if (cond.pred.holds(br.record)) apply_gate(br.state, cond.gate);
            }
        }
    }
    std::vector<RunOutcome> out;
    out.reserve(live.size());
    for (Branch& br : live) {
        std::map<int, int> rec;
        for (int r = 0; r < n_regs; ++r) {
            if (br.record[r] >= 0) rec[r] = br.record[r];
        }
        out.push_back(RunOutcome{std::move(br.state), std::move(rec), br.probability});
    }
    return out;
}

RunOutcome run_sampled(const StateVector& in, const Circuit& c, uint64_t seed) {
    if (in.n_qubits != c.n_qubits)
        throw InvalidArgument("run: state and circuit qubit counts differ");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int n_regs = count_registers(c);
    Branch br{in, std::vector<int>(n_regs, -1), 1.0};
    auto sample_site = [&](int site, int reg) {
        StateVector probe = br.state;
        double p1 = project_site(probe, site, 1);
        int outcome = unif(rng) < p1 ? 1 : 0;
        double p = project_site(br.state, site, outcome);
        br.probability *= p;
        if (reg >= 0) {
            if (reg >= static_cast<int>(br.record.size())) br.record.resize(reg + 1, -1);
            br.record[reg] = outcome;
        }
        return outcome;
    };
    int scratch_reg = n_regs;
    for (const Op& op : c.ops) {
        if (const auto* g = std::get_if<Gate>(&op)) {
            apply_gate(br.state, *g);
        } else if (const auto* m = std::get_if<Measure>(&op)) {
            sample_site(m->site, m->reg);
        } else if (const auto* r = std::get_if<Reset>(&op)) {
            int reg = scratch_reg++;
            int outcome = sample_site(r->site, reg);
            if (outcome == 1) apply_gate(br.state, Gate::one(GateKind::X, r->site));
        } else {
            const auto& cond = std::get<Conditional>(op);
            if (cond.pred.holds(br.record)) apply_gate(br.state, cond.gate);
        }
    }
    return RunOutcome{std::move(br.state), to_map(br.record), br.probability};
}

RunOutcome run_post_selected(const StateVector& in, const Circuit& c,
                             const std::map<int, int>& required) {
    auto branches = run_enumerate(in, c);
    std::vector<const RunOutcome*> kept;
    double total = 0.0;
    for (const RunOutcome& b : branches) {
        bool ok = true;
        for (const auto& [reg, bit] : required) {
            auto it = b.record.find(reg);
            if (it == b.record.end() || it->second != bit) {
                ok = false;
                break;
            }
        }
        if (ok) {
            kept.push_back(&b);
            total += b.probability;
        }
    }
    if (kept.empty() || total < 1e-14) {
        throw NumericalError("post-selection on a zero-probability branch");
    }
    // With complete feedforward every kept branch carries the same state.
    for (size_t i = 1; i < kept.size(); ++i) {
        if (fidelity(kept[0]->state, kept[i]->state) < 1.0 - 1e-10) {
            throw NumericalError(
                "post-selected branches disagree; outcome is mixed, not a pure state");
        }
    }
    RunOutcome out = *kept[0];
    out.probability = total;
    return out;
}

void apply_unitary(StateVector& psi, const Circuit& c) {
    if (psi.n_qubits != c.n_qubits)
        throw InvalidArgument("apply_unitary: state and circuit qubit counts differ");
    for (const Op& op : c.ops) {
        const Gate* g = std::get_if<Gate>(&op);
        if (!g) throw InvalidArgument("apply_unitary: circuit is not measurement free");
        apply_gate(psi, *g);
    }
}

} // namespace ift
