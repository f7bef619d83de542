#include "iftsim/adapt.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "iftsim/error.hpp"
#include "iftsim/threading.hpp"

namespace ift {

using json = nlohmann::json;

std::string ansatz_to_json(const OperatorPool& pool, const AdaptAnsatz& ansatz) {
    json steps = json::array();
    for (const auto& [op, theta] : ansatz.steps) {
        steps.push_back({{"operator", pool.ops.at(op).name}, {"theta", theta}});
    }
    json root{{"pool", pool_name(ansatz.pool)}, {"steps", steps}};
    return root.dump(2);
}

AdaptAnsatz ansatz_from_json(const OperatorPool& pool, const std::string& text) {
    json root = json::parse(text);
    AdaptAnsatz a;
    a.pool = pool_from_name(root.at("pool").get<std::string>());
    if (a.pool != pool.id) throw InvalidArgument("ansatz_from_json: pool mismatch");
    for (const json& s : root.at("steps")) {
        std::string name = s.at("operator").get<std::string>();
        int idx = -1;
        for (size_t i = 0; i < pool.ops.size(); ++i) {
            if (pool.ops[i].name == name) idx = static_cast<int>(i);
        }
        if (idx < 0) throw InvalidArgument("ansatz operator not in pool: " + name);
        a.steps.emplace_back(idx, s.at("theta").get<double>());
    }
    return a;
}

StateVector apply_ansatz(const OperatorPool& pool, const AdaptAnsatz& ansatz,
                         const StateVector& reference) {
    StateVector psi = reference;
    for (const auto& [op, theta] : ansatz.steps) {
        apply_pool_exponential(pool.ops.at(op), theta, psi);
    }
    return psi;
}

namespace {

std::vector<PauliString> objective_terms(const IsingModel& model,
                                         const AdaptOptions& options) {
    if (options.objective == AdaptObjective::TotalEnergy) return hamiltonian_terms(model);
    std::vector<PauliString> terms;
    for (int n = options.window_lo; n <= options.window_hi; ++n) {
        int site = ((n % model.L) + model.L) % model.L;
        auto dn = energy_density_terms(model, site);
        terms.insert(terms.end(), dn.begin(), dn.end());
    }
    return merge_terms(std::move(terms));
}

} // namespace

AdaptResult adapt_run(const IsingModel& model, const StateVector& reference,
                      const OperatorPool& pool, const AdaptOptions& options,
                      const StateVector* exact_reference) {
    if (reference.n_qubits != model.L)
        throw InvalidArgument("adapt_run: reference state size mismatch");
    const auto terms = objective_terms(model, options);

    AdaptResult result;
    result.ansatz.pool = pool.id;
    result.reference_energy = expval(reference, terms);

    auto energy_of = [&](const std::vector<std::pair<int, double>>& steps) {
        StateVector psi = reference;
        for (const auto& [op, theta] : steps) apply_pool_exponential(pool.ops[op], theta, psi);
        return expval(psi, terms);
    };

    double current_energy = result.reference_energy;
    for (int step = 0; step < options.n_steps; ++step) {
        const int n_ops = static_cast<int>(pool.ops.size());
        std::vector<double> trial_energy(n_ops, 1e300);
        std::vector<std::vector<double>> trial_angles(n_ops);
        std::vector<bool> failed(n_ops, false);

        parallel_for(n_ops, options.threads, [&](int trial) {
            std::vector<std::pair<int, double>> steps = result.ansatz.steps;
            steps.emplace_back(trial, 0.0);
            std::vector<double> x0(steps.size());
            for (size_t i = 0; i < steps.size(); ++i) x0[i] = steps[i].second;
            auto objective = [&](const std::vector<double>& x) {
                auto s = steps;
                for (size_t i = 0; i < s.size(); ++i) s[i].second = x[i];
                return energy_of(s);
            };
            try {
                auto res = nelder_mead(objective, x0, options.nm);
                trial_energy[trial] = res.f;
                trial_angles[trial] = res.x;
            } catch (const Error&) {
                failed[trial] = true;
            }
        });

        int best = -1;
        for (int t = 0; t < n_ops; ++t) {
            if (failed[t]) continue;
            if (best < 0 || trial_energy[t] < trial_energy[best]) best = t;
        }
        if (best < 0) throw NumericalError("adapt_run: every pool trial failed");

        result.ansatz.steps.emplace_back(best, 0.0);
        for (size_t i = 0; i < result.ansatz.steps.size(); ++i)
            result.ansatz.steps[i].second = trial_angles[best][i];

        AdaptStepInfo info;
        info.selected_op = best;
        // the warm start includes the previous optimum, so this cannot rise
        info.energy = std::min(trial_energy[best], current_energy);
        current_energy = info.energy;
        info.trial_energies = trial_energy;
        info.trial_failed = failed;
        if (exact_reference) {
            StateVector psi = apply_ansatz(pool, result.ansatz, reference);
            info.infidelity = 1.0 - fidelity(psi, *exact_reference);
        }
        result.steps.push_back(std::move(info));
    }
    return result;
}

StateVector prepare_vacuum(const OperatorPool& pool, const AdaptAnsatz& ansatz, int L) {
    return apply_ansatz(pool, ansatz, StateVector::zero_state(L));
}

Circuit ansatz_gate_circuit(const OperatorPool& pool, const AdaptAnsatz& ansatz) {
    Circuit c(pool.L);
    for (const auto& [op, theta] : ansatz.steps) {
        auto compiled = compile_pool_circuit(pool.ops.at(op), theta, pool.L, pool.boundary);
        c.append(compiled.circuit);
    }
    return c;
}

} // namespace ift
