#include "iftsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include <nlohmann/json.hpp>

#include "iftsim/error.hpp"

namespace ift {

using json = nlohmann::json;

bool gate_is_two_qubit(GateKind k) {
    switch (k) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::RZZ:
        case GateKind::CRY: return true;
        default: return false;
    }
}

bool gate_has_angle(GateKind k) {
    switch (k) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::RZZ:
        case GateKind::CRY: return true;
        default: return false;
    }
}

std::string gate_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "Sdg";
        case GateKind::Htilde: return "Htilde";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::RZZ: return "RZZ";
        case GateKind::CRY: return "CRY";
    }
    return "?";
}

GateKind gate_from_name(const std::string& name) {
    static const std::map<std::string, GateKind> table = {
        {"X", GateKind::X},       {"H", GateKind::H},     {"S", GateKind::S},
        {"Sdg", GateKind::Sdg},   {"Htilde", GateKind::Htilde},
        {"RX", GateKind::RX},     {"RY", GateKind::RY},   {"RZ", GateKind::RZ},
        {"CNOT", GateKind::CNOT}, {"CZ", GateKind::CZ},   {"RZZ", GateKind::RZZ},
        {"CRY", GateKind::CRY}};
    auto it = table.find(name);
    if (it == table.end()) throw InvalidArgument("unknown gate kind: " + name);
    return it->second;
}

Gate Gate::one(GateKind k, int q, double angle) {
    if (gate_is_two_qubit(k)) throw InvalidArgument("Gate::one on a two-qubit kind");
    Gate g{k};
    g.sites[0] = q;
    g.angle = angle;
    return g;
}

Gate Gate::two(GateKind k, int a, int b, double angle) {
    if (!gate_is_two_qubit(k)) throw InvalidArgument("Gate::two on a one-qubit kind");
    if (a == b) throw InvalidArgument("two-qubit gate with duplicate sites");
    Gate g{k};
    g.sites[0] = a;
    g.sites[1] = b;
    g.angle = angle;
    return g;
}

bool Predicate::holds(const std::vector<int>& record) const {
    auto bit = [&](int reg) {
        if (reg < 0 || reg >= static_cast<int>(record.size()) || record[reg] < 0)
            throw InvalidArgument("predicate references unwritten register " +
                                  std::to_string(reg));
        return record[reg];
    };
    if (kind == Kind::Parity) {
        int s = 0;
        for (int r : regs) s ^= bit(r);
        return s == parity;
    }
    for (size_t i = 0; i < regs.size(); ++i) {
        if (bit(regs[i]) != bits[i]) return false;
    }
    return true;
}

Circuit& Circuit::add(const Op& op) {
    ops.push_back(op);
    return *this;
}
Circuit& Circuit::gate(GateKind k, int q, double angle) { return add(Gate::one(k, q, angle)); }
Circuit& Circuit::gate2(GateKind k, int a, int b, double angle) {
    return add(Gate::two(k, a, b, angle));
}
Circuit& Circuit::measure(int site, int reg) { return add(Measure{site, reg}); }
Circuit& Circuit::reset(int site) { return add(Reset{site}); }
Circuit& Circuit::conditional(Predicate pred, Gate g) {
    return add(Conditional{std::move(pred), g});
}

void Circuit::append(const Circuit& other) {
    if (other.n_qubits > n_qubits)
        throw InvalidArgument("append: appended circuit is wider than target");
    for (const Op& op : other.ops) ops.push_back(op);
}

int Circuit::n_measurements() const {
    int n = 0;
    for (const Op& op : ops) {
        if (std::holds_alternative<Measure>(op)) ++n;
        if (std::holds_alternative<Reset>(op)) ++n; // reset measures internally
    }
    return n;
}

int Circuit::max_register() const {
    int m = -1;
    for (const Op& op : ops) {
        if (const auto* meas = std::get_if<Measure>(&op)) m = std::max(m, meas->reg);
        if (const auto* c = std::get_if<Conditional>(&op)) {
            for (int r : c->pred.regs) m = std::max(m, r);
        }
    }
    return m;
}

int Circuit::two_qubit_count() const {
    int n = 0;
    for (const Op& op : ops) {
        const Gate* g = std::get_if<Gate>(&op);
        if (!g) {
            if (const auto* c = std::get_if<Conditional>(&op)) g = &c->gate;
        }
        if (g && gate_is_two_qubit(g->kind)) n += (g->kind == GateKind::CRY) ? 2 : 1;
    }
    return n;
}

int Circuit::two_qubit_depth() const {
    std::vector<int> frontier(n_qubits, 0);
    int depth = 0;
    for (const Op& op : ops) {
        const Gate* g = std::get_if<Gate>(&op);
        if (!g) {
            if (const auto* c = std::get_if<Conditional>(&op)) g = &c->gate;
        }
        if (!g || !gate_is_two_qubit(g->kind)) continue;
        int cost = (g->kind == GateKind::CRY) ? 2 : 1;
        int a = g->sites[0], b = g->sites[1];
        int start = std::max(frontier[a], frontier[b]);
        frontier[a] = frontier[b] = start + cost;
        depth = std::max(depth, start + cost);
    }
    return depth;
}

Circuit embedded(const Circuit& c, int offset, int n_total, int reg_offset) {
    if (offset < 0 || offset + c.n_qubits > n_total)
        throw InvalidArgument("embedded: circuit does not fit");
    Circuit out(n_total);
    for (const Op& op : c.ops) {
        if (const auto* g = std::get_if<Gate>(&op)) {
            Gate h = *g;
            h.sites[0] += offset;
            if (h.sites[1] >= 0) h.sites[1] += offset;
            out.add(h);
        } else if (const auto* m = std::get_if<Measure>(&op)) {
            out.add(Measure{m->site + offset, m->reg + reg_offset});
        } else if (const auto* r = std::get_if<Reset>(&op)) {
            out.add(Reset{r->site + offset});
        } else {
            auto cop = std::get<Conditional>(op);
            cop.gate.sites[0] += offset;
            if (cop.gate.sites[1] >= 0) cop.gate.sites[1] += offset;
            for (int& r : cop.pred.regs) r += reg_offset;
            out.add(cop);
        }
    }
    return out;
}

namespace {

void apply_1q(StateVector& psi, const cd u[2][2], int q) {
    if (q < 0 || q >= psi.n_qubits) throw InvalidArgument("gate site out of range");
    const uint64_t bit = uint64_t{1} << q;
    const uint64_t dim = psi.dim();
    for (uint64_t b = 0; b < dim; ++b) {
        if (b & bit) continue;
        cd a0 = psi.amp[b], a1 = psi.amp[b | bit];
        psi.amp[b] = u[0][0] * a0 + u[0][1] * a1;
        psi.amp[b | bit] = u[1][0] * a0 + u[1][1] * a1;
    }
}

// u indexed by basis |q_a q_b| as (a<<1)|b where a = sites[0], b = sites[1]
void apply_2q(StateVector& psi, const cd u[4][4], int qa, int qb) {
    if (qa < 0 || qa >= psi.n_qubits || qb < 0 || qb >= psi.n_qubits || qa == qb)
        throw InvalidArgument("two-qubit gate sites invalid");
    const uint64_t ba = uint64_t{1} << qa, bb = uint64_t{1} << qb;
    const uint64_t dim = psi.dim();
    for (uint64_t b = 0; b < dim; ++b) {
        if (b & (ba | bb)) continue;
        uint64_t idx[4] = {b, b | bb, b | ba, b | ba | bb};
        cd v[4];
        for (int i = 0; i < 4; ++i) v[i] = psi.amp[idx[i]];
        for (int i = 0; i < 4; ++i) {
            cd s{0.0, 0.0};
            for (int j = 0; j < 4; ++j) s += u[i][j] * v[j];
            psi.amp[idx[i]] = s;
        }
    }
}

} // namespace

void apply_gate(StateVector& psi, const Gate& g) {
    const double t = g.angle;
    const cd i{0.0, 1.0};
    const double is2 = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::X: {
            cd u[2][2] = {{0, 1}, {1, 0}};
            apply_1q(psi, u, g.sites[0]);
            return;
        }
        case GateKind::H: {
            cd u[2][2] = {{is2, is2}, {is2, -is2}};
            apply_1q(psi, u, g.sites[0]);
            return;
        }
        case GateKind::S: {
            cd u[2][2] = {{1, 0}, {0, i}};
            apply_1q(psi, u, g.sites[0]);
            return;
        }
        case GateKind::Sdg: {
            cd u[2][2] = {{1, 0}, {0, -i}};
            apply_1q(psi, u, g.sites[0]);
            return;
        }
        case GateKind::Htilde: {
            // S H Sdg: Hadamard between the Y and Z bases
            cd u[2][2] = {{is2, -i * is2}, {i * is2, -is2}};
            apply_1q(psi, u, g.sites[0]);
            return;
        }
        case GateKind::RX: {
            cd c = std::cos(t / 2), s = std::sin(t / 2);
            cd u[2][2] = {{c, -i * s}, {-i * s, c}};
            apply_1q(psi, u, g.sites[0]);
            return;
        }
        case GateKind::RY: {
            cd c = std::cos(t / 2), s = std::sin(t / 2);
            cd u[2][2] = {{c, -s}, {s, c}};
            apply_1q(psi, u, g.sites[0]);
            return;
        }
        case GateKind::RZ: {
            cd u[2][2] = {{std::exp(-i * (t / 2)), 0}, {0, std::exp(i * (t / 2))}};
            apply_1q(psi, u, g.sites[0]);
            return;
        }
        case GateKind::CNOT: {
            // fast path: control sites[0], target sites[1]
            const uint64_t bc = uint64_t{1} << g.sites[0];
            const uint64_t bt = uint64_t{1} << g.sites[1];
            if (g.sites[0] == g.sites[1] || g.sites[0] < 0 || g.sites[1] < 0 ||
                g.sites[0] >= psi.n_qubits || g.sites[1] >= psi.n_qubits)
                throw InvalidArgument("CNOT sites invalid");
            const uint64_t dim = psi.dim();
            for (uint64_t b = 0; b < dim; ++b) {
                if ((b & bc) && !(b & bt)) std::swap(psi.amp[b], psi.amp[b | bt]);
            }
            return;
        }
        case GateKind::CZ: {
            const uint64_t m = (uint64_t{1} << g.sites[0]) | (uint64_t{1} << g.sites[1]);
            if (g.sites[0] == g.sites[1]) throw InvalidArgument("CZ sites invalid");
            const uint64_t dim = psi.dim();
            for (uint64_t b = 0; b < dim; ++b) {
                if ((b & m) == m) psi.amp[b] = -psi.amp[b];
            }
            return;
        }
        case GateKind::RZZ: {
            // exp(-i t ZZ / 2): phase e^{-it/2} on equal bits, e^{+it/2} on unequal
            const uint64_t b0 = uint64_t{1} << g.sites[0];
            const uint64_t b1 = uint64_t{1} << g.sites[1];
            const cd pe = std::exp(-i * (t / 2)), po = std::exp(i * (t / 2));
            const uint64_t dim = psi.dim();
            for (uint64_t b = 0; b < dim; ++b) {
                bool z0 = b & b0, z1 = b & b1;
                psi.amp[b] *= (z0 == z1) ? pe : po;
            }
            return;
        }
        case GateKind::CRY: {
            cd c = std::cos(t / 2), s = std::sin(t / 2);
            cd u[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, c, -s}, {0, 0, s, c}};
            apply_2q(psi, u, g.sites[0], g.sites[1]);
            return;
        }
    }
    throw InvalidArgument("unhandled gate kind");
}

std::string circuit_to_json(const Circuit& c) {
    json ops = json::array();
    auto gate_json = [](const Gate& g) {
        json j{{"kind", gate_name(g.kind)}};
        if (gate_is_two_qubit(g.kind))
            j["sites"] = {g.sites[0], g.sites[1]};
        else
            j["sites"] = {g.sites[0]};
        if (gate_has_angle(g.kind)) j["angle"] = g.angle;
        return j;
    };
    for (const Op& op : c.ops) {
        if (const auto* g = std::get_if<Gate>(&op)) {
            json j = gate_json(*g);
            j["type"] = "gate";
            ops.push_back(j);
        } else if (const auto* m = std::get_if<Measure>(&op)) {
            ops.push_back({{"type", "measure"}, {"site", m->site}, {"reg", m->reg}});
        } else if (const auto* r = std::get_if<Reset>(&op)) {
            ops.push_back({{"type", "reset"}, {"site", r->site}});
        } else {
            const auto& cond = std::get<Conditional>(op);
            json p{{"kind", cond.pred.kind == Predicate::Kind::Parity ? "parity" : "match"},
                   {"regs", cond.pred.regs}};
            if (cond.pred.kind == Predicate::Kind::Parity)
                p["value"] = cond.pred.parity;
            else
                p["bits"] = cond.pred.bits;
            json j{{"type", "conditional"}, {"predicate", p}, {"gate", gate_json(cond.gate)}};
            ops.push_back(j);
        }
    }
    json root{{"n_qubits", c.n_qubits}, {"ops", ops}};
    return root.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
    json root = json::parse(text);
    Circuit c(root.at("n_qubits").get<int>());
    auto gate_of = [](const json& j) {
        GateKind k = gate_from_name(j.at("kind").get<std::string>());
        auto sites = j.at("sites").get<std::vector<int>>();
        double angle = j.value("angle", 0.0);
        if (gate_is_two_qubit(k)) return Gate::two(k, sites.at(0), sites.at(1), angle);
        return Gate::one(k, sites.at(0), angle);
    };
    for (const json& j : root.at("ops")) {
        std::string type = j.at("type").get<std::string>();
        if (type == "gate") {
            c.add(gate_of(j));
        } else if (type == "measure") {
            c.measure(j.at("site").get<int>(), j.at("reg").get<int>());
        } else if (type == "reset") {
            c.reset(j.at("site").get<int>());
        } else if (type == "conditional") {
            const json& p = j.at("predicate");
            Predicate pred;
            pred.kind = p.at("kind").get<std::string>() == "parity" ? Predicate::Kind::Parity
                                                                    : Predicate::Kind::Match;
            pred.regs = p.at("regs").get<std::vector<int>>();
            if (pred.kind == Predicate::Kind::Parity)
                pred.parity = p.at("value").get<int>();
            else
                pred.bits = p.at("bits").get<std::vector<int>>();
            c.conditional(pred, gate_of(j.at("gate")));
        } else {
            throw InvalidArgument("unknown circuit op type: " + type);
        }
    }
    return c;
}

} // namespace ift
