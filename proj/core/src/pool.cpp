#include "iftsim/pool.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "iftsim/error.hpp"
#include "iftsim/lanczos.hpp"

namespace ift {

PoolId pool_from_name(const std::string& name) {
    if (name == "O1") return PoolId::O1;
    if (name == "O3") return PoolId::O3;
    if (name == "O5") return PoolId::O5;
    if (name == "O7") return PoolId::O7;
    throw InvalidArgument("unknown pool id: " + name);
}

std::string pool_name(PoolId id) {
    switch (id) {
        case PoolId::O1: return "O1";
        case PoolId::O3: return "O3";
        case PoolId::O5: return "O5";
        case PoolId::O7: return "O7";
    }
    return "?";
}

namespace {

using Shape = std::vector<std::string>;

std::vector<Shape> pool_shapes(PoolId id) {
    std::vector<Shape> shapes = {{"Y"}, {"YZ", "ZY"}};
    if (id == PoolId::O1) return shapes;
    shapes.insert(shapes.begin() + 1, {"ZYZ"}); // listing order: Y, ZYZ, YZ+ZY, ...
    shapes.push_back({"YX", "XY"});
    shapes.push_back({"ZXY", "YXZ"});
    if (id == PoolId::O3) return shapes;
    const std::vector<Shape> o5 = {{"ZYX", "XYZ"},   {"YXX", "XXY"}, {"YYY"},
                                   {"ZXYZ", "ZYXZ"}, {"YZZ", "ZZY"}, {"ZXXY", "YXXZ"}};
    shapes.insert(shapes.end(), o5.begin(), o5.end());
    if (id == PoolId::O5) return shapes;
    const std::vector<Shape> o7 = {
        {"ZIY", "YIZ"},     {"YZX", "XZY"},   {"ZZYZ", "ZYZZ"}, {"ZXYX", "XYXZ"},
        {"XYX"},            {"YYYZ", "ZYYY"}, {"ZYXX", "XXYZ"}, {"YXXX", "XXXY"},
        {"ZXXYZ", "ZYXXZ"}, {"YXZZ", "ZZXY"}, {"YXYY", "YYXY"}, {"ZYIZ", "ZIYZ"},
        {"ZXZY", "YZXZ"},   {"ZXYXZ"},        {"XIY", "YIX"},   {"ZXXXY", "YXXXZ"}};
    shapes.insert(shapes.end(), o7.begin(), o7.end());
    return shapes;
}

std::string shape_name(const Shape& s) {
    std::string name = s[0];
    for (size_t i = 1; i < s.size(); ++i) name += "+" + s[i];
    return name;
}

bool all_commuting(const std::vector<PauliString>& strings) {
    for (size_t i = 0; i < strings.size(); ++i) {
        for (size_t j = i + 1; j < strings.size(); ++j) {
            if (!commutes(strings[i], strings[j])) return false;
        }
    }
    return true;
}

} // namespace

OperatorPool build_pool(PoolId id, int L, Boundary boundary) {
    if (L < 3) throw InvalidArgument("build_pool: L must be >= 3");
    OperatorPool pool;
    pool.id = id;
    pool.L = L;
    pool.boundary = boundary;
    for (const Shape& shape : pool_shapes(id)) {
        int span = 0;
        for (const auto& pat : shape) span = std::max(span, static_cast<int>(pat.size()));
        if (span > L)
            throw InvalidArgument("build_pool: pattern wider than the lattice: " +
                                  shape_name(shape));
        PoolOperator op;
        op.name = shape_name(shape);
        op.patterns = shape;
        for (int n = 0; n < L; ++n) {
            for (const auto& pat : shape) {
                if (boundary == Boundary::OBC && n + static_cast<int>(pat.size()) > L)
                    continue;
                int wrap = boundary == Boundary::PBC ? L : 0;
                op.strings.push_back(PauliString::from_pattern(pat, n, 1.0, wrap));
            }
        }
        op.norm_bound = static_cast<double>(op.strings.size());
        op.commuting = all_commuting(op.strings);
        pool.ops.push_back(std::move(op));
    }
    return pool;
}

void apply_pool_exponential(const PoolOperator& op, double theta, StateVector& psi) {
    if (theta == 0.0) return;
    if (op.commuting) {
        for (const PauliString& s : op.strings) apply_pauli_exponential(psi, s, theta);
        return;
    }
    struct Masks {
        uint64_t flip, phase;
        cd pref;
    };
    std::vector<Masks> masks;
    masks.reserve(op.strings.size());
    for (const auto& s : op.strings) {
        uint64_t flip = 0, phase = 0;
        int ny = 0;
        for (const auto& [site, p] : s.factors) {
            uint64_t bit = uint64_t{1} << site;
            if (p == Pauli::X) flip |= bit;
            if (p == Pauli::Y) {
                flip |= bit;
                phase |= bit;
                ++ny;
            }
            if (p == Pauli::Z) phase |= bit;
        }
        cd pref = s.coefficient;
        switch (ny % 4) {
            case 1: pref *= cd{0.0, 1.0}; break;
            case 2: pref *= -1.0; break;
            case 3: pref *= cd{0.0, -1.0}; break;
            default: break;
        }
        masks.push_back({flip, phase, pref});
    }
    const size_t dim = psi.dim();
    MatVec apply = [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
        y.setZero();
        for (const Masks& m : masks) {
            for (size_t b = 0; b < dim; ++b) {
                double sign = (std::popcount(b & m.phase) & 1) ? -1.0 : 1.0;
                y[b ^ m.flip] += m.pref * sign * x[b];
            }
        }
    };
    Eigen::VectorXcd vec = Eigen::Map<Eigen::VectorXcd>(psi.amp.data(), dim);
    krylov_exp_apply(apply, theta, op.norm_bound, vec);
    Eigen::Map<Eigen::VectorXcd>(psi.amp.data(), dim) = vec;
}

std::vector<std::vector<PauliString>> commuting_groups(const PoolOperator& op) {
    std::vector<std::vector<PauliString>> groups;
    for (const PauliString& s : op.strings) {
        bool placed = false;
        for (auto& g : groups) {
            bool ok = true;
            for (const auto& t : g) {
                if (!commutes(s, t)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                g.push_back(s);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({s});
    }
    return groups;
}

namespace {

void emit_cz_brickwall(Circuit& c, int L, Boundary boundary) {
    const int n_bonds = boundary == Boundary::PBC ? L : L - 1;
    for (int n = 0; n < n_bonds; n += 2) c.gate2(GateKind::CZ, n, (n + 1) % L);
    for (int n = 1; n < n_bonds; n += 2) c.gate2(GateKind::CZ, n, (n + 1) % L);
}

/// exp(i theta P) for a +1-coefficient string: basis changes, CNOT ladder,
/// RZ(-2 theta), everything undone afterwards.
void emit_string_exponential(Circuit& c, const PauliString& s, double theta) {
    std::vector<int> sites;
    for (const auto& [site, p] : s.factors) {
        sites.push_back(site);
        if (p == Pauli::X) c.gate(GateKind::H, site);
        if (p == Pauli::Y) c.gate(GateKind::Htilde, site);
    }
    for (size_t i = 0; i + 1 < sites.size(); ++i)
        c.gate2(GateKind::CNOT, sites[i], sites[i + 1]);
    c.gate(GateKind::RZ, sites.back(), -2.0 * theta);
    for (size_t i = sites.size() - 1; i-- > 0;)
        c.gate2(GateKind::CNOT, sites[i], sites[i + 1]);
    for (const auto& [site, p] : s.factors) {
        if (p == Pauli::X) c.gate(GateKind::H, site);
        if (p == Pauli::Y) c.gate(GateKind::Htilde, site);
    }
}

} // namespace

CompiledPoolCircuit compile_pool_circuit(const PoolOperator& op, double theta, int L,
                                         Boundary boundary) {
    Circuit c(L);
    int n_groups = 1;
    if (op.name == "Y") {
        for (const auto& s : op.strings)
            c.gate(GateKind::RY, s.factors[0].first, -2.0 * theta);
    } else if (op.name == "ZYZ") {
        emit_cz_brickwall(c, L, boundary);
        for (const auto& s : op.strings) {
            for (const auto& [site, p] : s.factors) {
                if (p == Pauli::Y) c.gate(GateKind::RY, site, -2.0 * theta);
            }
        }
        emit_cz_brickwall(c, L, boundary);
    } else if (op.name == "YZ+ZY" || op.name == "YX+XY") {
        // per-bond exact blocks laid out even bonds then odd bonds; the
        // circuit is a first-order splitting across the two parity layers
        const bool yx = op.name == "YX+XY";
        const int n_bonds = boundary == Boundary::PBC ? L : L - 1;
        n_groups = (n_bonds % 2 == 1 && boundary == Boundary::PBC) ? 3 : 2;
        auto emit_block = [&](int n) {
            int a = n, b = (n + 1) % L;
            if (yx) {
                c.gate(GateKind::Htilde, a);
                c.gate(GateKind::Htilde, b);
                c.gate2(GateKind::CZ, a, b);
                c.gate(GateKind::RX, a, 2.0 * theta);
                c.gate(GateKind::RX, b, 2.0 * theta);
                c.gate2(GateKind::CZ, a, b);
                c.gate(GateKind::Htilde, a);
                c.gate(GateKind::Htilde, b);
            } else {
                c.gate2(GateKind::CZ, a, b);
                c.gate(GateKind::RY, a, -2.0 * theta);
                c.gate(GateKind::RY, b, -2.0 * theta);
                c.gate2(GateKind::CZ, a, b);
            }
        };
        for (int n = 0; n < n_bonds; n += 2) emit_block(n);
        for (int n = 1; n < n_bonds; n += 2) emit_block(n);
    } else {
        auto groups = commuting_groups(op);
        n_groups = static_cast<int>(groups.size());
        for (const auto& g : groups) {
            for (const auto& s : g) emit_string_exponential(c, s, theta);
        }
    }
    CompiledPoolCircuit out;
    out.n_groups = n_groups;
    out.cnot_depth = c.two_qubit_depth();
    out.circuit = std::move(c);
    return out;
}

} // namespace ift
