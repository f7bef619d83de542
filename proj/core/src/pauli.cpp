#include "iftsim/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "iftsim/error.hpp"

namespace ift {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

PauliString::PauliString(double coeff, std::vector<std::pair<int, Pauli>> f)
    : coefficient(coeff), factors(std::move(f)) {
    canonicalize();
}

void PauliString::canonicalize() {
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 1; i < factors.size(); ++i) {
        if (factors[i].first == factors[i - 1].first) {
            throw InvalidArgument("PauliString: duplicate site " +
                                  std::to_string(factors[i].first));
        }
    }
}

bool PauliString::same_factors(const PauliString& other) const {
    return factors == other.factors;
}

int PauliString::max_site() const {
    int m = -1;
    for (const auto& [site, p] : factors) m = std::max(m, site);
    return m;
}

PauliString PauliString::from_pattern(const std::string& pattern, int site, double coeff,
                                      int L) {
    std::vector<std::pair<int, Pauli>> f;
    for (size_t i = 0; i < pattern.size(); ++i) {
        int n = site + static_cast<int>(i);
        if (L > 0) n = ((n % L) + L) % L;
        switch (pattern[i]) {
            case 'I': break;
            case 'X': f.emplace_back(n, Pauli::X); break;
            case 'Y': f.emplace_back(n, Pauli::Y); break;
            case 'Z': f.emplace_back(n, Pauli::Z); break;
            default:
                throw InvalidArgument("bad Pauli pattern char: " + pattern);
        }
    }
    return PauliString(coeff, std::move(f));
}

std::string PauliString::to_string() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%+.6g", coefficient);
    std::string s(buf);
    if (factors.empty()) return s + " I";
    for (const auto& [site, p] : factors) {
        s += ' ';
        s += pauli_char(p);
        s += std::to_string(site);
    }
    return s;
}

std::vector<PauliString> merge_terms(std::vector<PauliString> terms, double drop_tol) {
    std::map<std::vector<std::pair<int, Pauli>>, double> acc;
    for (auto& t : terms) {
        t.canonicalize();
        acc[t.factors] += t.coefficient;
    }
    std::vector<PauliString> out;
    for (auto& [f, c] : acc) {
        if (std::abs(c) <= drop_tol) continue;
        PauliString p;
        p.coefficient = c;
        p.factors = f;
        out.push_back(std::move(p));
    }
    return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
    // Count sites where both act with different Paulis; odd count = anticommute.
    int clashes = 0;
    size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        if (a.factors[i].first < b.factors[j].first) {
            ++i;
        } else if (a.factors[i].first > b.factors[j].first) {
            ++j;
        } else {
            if (a.factors[i].second != b.factors[j].second) ++clashes;
            ++i;
            ++j;
        }
    }
    return clashes % 2 == 0;
}

} // namespace ift
