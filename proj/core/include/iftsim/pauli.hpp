#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ift {

enum class Pauli : uint8_t { X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/// A real-weighted tensor product of single-site Pauli operators.
/// Identity factors are omitted; an empty factor list is a scaled identity.
/// Factors are kept sorted by site with unique sites (canonical form).
struct PauliString {
    double coefficient = 1.0;
    std::vector<std::pair<int, Pauli>> factors;

    PauliString() = default;
    PauliString(double coeff, std::vector<std::pair<int, Pauli>> f);

    /// Sorts factors by site; throws on duplicate sites.
    void canonicalize();

    bool same_factors(const PauliString& other) const;

    int max_site() const;

    /// Parses e.g. "YZ" placed at `site` as Y_site Z_{site+1}; 'I' skips a site.
    /// Site indices wrap modulo L when L > 0.
    static PauliString from_pattern(const std::string& pattern, int site, double coeff,
                                    int L = 0);

    std::string to_string() const;
};

/// Merges terms with identical factor maps, summing coefficients; drops
/// terms with |coefficient| below `drop_tol`. Result is sorted canonically.
std::vector<PauliString> merge_terms(std::vector<PauliString> terms, double drop_tol = 1e-15);

/// True if P and Q commute as operators (they either commute or anticommute).
bool commutes(const PauliString& a, const PauliString& b);

} // namespace ift
