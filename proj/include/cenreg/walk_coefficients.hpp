#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cenreg {

using BigInt = boost::multiprecision::cpp_int;

// gamma~_s(t): walks of length t (canonical first-visit labelling) whose distinct
// edges form a simple path with s edges, every edge used at least twice.
struct WalkCountTable {
    int t = 0;
    std::map<int, BigInt> counts;
};

// A word over {A, xi}; true marks a xi factor.
struct MixedProductSignature {
    int t = 0;
    std::vector<bool> pattern;
    std::vector<int> blocks;  // lengths of maximal xi runs, left to right
    int tau = 0;

    static MixedProductSignature from_pattern(std::vector<bool> pattern);
    // Bit k of mask (LSB first) gives slot k.
    static MixedProductSignature from_mask(int t, std::uint64_t mask);
    bool is_even() const;
};

// g(t) = sum_r coeffs[r] * iota' Ahat^r iota.
struct GPolynomial {
    int t = 0;
    std::map<int, BigInt> coeffs;
    bool operator==(const GPolynomial&) const = default;
};

// Key (t, s): coefficient of delta^s on iota' Ahat^t iota.
struct BiasPolynomial {
    int T = 0;
    std::map<std::pair<int, int>, BigInt> coeffs;
    bool operator==(const BiasPolynomial&) const = default;
};

enum class BiasExpansion {
    // Drops words whose first-s part ends in a lone xi that continues into the
    // last-t part, for s >= 3. This reproduces the reference tables for every T checked.
    Tabulated,
    // Every even word with a xi in the last t slots; agrees with the tables only for T <= 2.
    Literal,
};

struct DerivationBudget {
    int walk_cap = 14;
    int g_cap = 14;
    int b_cap = 5;
    BiasExpansion expansion = BiasExpansion::Tabulated;

    static DerivationBudget extended() {
        DerivationBudget b;
        b.b_cap = 7;
        return b;
    }
};

WalkCountTable walk_counts(int t, const DerivationBudget& budget = {});
// Sum over blocks of walk counts, as a polynomial in powers of A. Empty if the word is not even.
std::map<int, BigInt> gamma_polynomial(const MixedProductSignature& sig, const DerivationBudget& budget = {});
GPolynomial derive_g(int t, const DerivationBudget& budget = {});
BiasPolynomial derive_b(int T, const DerivationBudget& budget = {});

GPolynomial reference_g(int t);
BiasPolynomial reference_b(int T);

struct Mismatch {
    int index = 0;  // t for g, T for b
    std::string detail;
};
std::vector<Mismatch> verify_g(int max_t, const DerivationBudget& budget = {});
std::vector<Mismatch> verify_b(int max_T, const DerivationBudget& budget = {});

// moments[k] = iota' Ahat^k iota; must cover every power used.
double evaluate(const GPolynomial& g, const std::vector<double>& moments);
double evaluate(const BiasPolynomial& b, double delta, const std::vector<double>& moments);

namespace detail {
const std::vector<std::vector<std::int64_t>>& reference_g_rows();
const std::vector<std::vector<std::vector<std::int64_t>>>& reference_b_rows();
}  // namespace detail

}  // namespace cenreg
