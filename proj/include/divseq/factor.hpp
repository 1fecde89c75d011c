#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "divseq/nmod_poly.hpp"
#include "divseq/polynomial.hpp"
#include "divseq/zpoly.hpp"

namespace divseq {

template <class F>
struct FactoredPolynomial {
    F unit = F(1);
    std::vector<std::pair<Polynomial<F>, int>> factors;  // monic irreducible, exponent >= 1

    Polynomial<F> expand() const {
        Polynomial<F> acc = Polynomial<F>::constant(unit);
        for (const auto& [f, e] : factors) acc *= pow(f, static_cast<unsigned>(e));
        return acc;
    }
    std::size_t count() const {
        std::size_t n = 0;
        for (const auto& fe : factors) n += static_cast<std::size_t>(fe.second);
        return n;
    }
};

struct FactorOptions {
    std::uint64_t seed = 0;
    // Number of subset trials allowed during recombination before giving up
    // with ResourceLimit.
    std::uint64_t recombination_budget = 5'000'000;
    // Primes scanned by certify_irreducible before falling back to a full
    // factorization.
    std::uint64_t certify_prime_bound = 1000;
};

FactoredPolynomial<Fp> factor_mod_p(const FpPoly& a, const FactorOptions& opts = {});

// Lifts monic pairwise coprime factors of a mod p (a squarefree mod p, lc(a)
// a unit mod p) to monic factors mod p^k with lc(a) * prod == a mod p^k.
// Coefficients of the result lie in [0, p^k).
std::vector<ZPoly> hensel_lift_factors(const ZPoly& a, const std::vector<NmodPoly>& factors, unsigned k);

FactoredPolynomial<Rational> factor_over_rationals(const QPoly& a, const FactorOptions& opts = {});

struct IrreducibilityVerdict {
    bool irreducible = false;
    std::optional<std::uint64_t> witness;  // present when a prime certified the verdict on its own
};
IrreducibilityVerdict certify_irreducible(const QPoly& a, const FactorOptions& opts = {});

// Total order used for factor lists: degree, then coefficients from the
// constant term upward.
bool canonical_less(const QPoly& a, const QPoly& b);

}  // namespace divseq
