#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "divseq/numbers.hpp"
#include "divseq/polynomial.hpp"

namespace divseq {

// Word-size polynomial arithmetic over F_p for p < 2^62. This is the engine
// behind factorization modulo p; the generic Polynomial<Fp> is the public face.
class NmodPoly {
  public:
    using u64 = std::uint64_t;

    explicit NmodPoly(u64 p = 2) : p_(p) {}
    NmodPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= p_;
        trim();
    }

    static NmodPoly from(const ZPoly& a, u64 p);
    static NmodPoly from(const QPoly& a, u64 p);  // denominators must be units mod p
    static NmodPoly from(const FpPoly& a);
    static NmodPoly one(u64 p) { return NmodPoly(p, {1}); }
    static NmodPoly x(u64 p) { return NmodPoly(p, {0, 1}); }

    FpPoly to_fp_poly() const;
    // Symmetric lift to integers in (-p/2, p/2].
    ZPoly to_zpoly_symmetric() const;

    u64 modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    u64 lead() const { return c_.back(); }
    u64 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<u64>& coeffs() const { return c_; }

    friend NmodPoly operator+(const NmodPoly& a, const NmodPoly& b);
    friend NmodPoly operator-(const NmodPoly& a, const NmodPoly& b);
    friend NmodPoly operator*(const NmodPoly& a, const NmodPoly& b);
    NmodPoly scaled(u64 s) const;
    friend bool operator==(const NmodPoly& a, const NmodPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const NmodPoly& a, const NmodPoly& b) { return !(a == b); }

    NmodPoly derivative() const;
    NmodPoly monic() const;
    u64 evaluate(u64 x) const;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    u64 p_;
    std::vector<u64> c_;
};

std::pair<NmodPoly, NmodPoly> divrem(const NmodPoly& a, const NmodPoly& b);
NmodPoly rem(const NmodPoly& a, const NmodPoly& b);
NmodPoly quo(const NmodPoly& a, const NmodPoly& b);
NmodPoly gcd(NmodPoly a, NmodPoly b);  // monic
// Extended Euclid: returns (g, s, t) with s*a + t*b = g monic.
struct NmodXgcd {
    NmodPoly g, s, t;
};
NmodXgcd xgcd(const NmodPoly& a, const NmodPoly& b);
std::uint64_t resultant(const NmodPoly& a, const NmodPoly& b);
NmodPoly mulmod(const NmodPoly& a, const NmodPoly& b, const NmodPoly& m);
NmodPoly powmod(const NmodPoly& base, const Integer& exp, const NmodPoly& m);

// Matrix of x^(i p) mod f, i < deg f: applies the Frobenius h -> h^p mod f in
// O(deg^2) operations.
class FrobeniusMap {
  public:
    explicit FrobeniusMap(const NmodPoly& f);
    NmodPoly apply(const NmodPoly& h) const;  // h^p mod f
    const NmodPoly& modulus_poly() const { return f_; }

  private:
    NmodPoly f_;
    std::vector<NmodPoly> rows_;
};

// Squarefree decomposition of a monic polynomial over F_p (handles p-th powers).
std::vector<std::pair<NmodPoly, int>> squarefree_decompose(const NmodPoly& f);

// Distinct-degree factorization of a monic squarefree polynomial: pairs
// (product of all irreducible factors of degree d, d).
std::vector<std::pair<NmodPoly, int>> distinct_degree_factor(const NmodPoly& f);

// Equal-degree splitting of a product of irreducibles of degree d.
std::vector<NmodPoly> equal_degree_factor(const NmodPoly& f, int d, std::mt19937_64& rng);

// Degrees of the irreducible factors of a squarefree polynomial (multiset).
std::vector<int> factor_degree_pattern(const NmodPoly& f);

// Complete factorization into monic irreducibles with multiplicities, sorted by
// degree then coefficients.
std::vector<std::pair<NmodPoly, int>> factor_monic(const NmodPoly& f, std::mt19937_64& rng);

bool is_irreducible(const NmodPoly& f);

}  // namespace divseq
