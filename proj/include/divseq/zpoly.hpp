#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "divseq/numbers.hpp"
#include "divseq/polynomial.hpp"

namespace divseq {

// Integer-polynomial plumbing shared by gcd, squarefree decomposition and
// factorization. Rational polynomials are routed through primitive integer
// representatives so coefficient growth stays under control.

Integer content(const ZPoly& a);                 // nonnegative, 0 for the zero polynomial
ZPoly primitive_part(const ZPoly& a);           // positive leading coefficient
ZPoly to_zpoly_exact(const QPoly& a);           // requires integral coefficients
QPoly to_qpoly(const ZPoly& a);

// a = scale * poly with poly primitive and positive leading coefficient.
struct PrimitiveForm {
    Rational scale;
    ZPoly poly;
};
PrimitiveForm primitive_form(const QPoly& a);

// Exact quotient in Z[x] when b | a, otherwise nullopt.
std::optional<ZPoly> divide_exact(const ZPoly& a, const ZPoly& b);
std::optional<ZPoly> divide_schoolbook(const ZPoly& a, const ZPoly& b);
bool divides(const ZPoly& b, const ZPoly& a);

// Primitive gcd with positive leading coefficient (multi-modular).
ZPoly gcd(const ZPoly& a, const ZPoly& b);
// Monic gcd over Q; gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly exact_quotient(const QPoly& a, const QPoly& b);

// a and b nonzero; g primitive with positive leading coefficient.
GcdCofactors<ZPoly> gcd_cofactors(const ZPoly& a, const ZPoly& b);
// a and b nonzero; g monic.
GcdCofactors<QPoly> gcd_cofactors(const QPoly& a, const QPoly& b);

// Squarefree decomposition over Q (Yun): pairs (monic squarefree part,
// multiplicity) whose weighted product is monic(a).
std::vector<std::pair<QPoly, int>> squarefree_decompose(const QPoly& a);
// Same on primitive integer polynomials.
std::vector<std::pair<ZPoly, int>> squarefree_decompose(const ZPoly& a);

// Euclidean 2-norm rounded up.
Integer norm2_ceil(const ZPoly& a);
Integer max_norm(const ZPoly& a);

// Resultants, computed multi-modularly under the Hadamard bound.
Integer resultant(const ZPoly& a, const ZPoly& b);
Rational resultant(const QPoly& a, const QPoly& b);

// Coefficient bit length bound: max over coefficients of mpz_sizeinbase(., 2).
std::size_t max_bits(const ZPoly& a);

// Exact square root in Q[x] if a is a perfect square.
std::optional<QPoly> sqrt_exact(const QPoly& a);

}  // namespace divseq
