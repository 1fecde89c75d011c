#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace divseq {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Integer& a) { return sgn(a) == 0; }
inline bool is_zero(const Rational& a) { return sgn(a) == 0; }

// n/d in lowest terms (mpq_class does not canonicalize on construction).
inline Rational fraction(const Integer& n, const Integer& d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Integer& a) { return a.get_str(); }
inline std::string to_string(const Rational& a) { return a.get_str(); }

// Parses "a" or "a/b"; throws InputError on malformed text.
Rational parse_rational(const std::string& text);

namespace modarith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 add(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) * b) % p); }
inline u64 neg(u64 a, u64 p) { return a == 0 ? 0 : p - a; }

// Barrett reduction of 64-bit values for moduli below 2^32.
struct SmallReducer {
    u64 p, m;
    explicit SmallReducer(u64 modulus) : p(modulus), m(~u64{0} / modulus) {}
    u64 operator()(u64 x) const {
        u64 r = x - static_cast<u64>((static_cast<u128>(x) * m) >> 64) * p;
        while (r >= p) r -= p;
        return r;
    }
};

u64 pow(u64 base, u64 exp, u64 p);
u64 inv(u64 a, u64 p);  // throws std::domain_error when a == 0 mod p

// Reduces an arbitrary-precision integer into [0, p).
u64 reduce(const Integer& a, u64 p);
// Reduces a rational whose denominator is a unit mod p.
u64 reduce(const Rational& a, u64 p);

}  // namespace modarith

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);  // smallest prime > n
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

// Legendre symbol for odd prime p.
int legendre(std::uint64_t a, std::uint64_t p);

}  // namespace divseq
