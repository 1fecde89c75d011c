#include <doctest.h>

#include "divseq/errors.hpp"
#include "divseq/numbers.hpp"
#include "divseq/prime_field.hpp"

using namespace divseq;

TEST_CASE("parse_rational accepts integers and fractions") {
    CHECK(parse_rational("12751/5") == Rational(12751, 5));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("0") == 0);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("3x"), InputError);
    CHECK_THROWS_AS(parse_rational("1/-2"), InputError);
}

TEST_CASE("modular helpers") {
    using namespace modarith;
    CHECK(pow(3, 4, 7) == 4);
    CHECK(mul(inv(3, 7), 3, 7) == 1);
    CHECK_THROWS(inv(0, 7));
    CHECK(reduce(Integer(-1), 5) == 4);
    CHECK(reduce(Rational(1, 2), 5) == 3);
    u64 big = (1ULL << 61) - 1;
    CHECK(mul(inv(123456789, big), 123456789, big) == 1);
}

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(!is_prime(1));
    CHECK(is_prime(2147483647ULL));
    CHECK(!is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(next_prime(7) == 11);
    CHECK(primes_up_to(30) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(primes_up_to(10000).size() == 1229);
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 7) == -1);
    CHECK(legendre(14, 7) == 0);
}

TEST_CASE("prime field literals adopt the modulus") {
    Fp a(3ULL, 7ULL);
    CHECK(a + Fp(5) == Fp(1ULL, 7ULL));
    CHECK(a * Fp(5) == Fp(1ULL, 7ULL));
    CHECK(Fp(1) / a == Fp(5ULL, 7ULL));
    CHECK((-a).value() == 4);
    CHECK(Fp(0).is_zero());
    CHECK(Fp::from(Rational(1, 2), 11).value() == 6);
    CHECK_THROWS(Fp(1ULL, 5ULL) + Fp(1ULL, 7ULL));
}
