#include <doctest.h>

#include <random>

#include "divseq/nmod_poly.hpp"
#include "divseq/polynomial.hpp"
#include "divseq/zpoly.hpp"

using namespace divseq;

namespace {
QPoly Q(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}
ZPoly Z(std::initializer_list<long> c) {
    std::vector<Integer> v;
    for (long x : c) v.emplace_back(x);
    return ZPoly(std::move(v));
}
QPoly random_q(std::mt19937_64& rng, int deg) {
    std::uniform_int_distribution<long> d(-9, 9);
    std::vector<Rational> v(static_cast<std::size_t>(deg) + 1);
    for (auto& c : v) c = d(rng);
    if (v.back() == 0) v.back() = 1;
    return QPoly(std::move(v));
}
}  // namespace

TEST_CASE("construction trims and prints canonically") {
    QPoly a = Q({2, 0, 1, 0, 0});
    CHECK(a.degree() == 2);
    CHECK(to_string(a) == "T^2 + 2");
    CHECK(to_string(Q({-60098081, -3162957, -46920, -4, 3}), "u") ==
          "3*u^4 - 4*u^3 - 46920*u^2 - 3162957*u - 60098081");
    QPoly k({Rational(12751, 5), Rational(101), Rational(1)});
    CHECK(to_string(k, "u") == "u^2 + 101*u + 12751/5");
    CHECK(to_string(QPoly()) == "0");
    CHECK(to_string(Q({0, -1})) == "-T");
}

TEST_CASE("gcd over Q") {
    CHECK(gcd(Q({-1, 0, 1}), Q({-1, 1})) == Q({-1, 1}));
    CHECK(gcd(Q({2, 4}), QPoly()) == QPoly({Rational(1, 2), Rational(1)}));
    CHECK(gcd(QPoly(), QPoly()).is_zero());
    // L_4 and L_6 of the T^2+2 / 1 sequence share exactly L_2 = T^2 + 3.
    QPoly l2 = Q({3, 0, 1});
    QPoly l4 = l2 * Q({5, 0, 4, 0, 1});
    QPoly l6 = l2 * Q({3, 0, 3, 0, 1}) * Q({7, 0, 5, 0, 1});
    CHECK(gcd(l6, l4) == l2);
}

TEST_CASE("gcd properties on random inputs") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        QPoly a = random_q(rng, 1 + i % 6), b = random_q(rng, 1 + (i * 7) % 5), c = random_q(rng, 1 + i % 4);
        QPoly g = gcd(a, b);
        CHECK(rem(a, g).is_zero());
        CHECK(rem(b, g).is_zero());
        CHECK(gcd(a * c, b * c) == monic(c) * g);
    }
}

TEST_CASE("integer gcd is primitive and positive") {
    ZPoly a = Z({-6, 0, 6}), b = Z({4, 4});
    CHECK(gcd(a, b) == Z({1, 1}));
    CHECK(gcd(Z({3}), Z({0, 1})) == Z({1}));
}

TEST_CASE("exact division over Z") {
    CHECK(divide_exact(Z({-1, 0, 1}), Z({1, 1})) == Z({-1, 1}));
    CHECK(!divide_exact(Z({1, 0, 1}), Z({1, 1})));
    CHECK(!divide_exact(Z({1, 2}), Z({1, 3})));
}

TEST_CASE("primitive form") {
    QPoly k({Rational(12751, 5), Rational(101), Rational(1)});
    auto pf = primitive_form(k);
    CHECK(pf.poly == Z({12751, 505, 5}));
    CHECK(pf.scale == Rational(1, 5));
    auto neg = primitive_form(Q({4, -6}));
    CHECK(neg.poly == Z({-2, 3}));
    CHECK(neg.scale == -2);
}

TEST_CASE("squarefree decomposition") {
    QPoly f = pow(Q({-1, 1}), 2) * Q({2, 1});
    auto sf = squarefree_decompose(f);
    REQUIRE(sf.size() == 2);
    CHECK(sf[0] == std::make_pair(Q({2, 1}), 1));
    CHECK(sf[1] == std::make_pair(Q({-1, 1}), 2));
    auto single = squarefree_decompose(Q({2, 0, 3}));
    REQUIRE(single.size() == 1);
    CHECK(single[0].first == monic(Q({2, 0, 3})));
}

TEST_CASE("squarefree decomposition mod p handles p-th powers") {
    NmodPoly f = NmodPoly(5, {1, 0, 1});
    NmodPoly cube = f * f * f;
    auto sf = squarefree_decompose(cube);
    REQUIRE(sf.size() == 1);
    CHECK(sf[0].first == f);
    CHECK(sf[0].second == 3);
    NmodPoly fifth = NmodPoly(5, {1, 1});
    NmodPoly g = fifth * fifth * fifth * fifth * fifth * NmodPoly(5, {2, 1});
    auto sg = squarefree_decompose(g);
    REQUIRE(sg.size() == 2);
    CHECK(sg[0] == std::make_pair(NmodPoly(5, {2, 1}), 1));
    CHECK(sg[1] == std::make_pair(NmodPoly(5, {1, 1}), 5));
}

TEST_CASE("resultant and exact square roots") {
    // Res(x^2 - 2, x - 1) = (1)^2 - 2 = -1
    CHECK(resultant(Q({-2, 0, 1}), Q({-1, 1})) == -1);
    CHECK(resultant(Q({-1, 0, 1}), Q({-1, 1})) == 0);
    // disc-like check: Res(x^2+1, 2x) = 4
    CHECK(resultant(Q({1, 0, 1}), Q({0, 2})) == 4);
    QPoly s = Q({1, 2, 3});
    CHECK(sqrt_exact(s * s * Rational(4, 9)) == s * Rational(2, 3));
    CHECK(!sqrt_exact(Q({1, 0, 2})));
    CHECK(!sqrt_exact(Q({-1, 0, 1})));
}

TEST_CASE("homogenize and compose") {
    QPoly a = Q({1, 0, 1});       // x^2 + 1
    QPoly num = Q({0, 1}), den = Q({2, 0, 0, 1});
    QPoly h = homogenize(a, num, den);
    CHECK(h == num * num + den * den);
    CHECK(compose(a, Q({1, 1})) == Q({2, 2, 1}));
}

TEST_CASE("large products agree with schoolbook multiplication") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-1000000, 1000000);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<Integer> va(40 + trial * 17), vb(30 + trial * 5);
        for (auto& c : va) c = Integer(d(rng)) * Integer(d(rng)) * (trial % 2 ? Integer(d(rng)) : Integer(1));
        for (auto& c : vb) c = Integer(d(rng));
        ZPoly a(va), b(vb);
        std::vector<Integer> ref(va.size() + vb.size() - 1);
        for (std::size_t i = 0; i < va.size(); ++i)
            for (std::size_t j = 0; j < vb.size(); ++j) ref[i + j] += va[i] * vb[j];
        CHECK(a * b == ZPoly(ref));
        CHECK(a * -b == -ZPoly(ref));
        QPoly qa = to_qpoly(a) * Rational(3, 7), qb = to_qpoly(b) * Rational(-5, 2);
        CHECK(qa * qb == to_qpoly(ZPoly(ref)) * Rational(-15, 14));
    }
}

TEST_CASE("integer resultants") {
    ZPoly a{Integer(-2), Integer(0), Integer(1)};
    ZPoly b{Integer(-3), Integer(0), Integer(1)};
    CHECK(resultant(a, b) == 1);  // prod (sqrt2^2 - 3) over both roots
    ZPoly c{Integer(12751), Integer(505), Integer(5)};
    // Res(f, f') = (-1)^{n(n-1)/2} lc * disc; disc = 505^2 - 4*5*12751 = 5
    CHECK(resultant(c, c.derivative()) == -5 * 5);
}

TEST_CASE("large exact division agrees with schoolbook division") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-1000000, 1000000);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<Integer> vq(40 + trial * 13), vb(35 + trial * 7);
        for (auto& c : vq) c = Integer(d(rng)) * (trial % 2 ? Integer(d(rng)) : Integer(1));
        for (auto& c : vb) c = Integer(d(rng)) * Integer(d(rng));
        ZPoly q(vq), b(vb);
        ZPoly a = q * b;
        CHECK(divide_exact(a, b) == q);
        CHECK(divide_exact(-a, b) == -q);
        CHECK(divide_schoolbook(a, b) == q);
        ZPoly off = a + ZPoly{Integer(1)};
        CHECK(!divide_exact(off, b));
        CHECK(!divide_schoolbook(off, b));
        ZPoly scaled = b * Integer(3);
        CHECK(divide_exact(a, scaled).has_value() == divide_schoolbook(a, scaled).has_value());
    }
    std::vector<Integer> xn(106, Integer(0));
    xn[0] = -1;
    xn[105] = 1;
    ZPoly a(xn), phi = a;
    for (int e : {1, 3, 5, 7, 15, 21, 35}) {
        std::vector<Integer> v(static_cast<std::size_t>(e) + 1, Integer(0));
        v[0] = -1;
        v[static_cast<std::size_t>(e)] = 1;
        phi = *divide_schoolbook(phi, gcd(phi, ZPoly(v)));
    }
    REQUIRE(phi.degree() == 48);
    CHECK(divide_exact(a, phi) == divide_schoolbook(a, phi));
    CHECK(*divide_exact(a, phi) * phi == a);
}
