#include <doctest.h>

#include <random>

#include "divseq/errors.hpp"
#include "divseq/factor.hpp"

using namespace divseq;

namespace {
QPoly Q(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}
FpPoly F(std::uint64_t p, std::initializer_list<long> c) {
    std::vector<Fp> v;
    for (long x : c) v.push_back(Fp::from(Integer(x), p));
    return FpPoly(std::move(v));
}
std::vector<QPoly> factor_list(const QPoly& a) {
    std::vector<QPoly> out;
    for (auto& [f, e] : factor_over_rationals(a).factors)
        for (int i = 0; i < e; ++i) out.push_back(f);
    return out;
}
}  // namespace

TEST_CASE("factorization modulo p") {
    auto a = factor_mod_p(F(5, {1, 0, 1}));
    REQUIRE(a.factors.size() == 2);
    CHECK(a.factors[0].first == F(5, {2, 1}));
    CHECK(a.factors[1].first == F(5, {3, 1}));
    CHECK(factor_mod_p(F(3, {1, 0, 1})).factors.size() == 1);
    auto c = factor_mod_p(F(7, {2, 0, 0, 1}));
    REQUIRE(c.factors.size() == 1);
    CHECK(c.factors[0].first.degree() == 3);
    CHECK_THROWS_AS(factor_mod_p(FpPoly()), InputError);
    auto u = factor_mod_p(F(7, {6, 0, 3}));
    CHECK(u.unit == Fp(3ULL, 7ULL));
    CHECK(u.expand() == F(7, {6, 0, 3}));
}

TEST_CASE("factor_mod_p is deterministic and complete") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> d(0, 100);
    for (std::uint64_t p : {2ULL, 3ULL, 101ULL, 1000003ULL}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Fp> v(12);
            for (auto& c : v) c = Fp::from(Integer(d(rng)), p);
            v.back() = Fp(1ULL, p);
            FpPoly f(v);
            auto x = factor_mod_p(f, {});
            auto y = factor_mod_p(f, {});
            CHECK(x.expand() == f);
            CHECK(x.factors == y.factors);
            for (auto& [g, e] : x.factors) CHECK(is_irreducible(NmodPoly::from(g)));
        }
    }
}

TEST_CASE("Hensel lifting") {
    auto lifted = hensel_lift_factors(ZPoly{Integer(-1), Integer(0), Integer(1)},
                                      {NmodPoly(3, {2, 1}), NmodPoly(3, {1, 1})}, 2);
    REQUIRE(lifted.size() == 2);
    CHECK(lifted[0] == ZPoly{Integer(8), Integer(1)});  // x - 1 mod 9
    CHECK(lifted[1] == ZPoly{Integer(1), Integer(1)});
    auto five = hensel_lift_factors(ZPoly{Integer(1), Integer(0), Integer(1)},
                                    {NmodPoly(5, {2, 1}), NmodPoly(5, {3, 1})}, 2);
    CHECK(five[0] == ZPoly{Integer(7), Integer(1)});
    CHECK(five[1] == ZPoly{Integer(18), Integer(1)});
}

TEST_CASE("Hensel lifting reconstructs a random cubic mod p^4") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-50, 50);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 5; ++trial) {
        ZPoly f{Integer(d(rng)), Integer(d(rng)), Integer(d(rng)), Integer(1 + std::abs(d(rng)))};
        const std::uint64_t p = 7;
        NmodPoly fp = NmodPoly::from(f, p);
        if (fp.degree() != 3 || gcd(fp, fp.derivative()).degree() != 0) continue;
        std::mt19937_64 r2(0);
        std::vector<NmodPoly> mods;
        for (auto& [g, e] : factor_monic(fp.monic(), r2)) mods.push_back(g);
        if (mods.size() < 2) continue;
        auto lifted = hensel_lift_factors(f, mods, 4);
        Integer m = 7 * 7 * 7 * 7;
        ZPoly prod{f.lead()};
        for (auto& g : lifted) prod = prod * g;
        for (int i = 0; i <= 3; ++i) {
            Integer diff = prod.coeff(i) - f.coeff(i);
            CHECK(mpz_divisible_p(diff.get_mpz_t(), m.get_mpz_t()));
        }
        ++done;
    }
    CHECK(done == 5);
}

TEST_CASE("rational factorization of the printed Lucas terms") {
    QPoly l6 = Q({3, 0, 1}) * Q({3, 0, 3, 0, 1}) * Q({7, 0, 5, 0, 1});
    auto f6 = factor_list(l6);
    REQUIRE(f6.size() == 3);
    CHECK(f6[0] == Q({3, 0, 1}));
    CHECK(f6[1] == Q({3, 0, 3, 0, 1}));
    CHECK(f6[2] == Q({7, 0, 5, 0, 1}));
    QPoly l8 = Q({3, 0, 1}) * Q({5, 0, 4, 0, 1}) * Q({17, 0, 32, 0, 24, 0, 8, 0, 1});
    auto f8 = factor_list(l8);
    REQUIRE(f8.size() == 3);
    CHECK(f8[2] == Q({17, 0, 32, 0, 24, 0, 8, 0, 1}));
    auto f3 = factor_list(Q({-2, 0, 3, 1}));
    REQUIRE(f3.size() == 2);
    CHECK(f3[0] == Q({1, 1}));
    CHECK(f3[1] == Q({-2, 2, 1}));
}

TEST_CASE("factorization with content, multiplicity and rational coefficients") {
    QPoly a = Q({-1, 1}) * Q({-1, 1}) * Q({1, 0, 1}) * Rational(-6, 5);
    auto f = factor_over_rationals(a);
    CHECK(f.unit == Rational(-6, 5));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::make_pair(Q({-1, 1}), 2));
    CHECK(f.factors[1] == std::make_pair(Q({1, 0, 1}), 1));
    CHECK(f.expand() == a);
    CHECK_THROWS_AS(factor_over_rationals(QPoly()), InputError);
    // Swinnerton-Dyer style: x^4 - 10x^2 + 1 splits modulo every prime.
    auto sd = factor_over_rationals(Q({1, 0, -10, 0, 1}));
    CHECK(sd.factors.size() == 1);
}

TEST_CASE("irreducibility certificates") {
    auto a = certify_irreducible(Q({7, 0, 5, 0, 1}));
    CHECK(a.irreducible);
    auto b = certify_irreducible(Q({3, 0, 1}) * Q({5, 0, 4, 0, 1}));
    CHECK(!b.irreducible);
    auto c = certify_irreducible(Q({1, 0, 1}));
    CHECK(c.irreducible);
    REQUIRE(c.witness);
    CHECK(*c.witness == 3);
    auto sd = certify_irreducible(Q({1, 0, -10, 0, 1}));
    CHECK(sd.irreducible);
    CHECK(!sd.witness);
    CHECK(!certify_irreducible(Q({1, 2, 1})).irreducible);
    CHECK_THROWS_AS(certify_irreducible(Q({5})), InputError);
}

TEST_CASE("random products round-trip") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coef(-20, 20);
    std::uniform_int_distribution<int> deg(1, 6);
    for (int trial = 0; trial < 40; ++trial) {
        QPoly prod = QPoly{Rational(1)};
        int parts = 1 + trial % 4;
        for (int i = 0; i < parts; ++i) {
            std::vector<Rational> v(static_cast<std::size_t>(deg(rng)) + 1);
            for (auto& c : v) c = coef(rng);
            if (v.back() == 0) v.back() = 1;
            prod *= QPoly(v);
        }
        auto f = factor_over_rationals(prod, {});
        CHECK(f.expand() == prod);
        for (auto& [g, e] : f.factors) {
            CHECK(g.lead() == 1);
            for (std::uint64_t p : {101ULL, 103ULL, 107ULL}) {
                ZPoly z = primitive_form(g).poly;
                NmodPoly gp = NmodPoly::from(z, p);
                if (gp.degree() != g.degree() || gcd(gp, gp.derivative()).degree() != 0) continue;
                // irreducible over Q: its mod-p pattern must be consistent (sum = degree)
                int sum = 0;
                for (int d : factor_degree_pattern(gp.monic())) sum += d;
                CHECK(sum == g.degree());
            }
        }
    }
}
