#include <doctest.h>

#include <random>

#include "divseq/errors.hpp"
#include "divseq/factor.hpp"
#include "divseq/function_field.hpp"

using namespace divseq;

namespace {
QPoly Q(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}
const QPoly u = Q({0, 1});
const QPoly w = Q({2, 0, 0, 1});  // u^3 + 2

QPoly split_g() { return u * u * u - Rational(7) * pow(w, 4) * u + Rational(6) * pow(w, 6); }

FFElement random_element(std::mt19937_64& rng, const ModelPtr& m) {
    std::uniform_int_distribution<long> d(-5, 5);
    auto rp = [&](int deg) {
        std::vector<Rational> v(static_cast<std::size_t>(deg) + 1);
        for (auto& c : v) c = d(rng);
        v.back() = 1 + std::abs(d(rng));
        return QPoly(v);
    };
    return FFElement(QFunction(rp(2), rp(1)), QFunction(rp(1), rp(2)), m);
}
}  // namespace

TEST_CASE("inversion in K(C)") {
    auto line = CurveModel::projective_line();
    CHECK(FFElement(1).inverse() == FFElement(1));
    auto m = CurveModel::double_cover(QPoly(), Q({-2, 0, 0, 1}));
    FFElement v = FFElement::generator(m);
    CHECK(v.inverse() == FFElement(QFunction(), QFunction(QPoly::constant(1), Q({-2, 0, 0, 1})), m));
    CHECK(v * v.inverse() == FFElement(1));
    QPoly g = Q({-263580, -7820, -1, 1});
    auto c = CurveModel::double_cover(QPoly::constant(1), g);
    FFElement vc = FFElement::generator(c);
    QFunction ginv(QPoly::constant(1), g);
    CHECK(vc.inverse() == FFElement(ginv, ginv, c));
    CHECK_THROWS(FFElement(0).inverse());
}

TEST_CASE("reducible covers are rejected") {
    CHECK_THROWS_AS(CurveModel::double_cover(QPoly(), Q({1, 2, 1})), InputError);
    CHECK_THROWS_AS(CurveModel::double_cover(Q({0, 2}), Q({0, 0, -1})), InputError);  // h^2+4g = 0
}

TEST_CASE("field axioms and multiplicative norm on samples") {
    std::mt19937_64 rng(2);
    for (auto m : {CurveModel::double_cover(QPoly(), Q({-2, 0, 0, 1})),
                   CurveModel::double_cover(QPoly::constant(1), Q({-20, -10, -1, 1}))}) {
        for (int i = 0; i < 8; ++i) {
            FFElement z = random_element(rng, m), x = random_element(rng, m);
            CHECK((z * x) * x.inverse() == z);
            CHECK((z * x).norm() == z.norm() * x.norm());
            CHECK(!z.norm().is_zero());
            CHECK(z + x - x == z);
        }
    }
}

TEST_CASE("orders on the u-line") {
    CHECK(ord_at(QFunction(Q({0, 0, 1}), Q({1, 1})), u) == 2);
    CHECK(ord_at_infinity(QFunction(u)) == -1);
    QFunction xp(u, w * w);
    CHECK(ord_at(xp, w) == -2);
    CHECK(ord_at_infinity(xp) == 5);
    CHECK_THROWS(ord_at(QFunction(), u));
}

TEST_CASE("orders form a valuation and balance") {
    std::mt19937_64 rng(4);
    std::vector<QPoly> primes = {Q({0, 1}), Q({1, 1}), Q({1, 0, 1}), w};
    std::uniform_int_distribution<int> e(-2, 3);
    for (int t = 0; t < 10; ++t) {
        QFunction r(QPoly::constant(Rational(3))), s(QPoly::constant(Rational(-2)));
        for (const auto& p : primes) {
            int a = e(rng), b = e(rng);
            r *= a >= 0 ? QFunction(pow(p, a)) : QFunction(QPoly::constant(1), pow(p, -a));
            s *= b >= 0 ? QFunction(pow(p, b)) : QFunction(QPoly::constant(1), pow(p, -b));
        }
        int total = ord_at_infinity(r);
        for (const auto& p : primes) {
            CHECK(ord_at(r * s, p) == ord_at(r, p) + ord_at(s, p));
            if (!(r + s).is_zero()) {
                int lo = std::min(ord_at(r, p), ord_at(s, p));
                CHECK(ord_at(r + s, p) >= lo);
                if (ord_at(r, p) != ord_at(s, p)) CHECK(ord_at(r + s, p) == lo);
            }
            total += ord_at(r, p) * p.degree();
        }
        CHECK(total == 0);
    }
}

TEST_CASE("places above the u-line") {
    auto split = CurveModel::double_cover(QPoly(), split_g());
    Place pw = places_above(*split, w);
    CHECK(pw.e == 1);
    CHECK(pw.fiber != Fiber::ramified);
    CHECK(split->g().degree() == 18);
    auto gf = factor_over_rationals(split->g());
    REQUIRE(gf.factors.size() == 3);
    for (auto& [f, m] : gf.factors) {
        CHECK(f.degree() == 6);
        Place pf = places_above(*split, f);
        CHECK(pf.e == 2);
        CHECK(pf.fiber == Fiber::ramified);
    }
    Place inf = place_at_infinity(*split);
    CHECK(inf.e == 1);
    CHECK(inf.fiber == Fiber::inert);  // leading coefficient 6 is not a square

    auto c = CurveModel::double_cover(QPoly::constant(1), Q({-263580, -7820, -1, 1}));
    Place ic = place_at_infinity(*c);
    CHECK(ic.e == 2);
    CHECK(ord_at_place(QFunction(u), ic) * ic.e == -2);
    CHECK_THROWS_AS(places_above(*c, Q({-1, 0, 1})), InputError);
}

TEST_CASE("inert and split fibers") {
    // v^2 = u: above u - 1 the residue 1 is a square (split); above u - 2 it is not (inert).
    auto m = CurveModel::double_cover(QPoly(), u);
    CHECK(places_above(*m, Q({-1, 1})).fiber == Fiber::split);
    CHECK(places_above(*m, Q({-2, 1})).fiber == Fiber::inert);
    // Above u^2 + 1 the residue field is Q(i); u = i is not a square there (inert),
    // while for v^2 = -u^2... use v^2 = u^3 + u + 1: no general claim, just consistency.
    CHECK(places_above(*m, Q({1, 0, 1})).fiber == Fiber::inert);
    // v^2 = u^2 + 1 over u^2 + 1: ord 1, ramified
    auto m2 = CurveModel::double_cover(QPoly(), Q({1, 0, 1}));
    CHECK(places_above(*m2, Q({1, 0, 1})).fiber == Fiber::ramified);
    // v^2 = 2 (u^2 - 2): above u^2 - 2, ord 1 -> ramified; above u^2 + 1: residue 2(i^2-2) = -6
    auto m3 = CurveModel::double_cover(QPoly(), Q({-2, 0, 1}) * Rational(2));
    CHECK(places_above(*m3, Q({-2, 0, 1})).e == 2);
    // v^2 = u (u^2+1)^2 gives even order at u^2 + 1: unramified.
    auto m4 = CurveModel::double_cover(QPoly(), u * Q({1, 0, 1}) * Q({1, 0, 1}));
    CHECK(places_above(*m4, Q({1, 0, 1})).e == 1);
}
