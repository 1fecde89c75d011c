#include <doctest.h>

#include "divseq/errors.hpp"
#include "divseq/lucas.hpp"
#include "divseq/zpoly.hpp"

using namespace divseq;

namespace {
QPoly Q(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}
const QPoly T = Q({0, 1});

LucasSpec first_spec() { return LucasSpec::direct(Q({2, 0, 1}), Q({1})); }
LucasSpec second_spec() { return LucasSpec::quadratic(Q({0, 2}), Q({2, 0, 1, -1})); }

// Primitive integer factors with positive leading coefficient, as printed.
std::vector<QPoly> printed(const FactoredPolynomial<Rational>& fp) {
    std::vector<QPoly> out;
    for (const auto& [f, e] : fp.factors)
        for (int i = 0; i < e; ++i) out.push_back(to_qpoly(primitive_form(f).poly));
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}
std::vector<QPoly> sorted(std::vector<QPoly> v) {
    std::sort(v.begin(), v.end(), canonical_less);
    return v;
}

// (1/2^{n-1}) sum_{k odd} C(n, k) s^{n-k} disc^{(k-1)/2}
QPoly binomial_oracle(const LucasSpec& spec, int n) {
    QPoly acc;
    Integer binom = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) binom = binom * (n - k + 1) / k;
        if (k % 2 == 1)
            acc += QPoly::constant(Rational(binom)) * pow(spec.s, static_cast<unsigned>(n - k)) *
                   pow(spec.discriminant(), static_cast<unsigned>((k - 1) / 2));
    }
    Integer two = 1;
    mpz_mul_2exp(two.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned>(n - 1));
    return acc * QPoly::constant(Rational(1) / Rational(two));
}
}  // namespace

TEST_CASE("spec examples for lucas_term") {
    CHECK(lucas_term(first_spec(), 3) == Q({7, 0, 5, 0, 1}));
    CHECK(lucas_term(second_spec(), 3) == Q({-2, 0, 3, 1}));
    CHECK(lucas_term(first_spec(), 1) == Q({1}));
    CHECK(lucas_term(first_spec(), 0).is_zero());
    CHECK(lucas_term(first_spec(), 2) == Q({3, 0, 1}));
    CHECK_THROWS_AS(lucas_term(first_spec(), -1), InputError);
}

TEST_CASE("spec construction") {
    CHECK_THROWS_AS(LucasSpec::direct(T, T), InputError);
    CHECK_THROWS_AS(LucasSpec::quadratic(Q({0, 2}), Q({0, 0, 1})), InputError);
    // s = 2T + 3, q = T^2 + 3T + 2: discriminant 1 is a square, roots T + 1 and T + 2.
    LucasSpec sq = LucasSpec::quadratic(Q({3, 2}), Q({2, 3, 1}));
    CHECK(sq.kind == LucasSpec::Case::direct);
    CHECK(sq.f * sq.g == Q({2, 3, 1}));
    CHECK(second_spec().kind == LucasSpec::Case::quadratic);
    CHECK(second_spec().discriminant() == Q({-8, 0, 0, 4}));
}

TEST_CASE("closed forms agree with the recurrence") {
    LucasSpec a = first_spec();
    LucasSequence seq(a);
    for (int n = 1; n <= 20; ++n)
        CHECK(pow(a.f, static_cast<unsigned>(n)) - pow(a.g, static_cast<unsigned>(n)) == (a.f - a.g) * seq.term(n));
    LucasSpec b = second_spec();
    LucasSequence seq2(b);
    for (int n = 1; n <= 20; ++n) CHECK(binomial_oracle(b, n) == seq2.term(n));
}

TEST_CASE("divisibility for m | n <= 40") {
    for (const LucasSpec& spec : {first_spec(), second_spec()}) {
        LucasSequence seq(spec);
        for (int n = 2; n <= 40; ++n)
            for (int m = 2; m < n; ++m)
                if (n % m == 0) CHECK(rem(seq.term(n), seq.term(m)).is_zero());
    }
}

TEST_CASE("cyclotomic parts") {
    LucasSpec a = first_spec();
    CHECK(cyclotomic_part(a, 6) == Q({3, 0, 3, 0, 1}));
    CHECK(cyclotomic_part(a, 2) == Q({3, 0, 1}));
    CHECK(cyclotomic_part(a, 3) == lucas_term(a, 3));
    CHECK_THROWS_AS(cyclotomic_part(a, 1), InputError);
    for (const LucasSpec& spec : {first_spec(), second_spec()}) {
        LucasSequence seq(spec);
        for (int n = 2; n <= 36; ++n) {
            QPoly acc = Q({1});
            for (int d = 2; d <= n; ++d)
                if (n % d == 0) acc *= seq.cyclotomic(d);
            CHECK(acc == seq.term(n));
        }
    }
}

TEST_CASE("first example table") {
    LucasSequence seq(first_spec());
    const std::vector<std::vector<QPoly>> table = {
        {},
        {Q({3, 0, 1})},
        {Q({7, 0, 5, 0, 1})},
        {Q({3, 0, 1}), Q({5, 0, 4, 0, 1})},
        {Q({31, 0, 49, 0, 31, 0, 9, 0, 1})},
        {Q({3, 0, 1}), Q({3, 0, 3, 0, 1}), Q({7, 0, 5, 0, 1})},
        {Q({127, 0, 321, 0, 351, 0, 209, 0, 71, 0, 13, 0, 1})},
        {Q({3, 0, 1}), Q({5, 0, 4, 0, 1}), Q({17, 0, 32, 0, 24, 0, 8, 0, 1})},
        {Q({7, 0, 5, 0, 1}), Q({73, 0, 204, 0, 246, 0, 161, 0, 60, 0, 12, 0, 1})},
        {Q({3, 0, 1}), Q({11, 0, 23, 0, 19, 0, 7, 0, 1}), Q({31, 0, 49, 0, 31, 0, 9, 0, 1})},
    };
    for (int n = 1; n <= 10; ++n) {
        CAPTURE(n);
        CHECK(printed(seq.factored(n)) == sorted(table[static_cast<std::size_t>(n - 1)]));
    }
    CHECK(seq.primitive_factors(4) == std::vector<QPoly>{Q({5, 0, 4, 0, 1})});
    CHECK(seq.primitive_factors(2) == std::vector<QPoly>{Q({3, 0, 1})});
    CHECK(seq.primitive_factors(1).empty());
}

TEST_CASE("second example table") {
    LucasSequence seq(second_spec());
    const std::vector<std::pair<long, std::vector<QPoly>>> table = {
        {1, {}},
        {2, {T}},
        {1, {Q({1, 1}), Q({-2, 2, 1})}},
        {4, {T, Q({-1, 1}), Q({2, 2, 1})}},
        {1, {Q({4, 0, -20, -4, 5, 10, 1})}},
        {2, {T, Q({1, 1}), Q({-2, 2, 1}), Q({-6, 0, 1, 3})}},
        {1, {Q({-8, 0, 84, 12, -70, -84, 1, 35, 21, 1})}},
    };
    for (int n = 1; n <= 7; ++n) {
        CAPTURE(n);
        const auto& [c, fs] = table[static_cast<std::size_t>(n - 1)];
        QPoly expect = Q({c});
        for (const auto& f : fs) expect *= f;
        CHECK(seq.term(n) == expect);
        CHECK(printed(seq.factored(n)) == sorted(fs));
    }
    CHECK_FALSE(certify_irreducible(seq.term(3)).irreducible);
}

TEST_CASE("amenability") {
    AmenabilityReport a = amenability_check(first_spec());
    CHECK(a.case_number == 1);
    CHECK(a.verdict);
    for (const auto& c : a.conditions) CHECK(c.holds);

    AmenabilityReport b = amenability_check(second_spec());
    CHECK(b.case_number == 2);
    CHECK(b.verdict);
    CHECK(b.conditions[0].detail.find("4*(T^3 - 2)") != std::string::npos);

    AmenabilityReport c = amenability_check(LucasSpec::direct(Q({0, 0, 1}), Q({0, 0, 2})));
    CHECK_FALSE(c.verdict);
    CHECK_FALSE(c.conditions[2].holds);

    // f - g = T^4 + 1 is irreducible but of composite degree.
    AmenabilityReport d = amenability_check(LucasSpec::direct(Q({2, 0, 0, 0, 1}), Q({1})));
    CHECK_FALSE(d.conditions[0].holds);
    CHECK(d.conditions[1].holds);
    // deg(f - g) < max(deg f, deg g).
    AmenabilityReport e = amenability_check(LucasSpec::direct(Q({0, 1, 1}), Q({0, 0, 1})));
    CHECK_FALSE(e.conditions[1].holds);
}

TEST_CASE("surveys") {
    LucasSurvey s = lucas_survey(first_spec(), 101);
    CHECK(s.m_supported);
    REQUIRE(s.rows.size() == 26);
    for (std::size_t i = 1; i < s.rows.size(); ++i) CHECK(s.rows[i - 1].q < s.rows[i].q);
    for (const auto& row : s.rows) {
        CAPTURE(row.q);
        REQUIRE(row.in_M.has_value());
        CHECK(*row.in_M == (row.q % 4 == 3));
        CHECK(row.L_q_irreducible);
    }
    CHECK(s.exceptions.empty());

    LucasSurvey t = lucas_survey(second_spec(), 61);
    CHECK_FALSE(t.m_supported);
    CHECK(t.reducible == std::vector<std::uint64_t>{3});
    for (const auto& row : t.rows) CHECK_FALSE(row.in_M.has_value());

    // M-density for T^2 + 1 approaches one half.
    std::size_t in = 0, total = 0;
    for (std::uint64_t q : primes_up_to(10000)) {
        ++total;
        if (*in_M(first_spec(), q)) ++in;
    }
    CHECK(static_cast<double>(in) / static_cast<double>(total) == doctest::Approx(0.5).epsilon(0.05));
    CHECK(lucas_survey(first_spec(), 101, {}, 1).s_count == s.s_count);
}
