#include <doctest.h>

#include <random>

#include "divseq/expr.hpp"

using namespace divseq;

namespace {
QPoly Q(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}

int error_column(const std::string& text) {
    try {
        parse_expression(text);
    } catch (const SyntaxError& e) {
        return e.column();
    }
    return -1;
}
}  // namespace

TEST_CASE("expression examples") {
    CHECK(parse_polynomial("T^2 + 2") == Q({2, 0, 1}));
    const QPoly u = Q({0, 1}), w = Q({2, 0, 0, 1});
    const QPoly g = u * u * u - Rational(7) * pow(w, 4) * u + Rational(6) * pow(w, 6);
    ParsedExpr e = parse_expression("u^3 - 7*(u^3 + 2)^4*u + 6*(u^3 + 2)^6");
    CHECK(e.a == g);
    CHECK(e.var == "u");
    CHECK_THROWS_AS(parse_expression("(u/(u^3+2)^2; 0)"), SyntaxError);
    CHECK(parse_polynomial("-3/4*T + 1/2") == QPoly{Rational(1, 2), Rational(-3, 4)});
    CHECK(parse_polynomial("(T + 1)^0") == Q({1}));
    CHECK(parse_polynomial("-(T - 1)*(T + 1)") == Q({1, 0, -1}));
}

TEST_CASE("pairs and v") {
    ParsedExpr p = parse_expression("(u; 2*u + 1)");
    CHECK(p.a == Q({0, 1}));
    CHECK(p.b == Q({1, 2}));
    ParsedExpr q = parse_expression("u^2 + (u + 1)*v");
    CHECK(q.a == Q({0, 0, 1}));
    CHECK(q.b == Q({1, 1}));
    CHECK_THROWS_AS(parse_expression("v*v"), SyntaxError);
    CHECK_THROWS_AS(parse_expression("v^2"), SyntaxError);
    CHECK_THROWS_AS(parse_expression("(v; 1)"), SyntaxError);
    CHECK_THROWS_AS(parse_polynomial("u + v"), SyntaxError);
}

TEST_CASE("syntax errors carry positions") {
    CHECK(error_column("T^4+5T^2+7") == 6);
    CHECK(error_column("2(T + 1)") == 2);
    CHECK(error_column("T + z") == 5);
    CHECK(error_column("T + u") == 3);
    CHECK(error_column("T^") == 3);
    CHECK(error_column("(T + 1") == 7);
    CHECK(error_column("T/2") == 2);
    CHECK(error_column("1/0") == 3);
    CHECK(error_column("T^99999") == 3);
    CHECK(error_column("") == 1);
    CHECK(error_column("T +") == 4);
    CHECK_THROWS_WITH_AS(parse_expression("T T"), doctest::Contains("implicit multiplication"), SyntaxError);
}

TEST_CASE("pretty-print round trip") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Rational> c(rng() % 12 + 1);
        for (auto& x : c) {
            long n = static_cast<long>(rng() % 2001) - 1000;
            long d = trial % 2 ? static_cast<long>(rng() % 9 + 1) : 1;
            x = fraction(n, d);
            if (rng() % 3 == 0) x = 0;
        }
        QPoly p(c);
        for (const char* var : {"T", "u"}) {
            const std::string text = to_string(p, var);
            CAPTURE(text);
            CHECK(parse_polynomial(text) == p);
            CHECK(to_string(parse_polynomial(text), var) == text);
        }
    }
}

TEST_CASE("spec files") {
    InputSpec s = parse_input("# comment\nkind = lucas\nf = T^2 + 2   # trailing\n\ng = 1\n");
    CHECK(s.kind == "lucas");
    CHECK(s.polynomial("f") == Q({2, 0, 1}));
    CHECK(s.lines.at("g") == 5);

    InputSpec e = parse_input("a4 = -7\na6 = 6\nP.x.num = u\nP.x.den = (u^3 + 2)^2\nP.y = (0; 1)\n");
    CHECK(e.kind == "eds");
    auto [xa, xb] = e.element("P.x");
    CHECK(xa == QFunction(Q({0, 1}), pow(Q({2, 0, 0, 1}), 2)));
    CHECK(xb.is_zero());
    CHECK(e.element("P.y").second == QFunction(1));
    CHECK_THROWS_AS(e.function("P.y"), InputError);
    CHECK_THROWS_WITH_AS(e.get("a1"), doctest::Contains("missing binding 'a1'"), InputError);

    CHECK(parse_input("s = 2*T\nq = 1").kind == "lucas");
    CHECK(parse_input("C.g = u^3 + 1\nkernel = u").kind == "isogeny-pair");
    CHECK(parse_input("p = T").kind == "factor");

    auto line_col = [](const std::string& text) {
        try {
            parse_input(text);
        } catch (const SyntaxError& err) {
            return std::make_pair(err.line(), err.column());
        }
        return std::make_pair(0, 0);
    };
    CHECK(line_col("f = T\ng = 5T") == std::make_pair(2, 6));
    CHECK(line_col("f = T\n  bogus = 1") == std::make_pair(2, 3));
    CHECK(line_col("f = T\nf = 1") == std::make_pair(2, 1));
    CHECK(line_col("f T") == std::make_pair(1, 1));
    CHECK(line_col("kind = elliptic") == std::make_pair(1, 8));
    CHECK(line_col("f =") == std::make_pair(1, 4));
    CHECK_THROWS_AS(parse_input("a4 = 1"), InputError);
}
