#include "divseq/elliptic.hpp"

#include <vector>

namespace divseq {

QFunction x_of_multiple_symbolic(const WeierstrassCurve<Rational>& E, int n) {
    if (n < 1) throw std::invalid_argument("multiple must be >= 1");
    if (n == 1) return QFunction::variable();
    DivisionPolynomials<Rational> dp(E);
    return QFunction(dp.phi(n), dp.psi_squared(n));
}

namespace {

std::optional<Rational> rational_root(const Rational& q, unsigned k) {
    if (sgn(q) < 0 && k % 2 == 0) return std::nullopt;
    Integer n = abs(q.get_num()), d = q.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k) || !mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k))
        return std::nullopt;
    Rational r(rn, rd);
    if (sgn(q) < 0) r = -r;
    return r;
}

QFunction derivative(const QFunction& r) {
    const QPoly& n = r.num();
    const QPoly& d = r.den();
    return QFunction(n.derivative() * d - n * d.derivative(), d * d);
}

}  // namespace

std::optional<Transform<Rational>> isomorphism(const WeierstrassCurve<Rational>& E,
                                               const WeierstrassCurve<Rational>& target) {
    if (E.j_invariant() != target.j_invariant()) return std::nullopt;
    std::optional<Rational> u;
    if (sgn(E.c4) == 0) {
        u = rational_root(E.c6 / target.c6, 6);
    } else if (sgn(E.c6) == 0) {
        u = rational_root(E.c4 / target.c4, 4);
    } else {
        u = rational_root(E.c6 * target.c4 / (target.c6 * E.c4), 2);
    }
    if (!u) return std::nullopt;
    for (Rational uu : {*u, Rational(-*u)}) {
        Transform<Rational> T;
        T.u = uu;
        T.s = (uu * target.a1 - E.a1) / 2;
        T.r = (uu * uu * target.a2 - E.a2 + T.s * E.a1 + T.s * T.s) / 3;
        T.t = (uu * uu * uu * target.a3 - E.a3 - T.r * E.a1) / 2;
        if (apply(E, T) == target) return T;
    }
    return std::nullopt;
}

VeluIsogeny velu_isogeny(const WeierstrassCurve<Rational>& E, const QPoly& kernel_in) {
    if (kernel_in.is_zero()) throw InputError("kernel polynomial is zero");
    VeluIsogeny out;
    if (kernel_in.degree() == 0) {
        out.codomain = E;
        out.x_map = QFunction::variable();
        out.y_map_a = QFunction();
        out.y_map_b = QFunction(1);
        return out;
    }
    QPoly D = monic(kernel_in);
    const int k = D.degree();
    const int ell = 2 * k + 1;
    if (gcd(D, D.derivative()).degree() > 0) throw InputError("kernel polynomial is not squarefree");
    DivisionPolynomials<Rational> dp(E);
    if (!rem(dp.p(ell), D).is_zero())
        throw InputError("kernel polynomial does not divide the division polynomial of index " + std::to_string(ell));
    for (int m = 2; m <= k; ++m) {
        QPoly image = homogenize(D, dp.phi(m), dp.psi_squared(m));
        if (!rem(image, D).is_zero()) throw InputError("kernel roots are not closed under multiplication");
    }
    const Rational s1 = -D.coeff(static_cast<std::size_t>(k - 1));
    const Rational s2 = k >= 2 ? D.coeff(static_cast<std::size_t>(k - 2)) : Rational(0);
    const Rational s3 = k >= 3 ? -D.coeff(static_cast<std::size_t>(k - 3)) : Rational(0);
    const Rational t = 6 * (s1 * s1 - 2 * s2) + E.b2 * s1 + k * E.b4;
    const Rational w = 10 * (s1 * s1 * s1 - 3 * s1 * s2 + 3 * s3) + 2 * E.b2 * (s1 * s1 - 2 * s2) + 3 * E.b4 * s1 +
                       k * E.b6;
    out.codomain = WeierstrassCurve<Rational>(E.a1, E.a2, E.a3, E.a4 - 5 * t, E.a6 - E.b2 * t - 7 * w);
    const QPoly x = QPoly::variable();
    const QPoly D1 = D.derivative(), D2 = D1.derivative();
    QPoly N = (x * Rational(ell) - QPoly::constant(2 * s1)) * D * D - E.two_torsion_poly() * (D2 * D - D1 * D1) -
              QPoly{E.b4, E.b2, Rational(6)} * D1 * D;
    out.x_map = QFunction(N, D * D);
    QFunction dX = derivative(out.x_map);
    QFunction h(QPoly{E.a3, E.a1});
    out.y_map_b = dX;
    out.y_map_a = (h * dX - QFunction(E.a1) * out.x_map - QFunction(E.a3)) * QFunction(Rational(1, 2));
    out.degree = ell;
    return out;
}

MinimalModel minimal_at_place(const WeierstrassCurve<QFunction>& E, const Place& place) {
    auto ord = [&](const QFunction& f) { return ord_at_place(f, place); };
    const QFunction pi = place.at_infinity ? QFunction(QPoly::constant(1), QPoly::variable()) : QFunction(place.p);
    MinimalModel out;
    out.curve = E;
    int k = 0;
    const std::pair<const QFunction*, int> coeffs[] = {{&E.a1, 1}, {&E.a2, 2}, {&E.a3, 3}, {&E.a4, 4}, {&E.a6, 6}};
    for (auto [c, i] : coeffs) {
        if (c->is_zero()) continue;
        int o = ord(*c);
        if (o < 0) k = std::max(k, (-o + i - 1) / i);
    }
    if (k > 0) {
        Transform<QFunction> T;
        QFunction scale = 1;
        for (int i = 0; i < k; ++i) scale *= pi;
        T.u = scale.inverse();
        out.curve = apply(out.curve, T);
        out.transform = T;
        out.was_minimal = false;
    }
    for (;;) {
        out.ord_disc = ord(out.curve.disc);
        out.ord_c4 = out.curve.c4.is_zero() ? 1 << 20 : ord(out.curve.c4);
        if (out.ord_disc < 12 || out.ord_c4 < 4) break;
        const auto& C = out.curve;
        Transform<QFunction> S;
        S.s = C.a1 * QFunction(Rational(-1, 2));
        S.r = C.b2 * QFunction(Rational(-1, 12));
        S.t = (C.a3 + S.r * C.a1) * QFunction(Rational(-1, 2));
        S.u = pi;
        out.curve = apply(C, S);
        out.transform = compose(out.transform, S);
        out.was_minimal = false;
    }
    return out;
}

bool regular_at(const QFunction& f, const Rational& u0) { return f.den().evaluate<Rational>(u0) != 0; }

WeierstrassCurve<Rational> specialize(const WeierstrassCurve<QFunction>& E, const Rational& u0, bool require_smooth) {
    for (const QFunction* c : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
        if (!regular_at(*c, u0)) throw InputError("curve coefficient has a pole at the specialization point");
    auto ev = [&](const QFunction& f) { return f.evaluate<Rational>(u0); };
    return WeierstrassCurve<Rational>(ev(E.a1), ev(E.a2), ev(E.a3), ev(E.a4), ev(E.a6), require_smooth);
}

std::uint64_t count_points(const WeierstrassCurve<Rational>& E, std::uint64_t p) {
    using namespace modarith;
    if (p == 2) {
        const u64 a1 = reduce(E.a1, p), a2 = reduce(E.a2, p), a3 = reduce(E.a3, p), a4 = reduce(E.a4, p),
                  a6 = reduce(E.a6, p);
        std::uint64_t count = 1;
        for (u64 x = 0; x < 2; ++x)
            for (u64 y = 0; y < 2; ++y) {
                u64 lhs = (y * y + a1 * x * y + a3 * y) % 2;
                u64 rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
                if (lhs == rhs) ++count;
            }
        return count;
    }
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    const u64 b2 = reduce(E.b2, p), b4 = reduce(E.b4, p), b6 = reduce(E.b6, p);
    std::vector<signed char> chi(p, -1);
    chi[0] = 0;
    for (u64 y = 1; y < p; ++y) chi[mul(y, y, p)] = 1;
    std::int64_t total = static_cast<std::int64_t>(p) + 1;
    for (u64 x = 0; x < p; ++x) {
        u64 v = add(mul(add(mul(add(mul(4 % p, x, p), b2, p), x, p), mul(2, b4, p), p), x, p), b6, p);
        total += chi[v];
    }
    return static_cast<std::uint64_t>(total);
}

}  // namespace divseq
