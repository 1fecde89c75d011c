#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "divseq/errors.hpp"
#include "divseq/function_field.hpp"
#include "divseq/polynomial.hpp"
#include "divseq/rational_function.hpp"

namespace divseq {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a field F.
template <class F>
class WeierstrassCurve {
  public:
    F a1, a2, a3, a4, a6;
    F b2, b4, b6, b8, c4, c6, disc;

    WeierstrassCurve() = default;
    WeierstrassCurve(F a1_, F a2_, F a3_, F a4_, F a6_, bool require_smooth = true)
        : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)), a6(std::move(a6_)) {
        b2 = a1 * a1 + F(4) * a2;
        b4 = F(2) * a4 + a1 * a3;
        b6 = a3 * a3 + F(4) * a6;
        b8 = a1 * a1 * a6 + F(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        c4 = b2 * b2 - F(24) * b4;
        c6 = F(0) - b2 * b2 * b2 + F(36) * b2 * b4 - F(216) * b6;
        disc = F(0) - b2 * b2 * b8 - F(8) * b4 * b4 * b4 - F(27) * b6 * b6 + F(9) * b2 * b4 * b6;
        if (require_smooth && is_zero(disc)) throw InputError("singular Weierstrass equation (discriminant 0)");
    }

    F j_invariant() const { return c4 * c4 * c4 / disc; }

    // psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
    template <class X>
    X two_torsion(const X& x) const {
        return ((X(4) * x + X(b2)) * x + X(F(2) * b4)) * x + X(b6);
    }
    Polynomial<F> two_torsion_poly() const { return Polynomial<F>{b6, F(2) * b4, b2, F(4)}; }
    // Right-hand side x^3 + a2 x^2 + a4 x + a6 and the y-coefficient a1 x + a3.
    Polynomial<F> rhs_poly() const { return Polynomial<F>{a6, a4, a2, F(1)}; }
    Polynomial<F> h_poly() const { return Polynomial<F>{a3, a1}; }

    friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) {
        return a.a1 == b.a1 && a.a2 == b.a2 && a.a3 == b.a3 && a.a4 == b.a4 && a.a6 == b.a6;
    }
};

template <class F>
struct CurvePoint {
    bool infinity = true;
    F x, y;

    CurvePoint() = default;
    CurvePoint(F x_, F y_) : infinity(false), x(std::move(x_)), y(std::move(y_)) {}
    static CurvePoint at_infinity() { return CurvePoint(); }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        if (a.infinity || b.infinity) return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
};

template <class F>
bool on_curve(const WeierstrassCurve<F>& E, const CurvePoint<F>& P) {
    if (P.infinity) return true;
    F lhs = P.y * P.y + E.a1 * P.x * P.y + E.a3 * P.y;
    F rhs = ((P.x + E.a2) * P.x + E.a4) * P.x + E.a6;
    return lhs == rhs;
}

template <class F>
CurvePoint<F> negate(const WeierstrassCurve<F>& E, const CurvePoint<F>& P) {
    if (P.infinity) return P;
    return CurvePoint<F>(P.x, F(0) - P.y - E.a1 * P.x - E.a3);
}

template <class F>
CurvePoint<F> add(const WeierstrassCurve<F>& E, const CurvePoint<F>& P, const CurvePoint<F>& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    F lambda;
    if (P.x == Q.x) {
        F denom = F(2) * P.y + E.a1 * P.x + E.a3;
        if (!(P.y == Q.y) || is_zero(denom)) return CurvePoint<F>::at_infinity();
        lambda = (F(3) * P.x * P.x + F(2) * E.a2 * P.x + E.a4 - E.a1 * P.y) / denom;
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    F x3 = lambda * lambda + E.a1 * lambda - E.a2 - P.x - Q.x;
    // Cheapest when P is the smaller summand.
    F y3 = lambda * (P.x - x3) - P.y - E.a1 * x3 - E.a3;
    return CurvePoint<F>(x3, y3);
}

template <class F>
CurvePoint<F> point_multiply(const WeierstrassCurve<F>& E, const CurvePoint<F>& P, long n) {
    if (n < 0) return point_multiply(E, negate(E, P), -n);
    CurvePoint<F> acc = CurvePoint<F>::at_infinity(), base = P;
    while (n) {
        if (n & 1) acc = add(E, acc, base);
        n >>= 1;
        if (n) base = add(E, base, base);
    }
    return acc;
}

// psi_n = p(x) * psi_2^eps with eps = 1 exactly for even n.
template <class F>
struct DivPoly {
    int n = 0;
    Polynomial<F> p;
    int epsilon = 0;
};

namespace detail {

// The (p, eps) recursion shared by the polynomial and the value versions.
// Element type X supports ring operations; F2 is psi_2^2 in X.
template <class X, class Get>
X division_step(int n, const X& F2, Get&& get) {
    const int m = n / 2;
    if (n % 2 == 1) {
        X a = get(m + 2) * get(m) * get(m) * get(m);
        X b = get(m - 1) * get(m + 1) * get(m + 1) * get(m + 1);
        if (m % 2 == 0)
            a = a * F2 * F2;
        else
            b = b * F2 * F2;
        return a - b;
    }
    X pm1 = get(m - 1), pp1 = get(m + 1);
    return get(m) * (get(m + 2) * pm1 * pm1 - get(m - 2) * pp1 * pp1);
}

template <class F>
std::vector<F> psi3_coeffs(const WeierstrassCurve<F>& E) {
    return {E.b8, F(3) * E.b6, F(3) * E.b4, E.b2, F(3)};
}

// 2x^6 + b2 x^5 + 5 b4 x^4 + 10 b6 x^3 + 10 b8 x^2 + (b2 b8 - b4 b6) x + (b4 b8 - b6^2)
template <class F>
std::vector<F> psi4_coeffs(const WeierstrassCurve<F>& E) {
    return {E.b4 * E.b8 - E.b6 * E.b6, E.b2 * E.b8 - E.b4 * E.b6, F(10) * E.b8, F(10) * E.b6,
            F(5) * E.b4, E.b2, F(2)};
}

template <class X, class F>
X horner(const std::vector<F>& c, const X& x) {
    X acc = X(c.back());
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * x + X(c[i]);
    return acc;
}

}  // namespace detail

// Memoized division polynomials in x over the coefficient field F.
template <class F>
class DivisionPolynomials {
  public:
    using Poly = Polynomial<F>;
    explicit DivisionPolynomials(WeierstrassCurve<F> E) : E_(std::move(E)), F2_(E_.two_torsion_poly()) {}

    const WeierstrassCurve<F>& curve() const { return E_; }
    const Poly& two_torsion() const { return F2_; }

    const Poly& p(int n) {
        if (n < 0) throw std::invalid_argument("negative division polynomial index");
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        Poly val;
        switch (n) {
            case 0: val = Poly(); break;
            case 1:
            case 2: val = Poly::constant(F(1)); break;
            case 3: val = Poly(detail::psi3_coeffs(E_)); break;
            case 4: val = Poly(detail::psi4_coeffs(E_)); break;
            default: val = detail::division_step<Poly>(n, F2_, [this](int k) { return p(k); });
        }
        return cache_.emplace(n, std::move(val)).first->second;
    }

    DivPoly<F> get(int n) {
        if (n < 1) throw std::invalid_argument("division polynomial index must be >= 1");
        return DivPoly<F>{n, p(n), n % 2 == 0 ? 1 : 0};
    }

    // psi_n^2 as a polynomial in x (degree n^2 - 1) and phi_n = x psi_n^2 -
    // psi_{n-1} psi_{n+1} (degree n^2), so that x([n]P) = phi_n / psi_n^2.
    Poly psi_squared(int n) {
        Poly s = p(n) * p(n);
        return n % 2 == 0 ? s * F2_ : s;
    }
    Poly phi(int n) {
        Poly cross = p(n - 1) * p(n + 1);
        if (n % 2 == 1) cross = cross * F2_;
        return Poly::variable() * psi_squared(n) - cross;
    }

  private:
    WeierstrassCurve<F> E_;
    Poly F2_;
    std::map<int, Poly> cache_;
};

// Values p_n(x0) of the division polynomials at a single x-coordinate.
template <class F>
class DivisionValues {
  public:
    DivisionValues(const WeierstrassCurve<F>& E, F x) : E_(E), x_(std::move(x)), F2_(E.two_torsion(x_)) {}

    const F& x() const { return x_; }
    const F& two_torsion() const { return F2_; }

    const F& p(int n) {
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        F val;
        switch (n) {
            case 0: val = F(0); break;
            case 1:
            case 2: val = F(1); break;
            case 3: val = detail::horner(detail::psi3_coeffs(E_), x_); break;
            case 4: val = detail::horner(detail::psi4_coeffs(E_), x_); break;
            default: val = detail::division_step<F>(n, F2_, [this](int k) { return p(k); });
        }
        return cache_.emplace(n, std::move(val)).first->second;
    }

    // True when psi_n vanishes at the point, i.e. [n]P = O.
    bool kills(int n) {
        if (n % 2 == 0 && is_zero(F2_)) return true;
        return is_zero(p(n));
    }

    // x([n]P); throws TorsionHit when [n]P = O.
    F x_of_multiple(int n) {
        if (n < 1) throw std::invalid_argument("multiple must be >= 1");
        if (n == 1) return x_;
        if (kills(n)) throw TorsionHit(n, "[" + std::to_string(n) + "]P is the point at infinity");
        F cross = p(n - 1) * p(n + 1);
        F sq = p(n) * p(n);
        if (n % 2 == 1)
            cross = cross * F2_;
        else
            sq = sq * F2_;
        return x_ - cross / sq;
    }

  private:
    WeierstrassCurve<F> E_;
    F x_;
    F F2_;
    std::map<int, F> cache_;
};

template <class F>
F x_of_multiple(const WeierstrassCurve<F>& E, const F& xP, int n) {
    return DivisionValues<F>(E, xP).x_of_multiple(n);
}

// x([n]P) as a rational function of a symbolic x over Q.
QFunction x_of_multiple_symbolic(const WeierstrassCurve<Rational>& E, int n);

// Admissible change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
template <class F>
struct Transform {
    F u = F(1), r = F(0), s = F(0), t = F(0);
};

template <class F>
WeierstrassCurve<F> apply(const WeierstrassCurve<F>& E, const Transform<F>& T) {
    const F &u = T.u, &r = T.r, &s = T.s, &t = T.t;
    F u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    F a1 = (E.a1 + F(2) * s) / u;
    F a2 = (E.a2 - s * E.a1 + F(3) * r - s * s) / u2;
    F a3 = (E.a3 + r * E.a1 + F(2) * t) / u3;
    F a4 = (E.a4 - s * E.a3 + F(2) * r * E.a2 - (t + r * s) * E.a1 + F(3) * r * r - F(2) * s * t) / u4;
    F a6 = (E.a6 + r * E.a4 + r * r * E.a2 + r * r * r - t * E.a3 - t * t - r * t * E.a1) / u6;
    return WeierstrassCurve<F>(a1, a2, a3, a4, a6);
}

// T followed by S (as substitutions on the original coordinates).
template <class F>
Transform<F> compose(const Transform<F>& T, const Transform<F>& S) {
    Transform<F> R;
    R.u = T.u * S.u;
    R.r = T.u * T.u * S.r + T.r;
    R.s = T.u * S.s + T.s;
    R.t = T.u * T.u * T.u * S.t + T.s * T.u * T.u * S.r + T.t;
    return R;
}

template <class F>
F transform_x(const Transform<F>& T, const F& x) {
    return (x - T.r) / (T.u * T.u);
}

template <class F>
CurvePoint<F> transform_point(const Transform<F>& T, const CurvePoint<F>& P) {
    if (P.infinity) return P;
    F x = (P.x - T.r) / (T.u * T.u);
    F y = (P.y - T.s * T.u * T.u * x - T.t) / (T.u * T.u * T.u);
    return CurvePoint<F>(x, y);
}

// Isomorphism over Q carrying E onto target (apply(E, T) == target), if any.
std::optional<Transform<Rational>> isomorphism(const WeierstrassCurve<Rational>& E,
                                               const WeierstrassCurve<Rational>& target);

// Kohel's form of Velu's formulas for an odd kernel.
struct VeluIsogeny {
    WeierstrassCurve<Rational> codomain;
    QFunction x_map;                // X(x)
    QFunction y_map_a, y_map_b;     // Y = a(x) + b(x) y
    int degree = 1;
};
// kernel: monic squarefree polynomial whose roots are the x-coordinates of the
// nonzero points of an odd-order subgroup. Throws InputError otherwise.
VeluIsogeny velu_isogeny(const WeierstrassCurve<Rational>& E, const QPoly& kernel);

// Minimality of a model over Q(u) at a place of Q(u) (residue characteristic 0).
struct MinimalModel {
    bool was_minimal = true;
    WeierstrassCurve<QFunction> curve;
    Transform<QFunction> transform;  // from the input model to `curve`
    int ord_disc = 0;                // order of the discriminant of `curve`
    int ord_c4 = 0;
};
MinimalModel minimal_at_place(const WeierstrassCurve<QFunction>& E, const Place& place);

// Specializes u -> u0 (a value where every coefficient is regular).
WeierstrassCurve<Rational> specialize(const WeierstrassCurve<QFunction>& E, const Rational& u0,
                                      bool require_smooth = true);
bool regular_at(const QFunction& f, const Rational& u0);

// Naive #E(F_p) for a curve with p-integral coefficients and good reduction.
std::uint64_t count_points(const WeierstrassCurve<Rational>& E, std::uint64_t p);

}  // namespace divseq
