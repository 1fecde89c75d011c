#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

#include "divseq/polynomial.hpp"
#include "divseq/zpoly.hpp"

namespace divseq {

// Quotient num/den of polynomials over a field, kept in lowest terms with a
// monic denominator.
template <class F>
class RationalFunction {
  public:
    using Poly = Polynomial<F>;

    RationalFunction() : den_(Poly::constant(F(1))) {}
    RationalFunction(long c) : num_(Poly::constant(F(c))), den_(Poly::constant(F(1))) {}  // NOLINT
    RationalFunction(const F& c) : num_(Poly::constant(c)), den_(Poly::constant(F(1))) {}      // NOLINT
    RationalFunction(Poly p) : num_(std::move(p)), den_(Poly::constant(F(1))) {}               // NOLINT
    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RationalFunction variable() { return RationalFunction(Poly::variable()); }
    // Builds num/den assuming gcd(num, den) = 1 already; only rescales.
    static RationalFunction coprime(Poly num, Poly den) {
        RationalFunction r;
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
        F lc = den.lead();
        r.num_ = num * (F(1) / lc);
        r.den_ = den * (F(1) / lc);
        if (r.num_.is_zero()) r.den_ = Poly::constant(F(1));
        return r;
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    // max(deg num, deg den): the degree of the map to P^1.
    int map_degree() const { return std::max(num_.degree(), den_.degree()); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        if (a.is_polynomial()) return RationalFunction::coprime(a.num_ * b.den_ + b.num_, b.den_);
        if (b.is_polynomial()) return RationalFunction::coprime(a.num_ + b.num_ * a.den_, a.den_);
        auto [g, ad, bd] = gcd_cofactors(a.den_, b.den_);
        if (g.degree() == 0) return coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        Poly num = a.num_ * bd + b.num_ * ad;
        if (num.is_zero()) return {};
        auto [g2, num2, g_rest] = gcd_cofactors(num, g);
        if (g2.degree() == 0) return coprime(std::move(num), ad * b.den_);
        return coprime(std::move(num2), ad * bd * g_rest);
    }
    friend RationalFunction operator-(const RationalFunction& a) {
        RationalFunction r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (&a == &b) return coprime(a.num_ * a.num_, a.den_ * a.den_);
        Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
        cancel(an, bd);
        cancel(bn, ad);
        return coprime(an * bn, ad * bd);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

    RationalFunction inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero rational function");
        return coprime(den_, num_);
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    template <class S>
    S evaluate(const S& x) const {
        return num_.template evaluate<S>(x) / den_.template evaluate<S>(x);
    }

  private:
    static void cancel(Poly& n, Poly& d) {
        if (n.degree() <= 0 || d.degree() <= 0) return;
        auto [g, nq, dq] = gcd_cofactors(n, d);
        if (g.degree() > 0) {
            n = std::move(nq);
            d = std::move(dq);
        }
    }
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::constant(F(1));
            return;
        }
        cancel(num_, den_);
        F lc = den_.lead();
        if (!(lc == F(1))) {
            F inv = F(1) / lc;
            num_ *= inv;
            den_ *= inv;
        }
    }

    Poly num_;
    Poly den_;
};

using QFunction = RationalFunction<Rational>;

template <class F>
bool is_zero(const RationalFunction<F>& r) {
    return r.is_zero();
}

template <class F>
std::string to_string(const RationalFunction<F>& r, const std::string& var = "T") {
    if (r.is_polynomial()) return to_string(r.num(), var);
    auto wrap = [&](const Polynomial<F>& p) {
        std::string s = to_string(p, var);
        std::size_t terms = 0;
        for (const auto& c : p.coeffs()) terms += is_zero(c) ? 0 : 1;
        bool bare = terms == 1 && (p.degree() > 0 ? p.lead() == F(1) : s.find_first_of("/-") == std::string::npos);
        return bare ? s : "(" + s + ")";
    };
    return wrap(r.num()) + "/" + wrap(r.den());
}

template <class F>
std::ostream& operator<<(std::ostream& os, const RationalFunction<F>& r) {
    return os << to_string(r);
}

// Multiplicity of the irreducible p in a != 0.
int multiplicity(const QPoly& a, const QPoly& p);
int multiplicity(const ZPoly& a, const ZPoly& p);

// Order at the finite place p (monic irreducible) and at infinity.
int ord_at(const QFunction& r, const QPoly& p);
int ord_at_infinity(const QFunction& r);

}  // namespace divseq
