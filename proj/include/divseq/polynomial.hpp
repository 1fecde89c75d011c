#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "divseq/numbers.hpp"
#include "divseq/prime_field.hpp"

namespace divseq {

template <class R>
bool is_zero(const R& r) {
    return r == R(0);
}

template <class R>
class Polynomial;

namespace detail {
// Kronecker-substitution products for large integer and rational operands.
Polynomial<Integer> multiply_large(const Polynomial<Integer>& a, const Polynomial<Integer>& b);
Polynomial<Rational> multiply_large(const Polynomial<Rational>& a, const Polynomial<Rational>& b);
constexpr std::size_t kKroneckerThreshold = 24;
}  // namespace detail

// Dense univariate polynomial over a commutative ring R, coefficients stored
// lowest degree first. The zero polynomial has no coefficients; otherwise the
// last coefficient is nonzero.
template <class R>
class Polynomial {
  public:
    using coeff_type = R;

    Polynomial() = default;
    explicit Polynomial(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(const R& c) { return Polynomial(std::vector<R>{c}); }
    static Polynomial monomial(const R& c, std::size_t degree) {
        std::vector<R> v(degree + 1, R(0));
        v[degree] = c;
        return Polynomial(std::move(v));
    }
    static Polynomial variable() { return monomial(R(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    std::size_t size() const { return c_.size(); }

    const std::vector<R>& coeffs() const { return c_; }
    const R& operator[](std::size_t i) const { return c_[i]; }
    R coeff(std::size_t i) const { return i < c_.size() ? c_[i] : R(0); }
    const R& lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    R constant_term() const { return coeff(0); }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial& operator*=(const R& s) {
        for (auto& x : c_) x *= s;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if constexpr (std::is_same_v<R, Integer> || std::is_same_v<R, Rational>) {
            if (a.size() >= detail::kKroneckerThreshold && b.size() >= detail::kKroneckerThreshold)
                return detail::multiply_large(a, b);
        }
        std::vector<R> out(a.c_.size() + b.c_.size() - 1, R(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (divseq::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(out));
    }
    friend Polynomial operator*(Polynomial a, const R& s) { return a *= s; }
    friend Polynomial operator*(const R& s, Polynomial a) { return a *= s; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Horner evaluation in any ring S that R converts into.
    template <class S>
    S evaluate(const S& x) const {
        S acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + S(c_[i]);
        return acc;
    }
    R operator()(const R& x) const { return evaluate<R>(x); }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<R> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * R(static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    Polynomial shifted(std::size_t k) const {
        if (is_zero()) return {};
        std::vector<R> v(k, R(0));
        v.insert(v.end(), c_.begin(), c_.end());
        return Polynomial(std::move(v));
    }

    template <class S, class Convert>
    Polynomial<S> map(Convert&& f) const {
        std::vector<S> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(f(x));
        return Polynomial<S>(std::move(v));
    }

  private:
    void trim() {
        while (!c_.empty() && divseq::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<R> c_;
};

using ZPoly = Polynomial<Integer>;
using QPoly = Polynomial<Rational>;
using FpPoly = Polynomial<Fp>;

template <class R>
Polynomial<R> pow(Polynomial<R> base, unsigned exp) {
    Polynomial<R> result = Polynomial<R>::constant(R(1));
    while (exp) {
        if (exp & 1u) result *= base;
        exp >>= 1u;
        if (exp) base *= base;
    }
    return result;
}

// Long division over a field.
template <class F>
std::pair<Polynomial<F>, Polynomial<F>> divrem(const Polynomial<F>& a, const Polynomial<F>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial<F>(), a};
    std::vector<F> r = a.coeffs();
    std::vector<F> q(a.size() - b.size() + 1, F(0));
    const F inv_lead = F(1) / b.lead();
    const std::size_t db = b.size() - 1;
    for (std::size_t i = q.size(); i-- > 0;) {
        F t = r[i + db] * inv_lead;
        q[i] = t;
        if (is_zero(t)) continue;
        for (std::size_t j = 0; j <= db; ++j) r[i + j] -= t * b[j];
    }
    r.resize(db);
    return {Polynomial<F>(std::move(q)), Polynomial<F>(std::move(r))};
}

template <class F>
Polynomial<F> rem(const Polynomial<F>& a, const Polynomial<F>& b) {
    return divrem(a, b).second;
}

template <class F>
Polynomial<F> monic(const Polynomial<F>& a) {
    if (a.is_zero()) return a;
    return a * (F(1) / a.lead());
}

// Euclid over a field; the result is monic, gcd(0, 0) = 0.
template <class F>
Polynomial<F> gcd(Polynomial<F> a, Polynomial<F> b) {
    while (!b.is_zero()) {
        Polynomial<F> r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// a / b when b divides a exactly; throws std::domain_error otherwise.
template <class F>
Polynomial<F> exact_quotient(const Polynomial<F>& a, const Polynomial<F>& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
}

// g = gcd(a, b) together with the quotients a/g and b/g.
template <class P>
struct GcdCofactors {
    P g, a_over_g, b_over_g;
};

template <class F>
GcdCofactors<Polynomial<F>> gcd_cofactors(const Polynomial<F>& a, const Polynomial<F>& b) {
    Polynomial<F> g = gcd(a, b);
    return {g, exact_quotient(a, g), exact_quotient(b, g)};
}

// a(b(x)).
template <class R>
Polynomial<R> compose(const Polynomial<R>& a, const Polynomial<R>& b) {
    Polynomial<R> acc;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * b + Polynomial<R>::constant(a[i]);
    return acc;
}

// Homogenized substitution x = num/den: returns den^d * a(num/den) where d is
// the formal degree (defaults to deg a).
template <class R>
Polynomial<R> homogenize(const Polynomial<R>& a, const Polynomial<R>& num, const Polynomial<R>& den,
                         int formal_degree = -1) {
    int d = formal_degree < 0 ? a.degree() : formal_degree;
    if (a.is_zero()) return {};
    // Horner: acc_k = acc_{k+1} * num + a_k * den^{d-k}
    std::vector<Polynomial<R>> den_pow(static_cast<std::size_t>(d) + 1);
    den_pow[0] = Polynomial<R>::constant(R(1));
    for (int i = 1; i <= d; ++i) den_pow[i] = den_pow[i - 1] * den;
    Polynomial<R> acc;
    for (int k = d; k >= 0; --k) {
        acc = acc * num;
        R c = a.coeff(static_cast<std::size_t>(k));
        if (!is_zero(c)) acc += den_pow[d - k] * c;
    }
    return acc;
}

inline std::string coefficient_string(const Integer& a) { return a.get_str(); }
inline std::string coefficient_string(const Rational& a) { return a.get_str(); }
inline std::string coefficient_string(const Fp& a) { return to_string(a); }

namespace detail {
inline bool is_negative(const Integer& a) { return sgn(a) < 0; }
inline bool is_negative(const Rational& a) { return sgn(a) < 0; }
inline bool is_one(const Integer& a) { return a == 1; }
inline bool is_one(const Rational& a) { return a == 1; }
}  // namespace detail

// Canonical text form, highest degree first with explicit '*': the output
// parses back to the same polynomial under the expression grammar.
template <class R>
std::string to_string(const Polynomial<R>& p, const std::string& var = "T") {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        const R& c = p[i];
        if (is_zero(c)) continue;
        R mag = c;
        bool neg = false;
        if constexpr (std::is_same_v<R, Integer> || std::is_same_v<R, Rational>) {
            neg = detail::is_negative(c);
            if (neg) mag = -c;
        }
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool unit = false;
        if constexpr (std::is_same_v<R, Integer> || std::is_same_v<R, Rational>) unit = detail::is_one(mag);
        if (i == 0) {
            os << coefficient_string(mag);
            continue;
        }
        if (!unit) os << coefficient_string(mag) << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

template <class R>
std::ostream& operator<<(std::ostream& os, const Polynomial<R>& p) {
    return os << to_string(p);
}

}  // namespace divseq
