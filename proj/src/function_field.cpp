#include "divseq/function_field.hpp"

#include <sstream>

#include "divseq/errors.hpp"
#include "divseq/factor.hpp"

namespace divseq {

ModelPtr CurveModel::projective_line() {
    static const ModelPtr line = std::make_shared<CurveModel>();
    return line;
}

ModelPtr CurveModel::double_cover(QPoly h, QPoly g) {
    auto m = std::make_shared<CurveModel>();
    m->line_ = false;
    m->disc_ = h * h + g * Rational(4);
    if (m->disc_.is_zero() || sqrt_exact(m->disc_))
        throw InputError("v^2 + h v - g is reducible over Q(u): h^2 + 4g is a square");
    m->h_ = std::move(h);
    m->g_ = std::move(g);
    return m;
}

std::string CurveModel::describe(const std::string& var) const {
    if (line_) return "P^1";
    std::string lhs = "v^2";
    if (!h_.is_zero()) lhs += " + (" + to_string(h_, var) + ")*v";
    return lhs + " = " + to_string(g_, var);
}

FFElement::FFElement(QFunction a, QFunction b, ModelPtr model)
    : a_(std::move(a)), b_(std::move(b)), model_(std::move(model)) {
    if (!b_.is_zero() && (!model_ || model_->is_line()))
        throw std::domain_error("v-part requires a double-cover model");
}

FFElement FFElement::generator(ModelPtr model) { return FFElement(QFunction(0), QFunction(1), std::move(model)); }

ModelPtr FFElement::common(const FFElement& x, const FFElement& y) {
    if (x.model_ && y.model_ && x.model_ != y.model_) throw std::domain_error("elements of different function fields");
    return x.model_ ? x.model_ : y.model_;
}

FFElement operator+(const FFElement& x, const FFElement& y) {
    return FFElement(x.a_ + y.a_, x.b_ + y.b_, FFElement::common(x, y));
}

FFElement operator-(const FFElement& x, const FFElement& y) {
    return FFElement(x.a_ - y.a_, x.b_ - y.b_, FFElement::common(x, y));
}

FFElement FFElement::operator-() const { return FFElement(-a_, -b_, model_); }

FFElement operator*(const FFElement& x, const FFElement& y) {
    ModelPtr m = FFElement::common(x, y);
    if (x.b_.is_zero() && y.b_.is_zero()) return FFElement(x.a_ * y.a_, QFunction(), m);
    if (x.b_.is_zero()) return FFElement(x.a_ * y.a_, x.a_ * y.b_, m);
    if (y.b_.is_zero()) return FFElement(x.a_ * y.a_, x.b_ * y.a_, m);
    // v^2 = g - h v
    QFunction bd = x.b_ * y.b_;
    QFunction a = x.a_ * y.a_ + bd * QFunction(m->g());
    QFunction b = &x == &y ? QFunction(2) * (x.a_ * x.b_) : x.a_ * y.b_ + x.b_ * y.a_;
    if (!m->h().is_zero()) b -= bd * QFunction(m->h());
    return FFElement(std::move(a), std::move(b), m);
}

FFElement FFElement::conjugate() const {
    if (b_.is_zero()) return *this;
    QFunction a = a_;
    if (!model_->h().is_zero()) a -= b_ * QFunction(model_->h());
    return FFElement(std::move(a), -b_, model_);
}

QFunction FFElement::norm() const {
    if (b_.is_zero()) return a_ * a_;
    QFunction n = a_ * a_ - b_ * b_ * QFunction(model_->g());
    if (!model_->h().is_zero()) n -= a_ * b_ * QFunction(model_->h());
    return n;
}

FFElement FFElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (b_.is_zero()) return FFElement(a_.inverse(), QFunction(), model_);
    QFunction ninv = norm().inverse();
    FFElement c = conjugate();
    return FFElement(c.a_ * ninv, c.b_ * ninv, model_);
}

std::string to_string(const FFElement& z, const std::string& var) {
    if (z.b().is_zero()) return to_string(z.a(), var);
    std::string vb = "(" + to_string(z.b(), var) + ")*v";
    if (z.a().is_zero()) return vb;
    return to_string(z.a(), var) + " + " + vb;
}

std::ostream& operator<<(std::ostream& os, const FFElement& z) { return os << to_string(z); }

const char* fiber_name(Fiber f) {
    switch (f) {
        case Fiber::line: return "line";
        case Fiber::inert: return "inert";
        case Fiber::split: return "split";
        case Fiber::ramified: return "ramified";
        case Fiber::unresolved: return "unresolved";
    }
    return "?";
}

std::string Place::label(const std::string& var) const {
    if (at_infinity) return "infinity";
    return to_string(p, var);
}

bool operator==(const Place& a, const Place& b) { return a.at_infinity == b.at_infinity && a.p == b.p; }

bool operator<(const Place& a, const Place& b) {
    if (a.at_infinity != b.at_infinity) return !a.at_infinity;
    return canonical_less(a.p, b.p);
}

namespace {

// Newton interpolation over Q through (x_i, y_i).
QPoly interpolate(const std::vector<Rational>& xs, std::vector<Rational> ys) {
    const std::size_t n = xs.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    QPoly acc = QPoly::constant(ys[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) acc = acc * QPoly{-xs[i], Rational(1)} + QPoly::constant(ys[i]);
    return acc;
}

// disc with the even power of p removed; returns the residual and ord_p(disc).
std::pair<QPoly, int> strip(const QPoly& disc, const QPoly& p) {
    ZPoly d = primitive_form(disc).poly, pz = primitive_form(p).poly;
    int k = 0;
    while (auto q = divide_exact(d, pz)) {
        d = std::move(*q);
        ++k;
    }
    QPoly residual = disc;
    for (int i = 0; i < k - (k % 2); ++i) residual = exact_quotient(residual, p);
    return {residual, k};
}

}  // namespace

Place places_above(const CurveModel& model, const QPoly& p_in, bool resolve, bool check_irreducible) {
    if (p_in.degree() < 1) throw InputError("a place needs a nonconstant polynomial");
    QPoly p = monic(p_in);
    if (check_irreducible && !certify_irreducible(p).irreducible)
        throw InputError("place polynomial is reducible: " + to_string(p, "u"));
    Place pl;
    pl.p = p;
    if (model.is_line()) return pl;
    auto [residual, k] = strip(model.discriminant(), p);
    if (k % 2 == 1) {
        pl.e = 2;
        pl.fiber = Fiber::ramified;
        return pl;
    }
    pl.fiber = Fiber::unresolved;
    if (resolve) resolve_fiber(model, pl);
    return pl;
}

void resolve_fiber(const CurveModel& model, Place& pl) {
    if (pl.fiber != Fiber::unresolved) return;
    if (pl.at_infinity) {
        pl = place_at_infinity(model);
        return;
    }
    QPoly disc = strip(model.discriminant(), pl.p).first;
    const int d = pl.p.degree();
    // Norm of (y - s u)^2 - disc(u) from Q(u)/(p) down to Q, by interpolation in y.
    for (long s = 0;; ++s) {
        std::vector<Rational> xs, ys;
        for (long c = 0; c <= 2 * d; ++c) {
            QPoly shifted = QPoly{Rational(c), Rational(-s)};
            xs.emplace_back(c);
            ys.push_back(resultant(pl.p, shifted * shifted - disc));
        }
        QPoly norm = interpolate(xs, ys);
        if (norm.degree() != 2 * d) continue;
        if (gcd(norm, norm.derivative()).degree() > 0) continue;
        pl.fiber = certify_irreducible(norm).irreducible ? Fiber::inert : Fiber::split;
        return;
    }
}

Place place_at_infinity(const CurveModel& model) {
    Place pl;
    pl.at_infinity = true;
    if (model.is_line()) return pl;
    const QPoly& disc = model.discriminant();
    if (disc.degree() % 2 == 1) {
        pl.e = 2;
        pl.fiber = Fiber::ramified;
        return pl;
    }
    const Rational& lc = disc.lead();
    bool square = sgn(lc) > 0 && mpz_perfect_square_p(lc.get_num_mpz_t()) && mpz_perfect_square_p(lc.get_den_mpz_t());
    pl.fiber = square ? Fiber::split : Fiber::inert;
    return pl;
}

int ord_at_place(const QFunction& r, const Place& place) {
    return place.at_infinity ? ord_at_infinity(r) : ord_at(r, place.p);
}

}  // namespace divseq
