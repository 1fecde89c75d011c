#pragma once

#include <memory>
#include <optional>
#include <string>

#include "divseq/rational_function.hpp"

namespace divseq {

// Base curve of an EDS: either the projective u-line or the double cover
// C: v^2 + h(u) v = g(u).
class CurveModel {
  public:
    static std::shared_ptr<const CurveModel> projective_line();
    // Throws InputError when h^2 + 4g is a square in Q[u] (the cover would be
    // reducible).
    static std::shared_ptr<const CurveModel> double_cover(QPoly h, QPoly g);

    bool is_line() const { return line_; }
    int cover_degree() const { return line_ ? 1 : 2; }
    const QPoly& h() const { return h_; }
    const QPoly& g() const { return g_; }
    // h^2 + 4g; the cover is v' ^2 = disc with v' = 2v + h.
    const QPoly& discriminant() const { return disc_; }
    std::string describe(const std::string& var = "u") const;

  private:
    bool line_ = true;
    QPoly h_, g_, disc_;
};

using ModelPtr = std::shared_ptr<const CurveModel>;

// a + b v in K(C) = Q(u)[v]/(v^2 + h v - g). An element without a model is a
// literal constant (b = 0) that adopts the model of the other operand, so
// generic code can write F(0), F(3).
class FFElement {
  public:
    FFElement() = default;
    FFElement(long c) : a_(c) {}  // NOLINT(implicit)
    FFElement(QFunction a) : a_(std::move(a)) {}  // NOLINT(implicit)
    FFElement(QFunction a, QFunction b, ModelPtr model);

    static FFElement generator(ModelPtr model);  // v

    const QFunction& a() const { return a_; }
    const QFunction& b() const { return b_; }
    const ModelPtr& model() const { return model_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool in_base_field() const { return b_.is_zero(); }

    FFElement conjugate() const;  // (a - b h) - b v
    QFunction norm() const;       // a^2 - a b h - b^2 g
    FFElement inverse() const;

    friend FFElement operator+(const FFElement& x, const FFElement& y);
    friend FFElement operator-(const FFElement& x, const FFElement& y);
    friend FFElement operator*(const FFElement& x, const FFElement& y);
    friend FFElement operator/(const FFElement& x, const FFElement& y) { return x * y.inverse(); }
    FFElement operator-() const;
    FFElement& operator+=(const FFElement& o) { return *this = *this + o; }
    FFElement& operator-=(const FFElement& o) { return *this = *this - o; }
    FFElement& operator*=(const FFElement& o) { return *this = *this * o; }
    FFElement& operator/=(const FFElement& o) { return *this = *this / o; }
    friend bool operator==(const FFElement& x, const FFElement& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const FFElement& x, const FFElement& y) { return !(x == y); }

  private:
    static ModelPtr common(const FFElement& x, const FFElement& y);

    QFunction a_, b_;
    ModelPtr model_;
};

inline bool is_zero(const FFElement& z) { return z.is_zero(); }
std::string to_string(const FFElement& z, const std::string& var = "u");
std::ostream& operator<<(std::ostream& os, const FFElement& z);

// Behavior of the fiber of C -> P^1 over a place of Q(u).
enum class Fiber { line, inert, split, ramified, unresolved };
const char* fiber_name(Fiber f);

// A place of Q(u) together with the fiber data of the cover above it.
struct Place {
    bool at_infinity = false;
    QPoly p;  // monic irreducible; unused at infinity
    int e = 1;
    Fiber fiber = Fiber::line;

    int base_degree() const { return at_infinity ? 1 : p.degree(); }
    // Degree of the divisor (place above) with multiplicity one: deg p times
    // the residue contribution (2/e on a double cover).
    int divisor_degree(int cover_degree) const { return base_degree() * cover_degree / e; }
    std::string label(const std::string& var = "u") const;
};

bool operator==(const Place& a, const Place& b);
bool operator<(const Place& a, const Place& b);

// Ramification and residue behavior above p (assumed monic irreducible unless
// check_irreducible). Finite unramified fibers are classified by a norm
// factorization when resolve is true, otherwise left unresolved.
Place places_above(const CurveModel& model, const QPoly& p, bool resolve = true, bool check_irreducible = true);
Place place_at_infinity(const CurveModel& model);
// Fills in an unresolved fiber.
void resolve_fiber(const CurveModel& model, Place& place);

// Order of r at a place of Q(u); lifting to a place of K(C) multiplies by e.
int ord_at_place(const QFunction& r, const Place& place);

}  // namespace divseq
