#include "divseq/rational_function.hpp"

namespace divseq {

int multiplicity(const ZPoly& a_in, const ZPoly& p) {
    if (a_in.is_zero()) throw std::domain_error("multiplicity in the zero polynomial");
    if (p.degree() < 1) throw std::domain_error("multiplicity of a constant");
    int m = 0;
    ZPoly a = a_in;
    while (a.degree() >= p.degree()) {
        auto q = divide_exact(a, p);
        if (!q) break;
        a = std::move(*q);
        ++m;
    }
    return m;
}

int multiplicity(const QPoly& a, const QPoly& p) {
    if (a.is_zero()) throw std::domain_error("multiplicity in the zero polynomial");
    return multiplicity(primitive_form(a).poly, primitive_form(p).poly);
}

int ord_at(const QFunction& r, const QPoly& p) {
    if (r.is_zero()) throw std::domain_error("order of the zero function");
    return multiplicity(r.num(), p) - (r.den().degree() > 0 ? multiplicity(r.den(), p) : 0);
}

int ord_at_infinity(const QFunction& r) {
    if (r.is_zero()) throw std::domain_error("order of the zero function");
    return r.den().degree() - r.num().degree();
}

}  // namespace divseq
