#include "divseq/eds.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "divseq/errors.hpp"

namespace divseq {

namespace {

using FactorList = std::vector<std::pair<QPoly, int>>;

void merge_into(FactorList& acc, const FactorList& more, int scale) {
    for (const auto& [f, e] : more) {
        auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& fe) { return fe.first == f; });
        if (it == acc.end())
            acc.emplace_back(f, e * scale);
        else
            it->second += e * scale;
    }
}

void sort_factors(FactorList& fs) {
    std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
}

int formal_degree(int k) {
    if (k <= 0) return 0;
    return k % 2 ? (k * k - 1) / 2 : (k * k - 4) / 2;
}

std::string place_key(const Place& pl) { return pl.at_infinity ? "inf" : to_string(pl.p, "u"); }

}  // namespace

bool has_constant_coefficients(const WeierstrassCurve<QFunction>& E) {
    for (const QFunction* c : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
        if (!c->is_constant()) return false;
    return true;
}

WeierstrassCurve<Rational> constant_curve(const WeierstrassCurve<QFunction>& E) {
    if (!has_constant_coefficients(E)) throw InputError("curve coefficients are not constant");
    auto c = [](const QFunction& f) { return f.num().coeff(0); };
    return WeierstrassCurve<Rational>(c(E.a1), c(E.a2), c(E.a3), c(E.a4), c(E.a6));
}

WeierstrassCurve<QFunction> lift_curve(const WeierstrassCurve<Rational>& E) {
    return WeierstrassCurve<QFunction>(QFunction(E.a1), QFunction(E.a2), QFunction(E.a3), QFunction(E.a4),
                                       QFunction(E.a6));
}

WeierstrassCurve<FFElement> curve_over(const WeierstrassCurve<QFunction>& E, const ModelPtr& model) {
    auto c = [&](const QFunction& f) { return FFElement(f, QFunction(), model); };
    return WeierstrassCurve<FFElement>(c(E.a1), c(E.a2), c(E.a3), c(E.a4), c(E.a6));
}

void validate(const EdsContext& ctx) {
    if (!ctx.x.in_base_field())
        throw UnsupportedInput("x-coordinate of P has a nonzero v-part; places above p cannot be separated");
    if (ctx.base->is_line() && !ctx.y.in_base_field()) throw InputError("y-coordinate uses v but the base is P^1");
    FFElement x(ctx.x.a(), QFunction(), ctx.base), y(ctx.y.a(), ctx.y.b(), ctx.base);
    if (!on_curve(curve_over(ctx.curve, ctx.base), CurvePoint<FFElement>(x, y)))
        throw InputError("P does not satisfy the curve equation");

    // A constant curve has only constant torsion points.
    if (has_constant_coefficients(ctx.curve) && !ctx.x.a().is_constant()) return;
    std::set<int> suspects;
    for (int k = 1; k <= 24; ++k) suspects.insert(k);
    int tried = 0;
    for (long u0 = 0; tried < 6 && u0 < 200; ++u0) {
        const Rational r(u0);
        if (!regular_at(ctx.x.a(), r)) continue;
        WeierstrassCurve<Rational> Es;
        try {
            Es = specialize(ctx.curve, r);
        } catch (const InputError&) {
            continue;
        }
        ++tried;
        DivisionValues<Rational> dv(Es, ctx.x.a().evaluate<Rational>(r));
        for (auto it = suspects.begin(); it != suspects.end();) it = dv.kills(*it) ? std::next(it) : suspects.erase(it);
        if (suspects.empty()) return;
    }
    DivisionValues<QFunction> dv(ctx.curve, ctx.x.a());
    for (int k : suspects)
        if (dv.kills(k)) throw TorsionHit(k, "P is torsion: [" + std::to_string(k) + "]P = O");
}

int DivisorOverU::order_at(const Place& p) const {
    for (const auto& c : components)
        if (c.place == p) return c.order;
    return 0;
}

EdsEngine::EdsEngine(EdsContext ctx, FactorOptions opts) : ctx_(std::move(ctx)), opts_(opts) {
    validate(ctx_);
    ctx_.x = FFElement(ctx_.x.a(), QFunction(), ctx_.base);
    if (has_constant_coefficients(ctx_.curve)) {
        split_.emplace(constant_curve(ctx_.curve));
        split_->N = ctx_.x.a().num();
        split_->D = ctx_.x.a().den();
        split_->G = homogenize(split_->dp.two_torsion(), split_->N, split_->D, 3);
        return;
    }
    values_.emplace(ctx_.curve, ctx_.x.a());
    std::set<QPoly, decltype(&canonical_less)> bad(&canonical_less);
    for (const QFunction* c : {&ctx_.curve.a1, &ctx_.curve.a2, &ctx_.curve.a3, &ctx_.curve.a4, &ctx_.curve.a6})
        if (c->den().degree() > 0)
            for (const auto& [f, e] : factor_over_rationals(c->den(), opts_).factors) bad.insert(f);
    const QFunction& disc = ctx_.curve.disc;
    for (const QPoly* part : {&disc.num(), &disc.den()})
        if (part->degree() > 0)
            for (const auto& [f, e] : factor_over_rationals(*part, opts_).factors)
                if (part == &disc.den() || e >= 12) bad.insert(f);
    bad_.assign(bad.begin(), bad.end());
}

bool EdsEngine::is_bad(const QPoly& p) const { return std::find(bad_.begin(), bad_.end(), p) != bad_.end(); }

const MinimalModel& EdsEngine::minimal(const Place& pl) {
    std::string key = place_key(pl);
    auto it = minimal_.find(key);
    if (it != minimal_.end()) return it->second;
    return minimal_.emplace(key, minimal_at_place(ctx_.curve, pl)).first->second;
}

Place EdsEngine::resolve(Place pl) const {
    if (pl.fiber == Fiber::unresolved) resolve_fiber(*ctx_.base, pl);
    return pl;
}

const QPoly& EdsEngine::homogenized(int k) {
    auto it = split_->homog.find(k);
    if (it != split_->homog.end()) return it->second;
    QPoly val = k == 0 ? QPoly() : homogenize(split_->dp.p(k), split_->N, split_->D, formal_degree(k));
    return split_->homog.emplace(k, std::move(val)).first->second;
}

// q_d(x): the x-coordinates of the points of exact order d >= 3.
const QPoly& EdsEngine::primitive_part(int d) {
    auto it = split_->primitive.find(d);
    if (it != split_->primitive.end()) return it->second;
    QPoly q = split_->dp.p(d);
    for (int e = 3; e < d; ++e)
        if (d % e == 0) q = exact_quotient(q, primitive_part(e));
    return split_->primitive.emplace(d, std::move(q)).first->second;
}

// Irreducible factors of the part of the denominator contributed by D (d = 1),
// by psi_2^2 (d = 2) or by q_d. The factorization of q_d over Q is taken first,
// so that each pulled-back piece is factored on its own.
const FactorList& EdsEngine::primitive_factors(int d) {
    auto it = split_->primitive_factors.find(d);
    if (it != split_->primitive_factors.end()) return it->second;
    FactorList fs;
    auto pull_back = [&](const QPoly& h) {
        QPoly H = homogenize(h, split_->N, split_->D, h.degree());
        if (H.degree() > 0) merge_into(fs, factor_with_cache(H), 1);
    };
    if (d == 1) {
        if (split_->D.degree() > 0) fs = factor_with_cache(split_->D);
    } else if (d == 2) {
        for (const auto& [h, e] : factor_over_rationals(split_->dp.two_torsion(), opts_).factors) pull_back(h);
    } else {
        for (const auto& [h, e] : factor_over_rationals(primitive_part(d), opts_).factors) pull_back(h);
    }
    sort_factors(fs);
    return split_->primitive_factors.emplace(d, std::move(fs)).first->second;
}

FactorList EdsEngine::factor_with_cache(const QPoly& a) {
    FactorList out;
    QPoly rest = monic(a);
    for (const QPoly& f : known_) {
        if (rest.degree() < f.degree()) continue;
        int m = 0;
        for (;;) {
            auto [q, r] = divrem(rest, f);
            if (!r.is_zero()) break;
            rest = std::move(q);
            ++m;
        }
        if (m) out.emplace_back(f, m);
    }
    if (rest.degree() > 0)
        for (const auto& [f, e] : factor_over_rationals(rest, opts_).factors) {
            out.emplace_back(f, e);
            known_.push_back(f);
        }
    sort_factors(out);
    return out;
}

EdsEngine::Term EdsEngine::split_term(int n) {
    Term t;
    const QPoly& Pn = homogenized(n);
    QPoly sq = Pn * Pn;
    if (n % 2 == 0) sq = sq * split_->G;
    if (sq.is_zero()) throw TorsionHit(n, "[" + std::to_string(n) + "]P is the point at infinity");
    QPoly cross = homogenized(n - 1) * homogenized(n + 1);
    if (n % 2 == 1) cross = cross * split_->G;
    QPoly phi = split_->N * sq - cross;
    QPoly den = split_->D * sq;
    t.ord_inf = den.degree() - phi.degree();
    t.x = QFunction::coprime(std::move(phi), std::move(den));
    return t;
}

EdsEngine::Term EdsEngine::generic_term(int n) {
    Term t;
    t.x = values_->x_of_multiple(n);
    t.ord_inf = ord_at_infinity(t.x);
    return t;
}

const EdsEngine::Term& EdsEngine::term(int n) {
    if (n < 1) throw InputError("term index must be >= 1");
    auto it = terms_.find(n);
    if (it != terms_.end()) return it->second;
    Term t = split_ ? split_term(n) : generic_term(n);
    return terms_.emplace(n, std::move(t)).first->second;
}

const EdsEngine::Term& EdsEngine::factored_term(int n) {
    term(n);
    Term& t = terms_.at(n);
    if (t.factored) return t;
    if (split_) {
        t.den_factors = primitive_factors(1);
        if (n % 2 == 0) merge_into(t.den_factors, primitive_factors(2), 1);
        for (int d = 3; d <= n; ++d)
            if (n % d == 0) merge_into(t.den_factors, primitive_factors(d), 2);
        sort_factors(t.den_factors);
    } else if (t.x.den().degree() > 0) {
        t.den_factors = factor_with_cache(t.x.den());
    }
    t.factored = true;
    return t;
}

QFunction EdsEngine::x_multiple(int n) { return term(n).x; }

const DivisorOverU& EdsEngine::divisor(int n) {
    auto it = divisors_.find(n);
    if (it != divisors_.end()) return it->second;
    const Term& t = factored_term(n);
    DivisorOverU D;
    auto add = [&](Place pl, int ord) {
        if (ord >= 0) return;
        int twice = -ord * pl.e;
        if (twice % 2) throw std::logic_error("half-integral order at " + pl.label());
        if (pl.base_degree() <= 24) pl = resolve(pl);
        DivisorComponent c{pl, twice / 2, 0};
        c.degree = c.order * place_degree(pl);
        D.degree += c.degree;
        D.components.push_back(std::move(c));
    };
    auto local_ord = [&](const Place& pl, int naive) {
        if (split_) return naive;
        if (!pl.at_infinity && !is_bad(pl.p)) return naive;
        const MinimalModel& M = minimal(pl);
        if (M.was_minimal) return ord_at_place(t.x, pl);
        return ord_at_place(transform_x(M.transform, t.x), pl);
    };
    std::vector<QPoly> seen;
    for (const auto& [f, m] : t.den_factors) {
        Place pl = places_above(*ctx_.base, f, false, false);
        add(pl, local_ord(pl, -m));
        seen.push_back(f);
    }
    for (const QPoly& b : bad_) {
        if (std::find(seen.begin(), seen.end(), b) != seen.end()) continue;
        Place pl = places_above(*ctx_.base, b, false, false);
        add(pl, local_ord(pl, ord_at_place(t.x, pl)));
    }
    Place inf = place_at_infinity(*ctx_.base);
    add(inf, local_ord(inf, t.ord_inf));
    std::sort(D.components.begin(), D.components.end(),
              [](const auto& a, const auto& b) { return a.place < b.place; });
    return divisors_.emplace(n, std::move(D)).first->second;
}

EdsRendering EdsEngine::render(int n) {
    const Term& t = factored_term(n);
    divisor(n);
    EdsRendering out;
    out.denominator = t.x.den();
    QPoly tpoly = QPoly::constant(1);
    out.u_factors.unit = 1;
    for (const auto& [f, m] : t.den_factors) {
        if (!split_ && is_bad(f)) {
            Place pl = places_above(*ctx_.base, f, false, false);
            if (!minimal(pl).was_minimal) {
                out.flagged.push_back(pl);
                continue;
            }
        }
        if (m / 2) out.u_factors.factors.emplace_back(f, m / 2);
        if (m % 2) tpoly = tpoly * f;
    }
    if (tpoly.degree() > 0) {
        const CurveModel& C = *ctx_.base;
        if (!C.is_line() && tpoly == monic(C.discriminant()))
            out.v_power = 1;
        else {
            out.symbolic_root = true;
            out.root_argument = tpoly;
        }
    }
    out.constant = out.symbolic_root || n % 2 ? 1 : n;
    return out;
}

RigidReport rigid_divisibility_check(EdsEngine& eng, int N) {
    RigidReport rep;
    rep.N = N;
    std::vector<const DivisorOverU*> divs;
    std::vector<Place> places;
    for (int n = 1; n <= N; ++n) {
        divs.push_back(&eng.divisor(n));
        for (const auto& c : divs.back()->components)
            if (std::find(places.begin(), places.end(), c.place) == places.end()) places.push_back(c.place);
    }
    std::sort(places.begin(), places.end());
    for (const Place& pl : places) {
        RigidRow row;
        row.place = pl;
        for (int n = 1; n <= N; ++n) {
            int o = divs[static_cast<std::size_t>(n - 1)]->order_at(pl);
            row.orders.push_back(o);
            if (o > 0 && row.rank == 0) {
                row.rank = n;
                row.base_order = o;
            }
        }
        for (int n = 1; n <= N; ++n) {
            int expected = n % row.rank == 0 ? row.base_order : 0;
            if (row.orders[static_cast<std::size_t>(n - 1)] != expected) ++row.violations;
        }
        rep.violations += row.violations;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::vector<PrimitiveRow> primitive_report(EdsEngine& eng, int N) {
    std::vector<PrimitiveRow> rows;
    std::vector<Place> seen;
    for (int n = 1; n <= N; ++n) {
        PrimitiveRow row;
        row.n = n;
        for (const auto& c : eng.divisor(n).components)
            if (std::find(seen.begin(), seen.end(), c.place) == seen.end()) row.primitive.push_back(c);
        for (const auto& c : row.primitive) seen.push_back(c.place);
        rows.push_back(std::move(row));
    }
    return rows;
}

HeightReport canonical_height(EdsEngine& eng, int N) {
    HeightReport rep;
    for (int n = 1; n <= N; ++n) rep.estimates.emplace_back(n, fraction(eng.divisor(n).degree, n * n));
    if (eng.split()) {
        const QFunction& x = eng.context().x.a();
        rep.split_exact = fraction(x.map_degree() * eng.model().cover_degree(), 2);
    }
    return rep;
}

MagnifiedPair make_isogeny_pair(const WeierstrassCurve<Rational>& C, const WeierstrassCurve<Rational>& E,
                                const QPoly& kernel) {
    MagnifiedPair pair;
    ModelPtr model = CurveModel::double_cover(QPoly{C.a3, C.a1}, QPoly{C.a6, C.a4, C.a2, Rational(1)});
    pair.up.base = model;
    pair.up.curve = lift_curve(C);
    pair.up.x = FFElement(QFunction::variable(), QFunction(), model);
    pair.up.y = FFElement::generator(model);

    pair.isogeny = velu_isogeny(C, kernel);
    pair.degree = pair.isogeny.degree;
    auto iso = isomorphism(pair.isogeny.codomain, E);
    if (!iso) throw InputError("the isogeny's codomain is not isomorphic to E over Q");
    pair.to_target = *iso;

    auto lift = [&](const Rational& c) { return FFElement(QFunction(c), QFunction(), model); };
    Transform<FFElement> T{lift(iso->u), lift(iso->r), lift(iso->s), lift(iso->t)};
    CurvePoint<FFElement> image(FFElement(pair.isogeny.x_map, QFunction(), model),
                                FFElement(pair.isogeny.y_map_a, pair.isogeny.y_map_b, model));
    CurvePoint<FFElement> P = transform_point(T, image);
    pair.down.base = model;
    pair.down.curve = lift_curve(E);
    pair.down.x = P.x;
    pair.down.y = P.y;
    if (!on_curve(curve_over(pair.down.curve, model), P))
        throw std::logic_error("image of the tautological point is not on E");
    return pair;
}

std::optional<KernelSearch> recover_kernel(const WeierstrassCurve<Rational>& C, const WeierstrassCurve<Rational>& E,
                                           int max_ell, const FactorOptions& opts) {
    if (C.j_invariant() == E.j_invariant() && isomorphism(C, E)) return KernelSearch{QPoly::constant(1), 1};
    DivisionPolynomials<Rational> dp(C);
    for (int ell = 3; ell <= max_ell; ell += 2) {
        if (!is_prime(static_cast<std::uint64_t>(ell))) continue;
        for (const auto& [f, e] : factor_over_rationals(dp.p(ell), opts).factors) {
            if (f.degree() != (ell - 1) / 2) continue;
            VeluIsogeny phi;
            try {
                phi = velu_isogeny(C, f);
            } catch (const InputError&) {
                continue;
            }
            if (isomorphism(phi.codomain, E)) return KernelSearch{f, ell};
        }
    }
    return std::nullopt;
}

MagnifiedReport magnified_check(EdsEngine& down, EdsEngine& up, int N) {
    MagnifiedReport rep;
    for (int n = 1; n <= N; ++n) {
        MagnifiedRow row;
        row.n = n;
        const DivisorOverU& Dn = down.divisor(n);
        for (const auto& c : up.divisor(n).components)
            if (Dn.order_at(c.place) < c.order) row.effective = false;
        row.components = static_cast<int>(Dn.components.size());
        if (!row.effective || (n >= rep.threshold && row.components < 2)) ++rep.violations;
        rep.rows.push_back(row);
    }
    return rep;
}

DecompositionReport isogeny_decomposition_check(EdsEngine& down, const WeierstrassCurve<Rational>& C, int degree,
                                                int q) {
    if (q < 2 || !is_prime(static_cast<std::uint64_t>(q))) throw InputError("q must be prime");
    if (degree % q == 0) throw InputError("q divides the isogeny degree");
    DecompositionReport rep;
    rep.q = q;
    rep.d = degree;
    rep.expected_large = (degree - 1) * (q * q - 1);
    rep.expected_small = q * q - 1;
    const DivisorOverU& Dq = down.divisor(q);
    const DivisorOverU& D1 = down.divisor(1);
    QPoly psi_q;
    if (q % 2) psi_q = monic(DivisionPolynomials<Rational>(C).p(q));
    for (const auto& c : Dq.components) {
        int diff = c.order - D1.order_at(c.place);
        if (diff <= 0) continue;
        DecompositionClass cls;
        DivisorComponent comp = c;
        comp.place = down.resolve(comp.place);
        comp.order = diff;
        comp.degree = diff * down.place_degree(comp.place);
        cls.degree = comp.degree;
        bool fiber_ok = comp.place.fiber == Fiber::inert || comp.place.fiber == Fiber::ramified ||
                        comp.place.fiber == Fiber::line;
        cls.irreducible = diff == 1 && fiber_ok;
        if (diff != 1) cls.note = "non-reduced";
        else if (comp.place.fiber == Fiber::split) cls.note = "two-orbit (split fiber)";
        if (!comp.place.at_infinity && comp.place.p == psi_q) cls.note = "division polynomial of C";
        cls.components.push_back(comp);
        rep.classes.push_back(std::move(cls));
    }
    bool large = false, small = false;
    for (const auto& cls : rep.classes) {
        if (!cls.irreducible) continue;
        if (cls.degree == rep.expected_large && !large) large = true;
        else if (cls.degree == rep.expected_small && !small) {
            small = true;
            rep.small_is_division_polynomial = cls.note == "division polynomial of C";
        }
    }
    rep.matches = rep.classes.size() == 2 && large && small;
    return rep;
}

ReductionSurvey reduction_survey(EdsEngine& eng, std::uint64_t x_max) {
    if (!eng.split()) throw InputError("reduction survey needs a curve with constant coefficients");
    ReductionSurvey rep;
    std::vector<QPoly> finite;
    for (const auto& c : eng.divisor(1).components)
        if (!c.place.at_infinity) finite.push_back(c.place.p);
    if (finite.size() != 1) throw InputError("the finite support of D_P is not a single irreducible");
    ZPoly dp = primitive_form(finite.front()).poly;
    rep.dp = to_qpoly(dp);
    const WeierstrassCurve<Rational> E = constant_curve(eng.context().curve);
    Integer dens = 1;
    for (const Rational* a : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6}) dens *= a->get_den();
    for (std::uint64_t p : primes_up_to(x_max)) {
        ReductionRow row;
        row.q = p;
        row.good = modarith::reduce(dens, p) != 0 && modarith::reduce(E.disc, p) != 0;
        if (row.good) {
            row.trace = static_cast<long>(p + 1) - static_cast<long>(count_points(E, p));
            row.ordinary = row.trace % static_cast<long>(p) != 0;
        }
        if (modarith::reduce(dp.lead(), p) != 0) row.dp_irreducible = is_irreducible(NmodPoly::from(dp, p));
        row.in_M = row.good && row.ordinary && row.dp_irreducible;
        rep.good += row.good;
        rep.ordinary += row.ordinary;
        rep.supersingular += row.good && !row.ordinary;
        rep.irreducible += row.dp_irreducible;
        rep.in_M += row.in_M;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace divseq
