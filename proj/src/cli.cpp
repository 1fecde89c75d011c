#include "divseq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "divseq/eds.hpp"
#include "divseq/lucas.hpp"

namespace divseq {

using json = nlohmann::ordered_json;

namespace {

std::size_t term_count(const ZPoly& p) {
    return static_cast<std::size_t>(std::count_if(p.coeffs().begin(), p.coeffs().end(),
                                                  [](const Integer& c) { return sgn(c) != 0; }));
}

}  // namespace

DisplayForm display_form(const FactoredPolynomial<Rational>& f) {
    DisplayForm d;
    d.constant = f.unit;
    for (const auto& [p, e] : f.factors) {
        PrimitiveForm pf = primitive_form(p);
        for (int i = 0; i < e; ++i) d.constant *= pf.scale;
        d.factors.emplace_back(pf.poly, e);
    }
    // Degree, then sparser first (T before T - 1), then coefficients.
    std::sort(d.factors.begin(), d.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        if (term_count(a.first) != term_count(b.first)) return term_count(a.first) < term_count(b.first);
        return canonical_less(to_qpoly(a.first), to_qpoly(b.first));
    });
    return d;
}

std::string render_display(const DisplayForm& d, const std::string& var, const std::vector<std::string>& extra) {
    std::vector<std::string> parts = extra;
    const bool lone = parts.empty() && d.factors.size() == 1 && d.factors[0].second == 1;
    for (const auto& [p, e] : d.factors) {
        std::string t = to_string(p, var);
        if (term_count(p) > 1 && (!lone || d.constant != 1)) t = "(" + t + ")";
        if (e > 1) t += "^" + std::to_string(e);
        parts.push_back(t);
    }
    std::string body;
    for (std::size_t i = 0; i < parts.size(); ++i) body += (i ? "*" : "") + parts[i];
    if (body.empty()) return d.constant.get_str();
    if (d.constant == 1) return body;
    if (d.constant == -1) return "-" + body;
    return d.constant.get_str() + "*" + body;
}

namespace {

struct Options {
    std::string spec_path, expr;
    std::string format = "text";
    std::uint64_t seed = 0;
    int n = 0, n_max = 0;
    std::uint64_t q_max = 101, x_max = 1000;
};

struct Report {
    json data;
    std::ostringstream text;
    int exit_code = 0;
    std::string note;  // diagnostic for a nonzero exit code
};

template <class R>
json coeffs_json(const Polynomial<R>& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.get_str());
    return a;
}

// Full text for small polynomials, a summary otherwise.
std::string brief(const ZPoly& p, const std::string& var) {
    if (p.degree() <= 12) return to_string(p, var);
    return "<degree " + std::to_string(p.degree()) + ", leading " + p.lead().get_str() + ", constant " +
           p.constant_term().get_str() + ">";
}

std::string place_text(const Place& pl, const std::string& var) {
    if (pl.at_infinity) return "infinity";
    return brief(primitive_form(pl.p).poly, var);
}

json factor_json(const ZPoly& p, int e, const std::string& var) {
    return json{{"coeffs", coeffs_json(p)}, {"degree", p.degree()}, {"exponent", e}, {"text", to_string(p, var)}};
}

json display_json(const DisplayForm& d, const std::string& var) {
    json fs = json::array();
    for (const auto& [p, e] : d.factors) fs.push_back(factor_json(p, e, var));
    return fs;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

InputSpec load_spec(const Options& o) {
    if (o.spec_path.empty()) throw InputError("--spec FILE is required");
    return parse_input(read_file(o.spec_path));
}

std::string spec_var(const InputSpec& spec, const std::string& fallback) {
    for (const auto& [name, e] : spec.bindings)
        if (!e.var.empty() && e.var != "x" && e.var != "y") return e.var;
    return fallback;
}

void require_kind(const InputSpec& spec, std::initializer_list<const char*> kinds) {
    for (const char* k : kinds)
        if (spec.kind == k) return;
    std::string want;
    for (const char* k : kinds) want += (want.empty() ? "" : " or ") + std::string(k);
    throw InputError("spec kind '" + spec.kind + "' does not fit this command (expected " + want + ")");
}

LucasSpec lucas_from(const InputSpec& spec) {
    require_kind(spec, {"lucas"});
    const bool direct = spec.has("f") || spec.has("g");
    const bool quad = spec.has("s") || spec.has("q");
    if (direct && quad) throw InputError("give either f, g or s, q, not both");
    if (direct) return LucasSpec::direct(spec.polynomial("f"), spec.polynomial("g"));
    return LucasSpec::quadratic(spec.polynomial("s"), spec.polynomial("q"));
}

Rational constant_of(const InputSpec& spec, const std::string& name) {
    if (!spec.has(name)) return 0;
    QPoly p = spec.polynomial(name);
    if (p.degree() > 0) throw InputError("binding '" + name + "' must be a constant here");
    return p.constant_term();
}

WeierstrassCurve<Rational> constant_curve_from(const InputSpec& spec) {
    return WeierstrassCurve<Rational>(constant_of(spec, "a1"), constant_of(spec, "a2"), constant_of(spec, "a3"),
                                      constant_of(spec, "a4"), constant_of(spec, "a6"));
}

// C: v^2 + h v = g with h = a3 + a1 u and g = u^3 + a2 u^2 + a4 u + a6.
WeierstrassCurve<Rational> cover_curve_from(const InputSpec& spec) {
    QPoly h = spec.has("C.h") ? spec.polynomial("C.h") : QPoly();
    QPoly g = spec.polynomial("C.g");
    if (h.degree() > 1 || g.degree() != 3 || g.lead() != 1)
        throw InputError("C must be a Weierstrass cubic: deg C.h <= 1 and C.g monic of degree 3");
    return WeierstrassCurve<Rational>(h.coeff(1), g.coeff(2), h.coeff(0), g.coeff(1), g.coeff(0));
}

struct PairData {
    WeierstrassCurve<Rational> C, E;
    QPoly kernel;
    bool recovered = false;
    MagnifiedPair pair;
};

PairData pair_from(const InputSpec& spec, const FactorOptions& opts) {
    require_kind(spec, {"isogeny-pair"});
    PairData d;
    d.C = cover_curve_from(spec);
    d.E = constant_curve_from(spec);
    if (spec.has("kernel")) {
        d.kernel = monic(spec.polynomial("kernel"));
    } else {
        auto found = recover_kernel(d.C, d.E, 13, opts);
        if (!found) throw InputError("no cyclic isogeny of odd prime degree <= 13 from C to E over Q");
        d.kernel = found->kernel;
        d.recovered = true;
    }
    d.pair = make_isogeny_pair(d.C, d.E, d.kernel);
    return d;
}

EdsContext context_from(const InputSpec& spec, const FactorOptions& opts) {
    require_kind(spec, {"eds", "isogeny-pair"});
    if (spec.kind == "isogeny-pair") return pair_from(spec, opts).pair.down;
    EdsContext ctx;
    if (spec.has("C.g") || spec.has("C.h"))
        ctx.base = CurveModel::double_cover(spec.has("C.h") ? spec.polynomial("C.h") : QPoly(), spec.polynomial("C.g"));
    auto coeff = [&](const char* name) {
        return spec.has(name) || spec.has(std::string(name) + ".num") ? spec.function(name) : QFunction();
    };
    ctx.curve = WeierstrassCurve<QFunction>(coeff("a1"), coeff("a2"), coeff("a3"), coeff("a4"), coeff("a6"));
    auto [xa, xb] = spec.element("P.x");
    auto [ya, yb] = spec.element("P.y");
    if (ctx.base->is_line()) {
        if (!xb.is_zero() || !yb.is_zero()) throw InputError("v appears in P but no cover C is given");
        ctx.x = FFElement(xa);
        ctx.y = FFElement(ya);
    } else {
        ctx.x = FFElement(xa, xb, ctx.base);
        ctx.y = FFElement(ya, yb, ctx.base);
    }
    return ctx;
}

json spec_json(const LucasSpec& s) {
    json j{{"case", s.case_number()}, {"s", coeffs_json(s.s)}, {"q", coeffs_json(s.q)}};
    if (s.kind == LucasSpec::Case::direct) {
        j["f"] = coeffs_json(s.f);
        j["g"] = coeffs_json(s.g);
    }
    return j;
}

std::string density(double d) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << d;
    return os.str();
}

std::string list_text(const std::vector<std::uint64_t>& v) {
    if (v.empty()) return "none";
    std::string s;
    for (auto q : v) s += (s.empty() ? "" : ", ") + std::to_string(q);
    return s;
}

// ---- lucas ----

void cmd_lucas_gen(const Options& o, Report& r) {
    InputSpec in = load_spec(o);
    LucasSpec spec = lucas_from(in);
    const std::string var = spec_var(in, "T");
    FactorOptions fo;
    fo.seed = o.seed;
    LucasSequence seq(spec, fo);
    int lo = 1, hi = o.n_max > 0 ? o.n_max : 10;
    if (o.n > 0) lo = hi = o.n;
    r.data["spec"] = spec_json(spec);
    json terms = json::array();
    for (int n = lo; n <= hi; ++n) {
        DisplayForm d = display_form(seq.factored(n));
        const std::string text = render_display(d, var);
        r.text << "L_" << n << " = " << text << "\n";
        terms.push_back(json{{"n", n},
                             {"degree", seq.term(n).degree()},
                             {"coeffs", coeffs_json(seq.term(n))},
                             {"constant", d.constant.get_str()},
                             {"factors", display_json(d, var)},
                             {"text", text}});
    }
    r.data["terms"] = terms;
}

void cmd_lucas_survey(const Options& o, Report& r) {
    InputSpec in = load_spec(o);
    LucasSpec spec = lucas_from(in);
    FactorOptions fo;
    fo.seed = o.seed;
    AmenabilityReport am = amenability_check(spec, fo);
    r.data["spec"] = spec_json(spec);
    json conds = json::array();
    r.text << "amenability: case " << am.case_number << ", " << (am.verdict ? "amenable" : "not amenable") << "\n";
    for (std::size_t i = 0; i < am.conditions.size(); ++i) {
        const auto& c = am.conditions[i];
        r.text << "  (" << i + 1 << ") " << c.label << ": " << (c.holds ? "yes" : "no") << " [" << c.detail << "]\n";
        conds.push_back(json{{"label", c.label}, {"holds", c.holds}, {"detail", c.detail}});
    }
    r.data["amenability"] = json{{"case", am.case_number}, {"verdict", am.verdict}, {"conditions", conds}};

    LucasSurvey s = lucas_survey(spec, o.q_max, fo);
    r.text << "q\tin_M\tL_q\twitness\n";
    json rows = json::array();
    for (const auto& row : s.rows) {
        const std::string m = row.in_M ? (*row.in_M ? "yes" : "no") : "unsupported";
        r.text << row.q << "\t" << m << "\t" << (row.L_q_irreducible ? "irreducible" : "reducible") << "\t"
               << (row.witness ? std::to_string(*row.witness) : "-") << "\n";
        json jr{{"q", row.q}};
        jr["in_M"] = row.in_M ? json(*row.in_M) : json("unsupported");
        jr["good_reduction"] = row.good_reduction;
        jr["L_q_irreducible"] = row.L_q_irreducible;
        jr["witness"] = row.witness ? json(*row.witness) : json(nullptr);
        rows.push_back(jr);
    }
    r.text << "primes: " << s.rows.size() << "\n";
    if (s.m_supported)
        r.text << "M: " << s.m_count << " (density " << density(s.m_density) << ")\n";
    else
        r.text << "M: unsupported for case-2 specs\n";
    r.text << "S (L_q irreducible): " << s.s_count << " (density " << density(s.s_density) << ")\n";
    if (s.m_supported) r.text << "exceptions (M \\ S): " << list_text(s.exceptions) << "\n";
    r.text << "L_q reducible: " << list_text(s.reducible) << "\n";
    json summary{{"primes", s.rows.size()}, {"m_supported", s.m_supported}, {"m_count", s.m_count},
                 {"m_density", s.m_density}, {"s_count", s.s_count},      {"s_density", s.s_density},
                 {"exceptions", s.exceptions}, {"reducible", s.reducible}};
    r.data["survey"] = json{{"rows", rows}, {"summary", summary}};
    if (!s.m_supported) {
        r.exit_code = 2;
        r.note = "the M-column is unsupported for case-2 (quadratic) specs; irreducibility rows are complete";
    }
}

// ---- factor ----

void cmd_factor(const Options& o, Report& r) {
    ParsedExpr e;
    if (!o.expr.empty()) {
        e = parse_expression(o.expr);
    } else {
        InputSpec in = load_spec(o);
        require_kind(in, {"factor"});
        e = in.get("p");
    }
    if (e.has_v()) throw InputError("factor takes a polynomial without v");
    if (e.a.is_zero()) throw InputError("cannot factor the zero polynomial");
    const std::string var = e.var.empty() ? "T" : e.var;
    FactorOptions fo;
    fo.seed = o.seed;
    DisplayForm d = display_form(factor_over_rationals(e.a, fo));
    const std::string text = render_display(d, var);
    r.text << to_string(e.a, var) << " = " << text << "\n";
    r.data["input"] = coeffs_json(e.a);
    r.data["constant"] = d.constant.get_str();
    r.data["factors"] = display_json(d, var);
    r.data["text"] = text;
}

// ---- eds ----

struct EdsSetup {
    InputSpec spec;
    std::string var;
    FactorOptions fo;
};

EdsSetup eds_setup(const Options& o) {
    EdsSetup s{load_spec(o), "u", {}};
    s.var = spec_var(s.spec, "u");
    s.fo.seed = o.seed;
    return s;
}

json component_json(const DivisorComponent& c, const std::string& var) {
    json j{{"place", c.place.at_infinity ? std::string("infinity") : to_string(c.place.p, var)}};
    j["coeffs"] = c.place.at_infinity ? json(nullptr) : coeffs_json(c.place.p);
    j["fiber"] = fiber_name(c.place.fiber);
    j["e"] = c.place.e;
    j["order"] = c.order;
    j["degree"] = c.degree;
    return j;
}

json divisor_json(int n, const DivisorOverU& D, const std::string& var) {
    json comps = json::array();
    for (const auto& c : D.components) comps.push_back(component_json(c, var));
    return json{{"n", n}, {"degree", D.degree}, {"components", comps}};
}

void divisor_text(std::ostream& os, int n, const DivisorOverU& D, const std::string& var) {
    os << "D_" << n << "P: degree " << D.degree << ", " << D.components.size() << " component(s)\n";
    for (const auto& c : D.components)
        os << "  " << place_text(c.place, var) << "\tfiber " << fiber_name(c.place.fiber) << "\te " << c.place.e
           << "\torder " << c.order << "\tdegree " << c.degree << "\n";
}

std::pair<int, int> range(const Options& o, int default_max) {
    if (o.n > 0) return {o.n, o.n};
    return {1, o.n_max > 0 ? o.n_max : default_max};
}

void cmd_eds_terms(const Options& o, Report& r) {
    EdsSetup s = eds_setup(o);
    EdsEngine eng(context_from(s.spec, s.fo), s.fo);
    auto [lo, hi] = range(o, 4);
    json terms = json::array();
    for (int n = lo; n <= hi; ++n) {
        EdsRendering rd = eng.render(n);
        // D_nP is a divisor, so only the normalized constant is shown.
        DisplayForm d = display_form(rd.u_factors);
        d.constant = rd.constant;
        std::vector<std::string> extra;
        if (rd.v_power) extra.push_back("v");
        if (rd.symbolic_root) extra.push_back("sqrt(" + to_string(primitive_form(rd.root_argument).poly, s.var) + ")");
        const std::string text = render_display(d, s.var, extra);
        const int degree = eng.divisor(n).degree;
        Place inf;
        inf.at_infinity = true;
        const int at_inf = eng.divisor(n).order_at(inf);
        r.text << "D_" << n << "P = " << text << "\t[degree " << degree;
        if (at_inf) r.text << ", order " << at_inf << " at infinity";
        r.text << "]";
        if (!rd.flagged.empty()) {
            r.text << "\tnon-minimal places omitted:";
            for (const auto& pl : rd.flagged) r.text << " " << place_text(pl, s.var);
        }
        r.text << "\n";
        json flagged = json::array();
        for (const auto& pl : rd.flagged) flagged.push_back(pl.label(s.var));
        terms.push_back(json{{"n", n},
                             {"degree", degree},
                             {"constant", d.constant.get_str()},
                             {"order_at_infinity", at_inf},
                             {"v_power", rd.v_power},
                             {"symbolic_root", rd.symbolic_root ? coeffs_json(rd.root_argument) : json(nullptr)},
                             {"factors", display_json(d, s.var)},
                             {"flagged", flagged},
                             {"text", text}});
    }
    r.data["terms"] = terms;
}

void cmd_eds_divisor(const Options& o, Report& r) {
    EdsSetup s = eds_setup(o);
    EdsEngine eng(context_from(s.spec, s.fo), s.fo);
    const int n = o.n > 0 ? o.n : 1;
    const DivisorOverU& D = eng.divisor(n);
    divisor_text(r.text, n, D, s.var);
    r.data["divisor"] = divisor_json(n, D, s.var);
}

void cmd_eds_primitive(const Options& o, Report& r) {
    EdsSetup s = eds_setup(o);
    EdsEngine eng(context_from(s.spec, s.fo), s.fo);
    const int N = o.n_max > 0 ? o.n_max : 12;
    json prim = json::array();
    int failures = 0;
    for (const auto& row : primitive_report(eng, N)) {
        r.text << "n=" << row.n << ": " << row.primitive.size() << " primitive component(s)";
        json comps = json::array();
        for (const auto& c : row.primitive) {
            r.text << "\n  " << place_text(c.place, s.var) << "\tfiber " << fiber_name(c.place.fiber) << "\torder "
                   << c.order << "\tdegree " << c.degree;
            comps.push_back(component_json(c, s.var));
        }
        r.text << "\n";
        if (row.n >= 2 && row.primitive.empty()) ++failures;
        prim.push_back(json{{"n", row.n}, {"components", comps}});
    }
    r.text << "terms n >= 2 without a primitive component: " << failures << "\n";
    RigidReport rigid = rigid_divisibility_check(eng, N);
    r.text << "rigid divisibility (n <= " << N << "):\n";
    json rows = json::array();
    for (const auto& row : rigid.rows) {
        r.text << "  " << place_text(row.place, s.var) << "\trank " << row.rank << "\torder " << row.base_order
               << "\tviolations " << row.violations << "\n";
        rows.push_back(json{{"place", row.place.label(s.var)},
                            {"rank", row.rank},
                            {"base_order", row.base_order},
                            {"orders", row.orders},
                            {"violations", row.violations}});
    }
    r.text << "rigid violations: " << rigid.violations << "\n";
    r.data["primitive"] = json{{"rows", prim}, {"failures", failures}};
    r.data["rigid"] = json{{"N", N}, {"rows", rows}, {"violations", rigid.violations}};
}

void cmd_eds_height(const Options& o, Report& r) {
    EdsSetup s = eds_setup(o);
    EdsEngine eng(context_from(s.spec, s.fo), s.fo);
    const int N = o.n_max > 0 ? o.n_max : 12;
    HeightReport h = canonical_height(eng, N);
    r.text << "n\tdeg D_nP\tdeg/n^2\n";
    json est = json::array();
    for (const auto& [n, v] : h.estimates) {
        const int deg = eng.divisor(n).degree;
        r.text << n << "\t" << deg << "\t" << v.get_str() << "\n";
        est.push_back(json{{"n", n}, {"degree", deg}, {"ratio", v.get_str()}});
    }
    r.text << "split exact: " << (h.split_exact ? h.split_exact->get_str() : std::string("n/a")) << "\n";
    r.data["height"] =
        json{{"estimates", est}, {"split_exact", h.split_exact ? json(h.split_exact->get_str()) : json(nullptr)}};
}

void cmd_eds_isogeny(const Options& o, Report& r) {
    EdsSetup s = eds_setup(o);
    PairData d = pair_from(s.spec, s.fo);
    const auto& iso = d.pair.isogeny;
    r.text << "isogeny of degree " << d.pair.degree << " with kernel " << to_string(d.kernel, s.var)
           << (d.recovered ? " (recovered from the division polynomial)" : " (given)") << "\n";
    const Rational jc = iso.codomain.j_invariant(), je = d.E.j_invariant();
    r.text << "codomain j = " << jc.get_str() << ", E j = " << je.get_str()
           << ", isomorphic: yes\n";
    json out{{"degree", d.pair.degree},
             {"kernel", coeffs_json(d.kernel)},
             {"kernel_recovered", d.recovered},
             {"codomain_j", jc.get_str()},
             {"target_j", je.get_str()}};

    EdsEngine down(d.pair.down, s.fo), up(d.pair.up, s.fo);
    divisor_text(r.text, 1, down.divisor(1), s.var);
    out["divisor"] = divisor_json(1, down.divisor(1), s.var);

    const int N = o.n_max > 0 ? o.n_max : 6;
    MagnifiedReport mag = magnified_check(down, up, N);
    r.text << "magnification: D_nP - D_nP' effective, >= " << mag.threshold << " components for n >= "
           << mag.threshold << "\n";
    json mrows = json::array();
    for (const auto& row : mag.rows) {
        r.text << "  n=" << row.n << "\teffective " << (row.effective ? "yes" : "no") << "\tcomponents "
               << row.components << "\n";
        mrows.push_back(json{{"n", row.n}, {"effective", row.effective}, {"components", row.components}});
    }
    r.text << "magnification violations: " << mag.violations << "\n";
    out["magnification"] = json{{"rows", mrows}, {"violations", mag.violations}};

    const int q = o.n > 0 ? o.n : 3;
    DecompositionReport dec = isogeny_decomposition_check(down, d.C, d.pair.degree, q);
    r.text << "decomposition of D_" << q << "P - D_P: expected classes of degree " << dec.expected_large << " and "
           << dec.expected_small << "\n";
    json classes = json::array();
    for (const auto& cls : dec.classes) {
        const auto& c = cls.components.front();
        r.text << "  " << place_text(c.place, s.var) << "\tdegree " << cls.degree << "\t"
               << (cls.irreducible ? "irreducible" : "reducible") << (cls.note.empty() ? "" : "\t" + cls.note) << "\n";
        classes.push_back(json{{"place", c.place.label(s.var)},
                               {"degree", cls.degree},
                               {"irreducible", cls.irreducible},
                               {"note", cls.note}});
    }
    r.text << "decomposition matches: " << (dec.matches ? "yes" : "no") << "\n";
    out["decomposition"] = json{{"q", q},
                                {"expected_large", dec.expected_large},
                                {"expected_small", dec.expected_small},
                                {"classes", classes},
                                {"matches", dec.matches},
                                {"small_is_division_polynomial", dec.small_is_division_polynomial}};
    r.data["isogeny"] = out;
}

void cmd_eds_reduction(const Options& o, Report& r) {
    EdsSetup s = eds_setup(o);
    EdsEngine eng(context_from(s.spec, s.fo), s.fo);
    ReductionSurvey sv = reduction_survey(eng, o.x_max);
    r.text << "D_P finite support: " << to_string(sv.dp, s.var) << "\n";
    r.text << "q\tgood\tordinary\tD_P irreducible\tin_M\ttrace\n";
    json rows = json::array();
    for (const auto& row : sv.rows) {
        auto yn = [](bool b) { return b ? "yes" : "no"; };
        r.text << row.q << "\t" << yn(row.good) << "\t" << (row.good ? yn(row.ordinary) : "-") << "\t"
               << yn(row.dp_irreducible) << "\t" << yn(row.in_M) << "\t"
               << (row.good ? std::to_string(row.trace) : "-") << "\n";
        rows.push_back(json{{"q", row.q},
                            {"good", row.good},
                            {"ordinary", row.ordinary},
                            {"dp_irreducible", row.dp_irreducible},
                            {"in_M", row.in_M},
                            {"trace", row.trace}});
    }
    const double total = sv.rows.empty() ? 1.0 : static_cast<double>(sv.rows.size());
    r.text << "primes: " << sv.rows.size() << ", good: " << sv.good << ", ordinary: " << sv.ordinary
           << ", supersingular: " << sv.supersingular << "\n";
    r.text << "D_P irreducible: " << sv.irreducible << " (density " << density(static_cast<double>(sv.irreducible) / total)
           << "), M_P: " << sv.in_M << " (density " << density(static_cast<double>(sv.in_M) / total) << ")\n";
    json summary{{"primes", sv.rows.size()}, {"good", sv.good},          {"ordinary", sv.ordinary},
                 {"supersingular", sv.supersingular}, {"irreducible", sv.irreducible}, {"in_M", sv.in_M}};
    r.data["survey"] = json{{"dp", coeffs_json(sv.dp)}, {"rows", rows}, {"summary", summary}};
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    CommandResult res;
    Options o;
    CLI::App app{"Lucas sequences over Q[T] and elliptic divisibility sequences over function fields", "divseq"};
    app.require_subcommand(1);
    std::function<void(const Options&, Report&)> action;
    std::string command;

    auto common = [&](CLI::App* sub, const std::string& name, std::function<void(const Options&, Report&)> fn) {
        sub->add_option("--spec", o.spec_path, "spec file");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "structured"}));
        sub->add_option("--seed", o.seed, "seed for randomized factoring");
        sub->callback([&, name, fn] {
            command = name;
            action = fn;
        });
        return sub;
    };
    auto* lucas = app.add_subcommand("lucas", "Lucas sequences over Q[T]");
    lucas->require_subcommand(1);
    auto* gen = common(lucas->add_subcommand("gen", "factored terms L_1..L_N"), "lucas gen", cmd_lucas_gen);
    gen->add_option("--n", o.n, "single index")->check(CLI::PositiveNumber);
    gen->add_option("--n-max", o.n_max, "last index (default 10)")->check(CLI::PositiveNumber);
    auto* survey = common(lucas->add_subcommand("survey", "amenability and prime-indexed irreducibility survey"),
                          "lucas survey", cmd_lucas_survey);
    survey->add_option("--q-max", o.q_max, "largest prime surveyed (default 101)");

    auto* factor = common(app.add_subcommand("factor", "factor a polynomial over Q"), "factor", cmd_factor);
    factor->add_option("--expr", o.expr, "polynomial expression");

    auto* eds = app.add_subcommand("eds", "elliptic divisibility sequences");
    eds->require_subcommand(1);
    auto* terms = common(eds->add_subcommand("terms", "D_nP as functions on the base curve"), "eds terms", cmd_eds_terms);
    terms->add_option("--n", o.n, "single index")->check(CLI::PositiveNumber);
    terms->add_option("--n-max", o.n_max, "last index (default 4)")->check(CLI::PositiveNumber);
    auto* divisor = common(eds->add_subcommand("divisor", "components of D_nP"), "eds divisor", cmd_eds_divisor);
    divisor->add_option("--n", o.n, "index (default 1)")->check(CLI::PositiveNumber);
    auto* prim = common(eds->add_subcommand("primitive", "primitive components and rigid divisibility"),
                        "eds primitive", cmd_eds_primitive);
    prim->add_option("--n-max", o.n_max, "last index (default 12)")->check(CLI::PositiveNumber);
    auto* height = common(eds->add_subcommand("height", "canonical height estimates"), "eds height", cmd_eds_height);
    height->add_option("--n-max", o.n_max, "last index (default 12)")->check(CLI::PositiveNumber);
    auto* isog = common(eds->add_subcommand("isogeny", "isogeny pair: magnification and decomposition"),
                        "eds isogeny", cmd_eds_isogeny);
    isog->add_option("--n", o.n, "prime q for the decomposition of D_qP (default 3)")->check(CLI::PositiveNumber);
    isog->add_option("--n-max", o.n_max, "last index of the magnification check (default 6)")
        ->check(CLI::PositiveNumber);
    auto* red = common(eds->add_subcommand("reduction-survey", "reduction types against irreducibility of D_P"),
                       "eds reduction-survey", cmd_eds_reduction);
    red->add_option("--x-max", o.x_max, "largest prime surveyed (default 1000)");

    std::ostringstream out, err;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        res.exit_code = code == 0 ? 0 : 1;
        res.out = out.str();
        res.err = err.str();
        return res;
    }

    Report rep;
    try {
        action(o, rep);
    } catch (const UnsupportedInput& e) {
        res.exit_code = 2;
        res.err = std::string("unsupported input: ") + e.what() + "\n";
        return res;
    } catch (const ResourceLimit& e) {
        res.exit_code = 3;
        res.err = std::string("resource limit: ") + e.what() + "\n";
        return res;
    } catch (const InputError& e) {
        res.exit_code = 1;
        res.err = std::string("input error: ") + e.what() + "\n";
        return res;
    } catch (const std::exception& e) {
        res.exit_code = 1;
        res.err = std::string("error: ") + e.what() + "\n";
        return res;
    }

    json doc;
    doc["command"] = command;
    doc["args"] = args;
    doc["seed"] = o.seed;
    for (auto& [k, v] : rep.data.items()) doc[k] = v;
    doc["text"] = rep.text.str();
    res.out = o.format == "structured" ? doc.dump(2) + "\n" : rep.text.str();
    res.exit_code = rep.exit_code;
    if (!rep.note.empty()) res.err = rep.note + "\n";
    return res;
}

}  // namespace divseq
