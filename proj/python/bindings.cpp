#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "divseq/cli.hpp"
#include "divseq/elliptic.hpp"
#include "divseq/errors.hpp"
#include "divseq/expr.hpp"
#include "divseq/factor.hpp"
#include "divseq/lucas.hpp"
#include "divseq/numbers.hpp"
#include "divseq/zpoly.hpp"

namespace py = pybind11;
using namespace divseq;

namespace {

std::vector<std::string> coeff_strings(const ZPoly& p) {
    std::vector<std::string> out;
    for (const auto& c : p.coeffs()) out.push_back(c.get_str());
    return out;
}

LucasSpec make_spec(const std::optional<std::string>& f, const std::optional<std::string>& g,
                    const std::optional<std::string>& s, const std::optional<std::string>& q) {
    if (f && g && !s && !q) return LucasSpec::direct(parse_polynomial(*f), parse_polynomial(*g));
    if (s && q && !f && !g) return LucasSpec::quadratic(parse_polynomial(*s), parse_polynomial(*q));
    throw InputError("give either f and g, or s and q");
}

py::dict factored_dict(const FactoredPolynomial<Rational>& f, const std::string& var) {
    DisplayForm d = display_form(f);
    py::list factors;
    for (const auto& [p, e] : d.factors) {
        py::dict item;
        item["coeffs"] = coeff_strings(p);
        item["exponent"] = e;
        item["text"] = to_string(to_qpoly(p), var);
        factors.append(item);
    }
    py::dict out;
    out["constant"] = d.constant.get_str();
    out["factors"] = factors;
    out["text"] = render_display(d, var);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Lucas sequences over Q[T] and elliptic divisibility sequences over function fields";

    static py::handle error_type = PyErr_NewException("divseq._core.Error", PyExc_RuntimeError, nullptr);
    static py::handle input_type = PyErr_NewException(
        "divseq._core.InputError", py::make_tuple(error_type, py::handle(PyExc_ValueError)).release().ptr(), nullptr);
    static py::handle unsupported_type = PyErr_NewException("divseq._core.UnsupportedInput", error_type.ptr(), nullptr);
    static py::handle limit_type = PyErr_NewException("divseq._core.ResourceLimit", error_type.ptr(), nullptr);
    m.attr("Error") = error_type;
    m.attr("InputError") = input_type;
    m.attr("UnsupportedInput") = unsupported_type;
    m.attr("ResourceLimit") = limit_type;
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InputError& e) {
            PyErr_SetString(input_type.ptr(), e.what());
        } catch (const UnsupportedInput& e) {
            PyErr_SetString(unsupported_type.ptr(), e.what());
        } catch (const ResourceLimit& e) {
            PyErr_SetString(limit_type.ptr(), e.what());
        } catch (const Error& e) {
            PyErr_SetString(error_type.ptr(), e.what());
        }
    });

    m.def(
        "run_command",
        [](const std::vector<std::string>& args) {
            CommandResult r;
            {
                py::gil_scoped_release release;
                r = run_command(args);
            }
            return py::make_tuple(r.exit_code, r.out, r.err);
        },
        py::arg("args"), "Runs a CLI command in process; returns (exit_code, stdout, stderr).");

    m.def(
        "factor",
        [](const std::string& expr) {
            ParsedExpr e = parse_expression(expr);
            if (e.has_v()) throw InputError("v is not allowed here");
            FactoredPolynomial<Rational> f;
            {
                py::gil_scoped_release release;
                f = factor_over_rationals(e.a);
            }
            return factored_dict(f, e.var.empty() ? "T" : e.var);
        },
        py::arg("expr"), "Factors a polynomial over Q into integer-primitive irreducibles.");

    m.def(
        "lucas_terms",
        [](int n_max, std::optional<std::string> f, std::optional<std::string> g, std::optional<std::string> s,
           std::optional<std::string> q) {
            if (n_max < 1) throw InputError("n_max must be >= 1");
            LucasSequence seq(make_spec(f, g, s, q));
            py::list out;
            for (int n = 1; n <= n_max; ++n) out.append(factored_dict(seq.factored(n), "T"));
            return out;
        },
        py::arg("n_max") = 10, py::kw_only(), py::arg("f") = py::none(), py::arg("g") = py::none(),
        py::arg("s") = py::none(), py::arg("q") = py::none(), "Factored terms L_1..L_n_max.");

    m.def(
        "amenability",
        [](std::optional<std::string> f, std::optional<std::string> g, std::optional<std::string> s,
           std::optional<std::string> q) {
            AmenabilityReport r = amenability_check(make_spec(f, g, s, q));
            py::list conditions;
            for (const auto& c : r.conditions) {
                py::dict item;
                item["label"] = c.label;
                item["holds"] = c.holds;
                item["detail"] = c.detail;
                conditions.append(item);
            }
            py::dict out;
            out["case"] = r.case_number;
            out["verdict"] = r.verdict;
            out["conditions"] = conditions;
            return out;
        },
        py::kw_only(), py::arg("f") = py::none(), py::arg("g") = py::none(), py::arg("s") = py::none(),
        py::arg("q") = py::none());

    m.def(
        "division_polynomial",
        [](const std::vector<std::string>& a, int n) {
            if (a.size() != 5) throw InputError("expected [a1, a2, a3, a4, a6]");
            std::vector<Rational> c;
            for (const auto& s : a) c.push_back(parse_rational(s));
            WeierstrassCurve<Rational> E(c[0], c[1], c[2], c[3], c[4]);
            DivisionPolynomials<Rational> dp(E);
            if (n < 1) throw InputError("n must be >= 1");
            py::dict out;
            out["p"] = to_string(dp.p(n), "x");
            out["psi2_factor"] = n % 2 == 0;
            return out;
        },
        py::arg("a"), py::arg("n"),
        "psi_n = p_n(x) * (2y + a1 x + a3)^e with e = 1 exactly for even n; returns p_n.");
}
