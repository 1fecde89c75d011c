#include "divseq/lucas.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "divseq/errors.hpp"
#include "divseq/nmod_poly.hpp"
#include "divseq/zpoly.hpp"

namespace divseq {

LucasSpec LucasSpec::direct(QPoly f, QPoly g) {
    if (f == g) throw InputError("f and g coincide, so (f - g) is zero");
    LucasSpec spec;
    spec.kind = Case::direct;
    spec.s = f + g;
    spec.q = f * g;
    spec.f = std::move(f);
    spec.g = std::move(g);
    return spec;
}

LucasSpec LucasSpec::quadratic(QPoly s, QPoly q) {
    QPoly disc = s * s - Rational(4) * q;
    if (disc.is_zero()) throw InputError("s^2 - 4q is zero");
    if (auto r = sqrt_exact(disc)) {
        const QPoly half = QPoly::constant(Rational(1, 2));
        return direct((s + *r) * half, (s - *r) * half);
    }
    LucasSpec spec;
    spec.kind = Case::quadratic;
    spec.s = std::move(s);
    spec.q = std::move(q);
    return spec;
}

QPoly lucas_term(const LucasSpec& spec, int n) {
    if (n < 0) throw InputError("Lucas index must be nonnegative");
    QPoly prev, cur = QPoly::constant(1);
    if (n == 0) return prev;
    for (int k = 1; k < n; ++k) {
        QPoly next = spec.s * cur - spec.q * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

bool prime_degree(int d) { return d >= 2 && is_prime(static_cast<std::uint64_t>(d)); }

bool irreducible_over_q(const QPoly& a, const FactorOptions& opts) {
    return a.degree() >= 1 && certify_irreducible(a, opts).irreducible;
}

bool proportional(const QPoly& f, const QPoly& g) {
    if (f.is_zero() || g.is_zero()) return true;
    return f * QPoly::constant(g.lead()) == g * QPoly::constant(f.lead());
}

// Content pulled out: 4*T^3 - 8 prints as 4*(T^3 - 2).
std::string degree_note(const std::string& name, const QPoly& a) {
    std::string text = to_string(a);
    if (a.degree() > 0) {
        PrimitiveForm pf = primitive_form(a);
        const std::string inner = to_string(to_qpoly(pf.poly));
        if (pf.scale == -1) text = "-(" + inner + ")";
        else if (pf.scale != 1) text = pf.scale.get_str() + "*(" + inner + ")";
    }
    return name + " = " + text + ", degree " + std::to_string(a.degree());
}

}  // namespace

AmenabilityReport amenability_check(const LucasSpec& spec, const FactorOptions& opts) {
    AmenabilityReport rep;
    rep.case_number = spec.case_number();
    if (spec.kind == LucasSpec::Case::direct) {
        const QPoly D = spec.f - spec.g;
        const int df = spec.f.is_zero() ? -1 : spec.f.degree();
        const int dg = spec.g.is_zero() ? -1 : spec.g.degree();
        rep.conditions[0] = {"irreducible of prime degree", irreducible_over_q(D, opts) && prime_degree(D.degree()),
                             degree_note("f - g", D)};
        rep.conditions[1] = {"generic degree", D.degree() == std::max(df, dg),
                             "deg(f - g) = " + std::to_string(D.degree()) +
                                 ", max(deg f, deg g) = " + std::to_string(std::max(df, dg))};
        const bool prop = proportional(spec.f, spec.g);
        rep.conditions[2] = {"no common zeroes", !prop,
                             prop ? "f is a constant multiple of g" : "f is not a constant multiple of g"};
    } else {
        const QPoly disc = spec.discriminant();
        rep.conditions[0] = {"irreducible of prime degree",
                             irreducible_over_q(disc, opts) && prime_degree(disc.degree()),
                             degree_note("s^2 - 4q", disc)};
        const int ds = spec.s.is_zero() ? -1 : spec.s.degree();
        rep.conditions[1] = {"generic degree", 2 * ds <= disc.degree(),
                             "deg s = " + std::to_string(ds) + ", deg(s^2 - 4q) / 2 = " +
                                 Rational(disc.degree(), 2).get_str()};
        rep.conditions[2] = {"no common zeroes", !spec.s.is_zero(), spec.s.is_zero() ? "s = 0" : "s != 0"};
    }
    rep.verdict = std::all_of(rep.conditions.begin(), rep.conditions.end(), [](const auto& c) { return c.holds; });
    return rep;
}

const QPoly& LucasSequence::term(int n) {
    if (n < 0) throw InputError("Lucas index must be nonnegative");
    if (terms_.empty()) {
        terms_.push_back(QPoly());
        terms_.push_back(QPoly::constant(1));
    }
    while (static_cast<int>(terms_.size()) <= n) {
        const std::size_t k = terms_.size();
        terms_.push_back(spec_.s * terms_[k - 1] - spec_.q * terms_[k - 2]);
    }
    return terms_[static_cast<std::size_t>(n)];
}

const QPoly& LucasSequence::cyclotomic(int n) {
    if (n < 2) throw InputError("cyclotomic part needs n >= 2");
    if (auto it = cyclotomic_.find(n); it != cyclotomic_.end()) return it->second;
    QPoly acc = QPoly::constant(1);
    for (int d = 2; d < n; ++d)
        if (n % d == 0) acc *= cyclotomic(d);
    auto [quo, r] = divrem(term(n), acc);
    if (!r.is_zero()) throw std::logic_error("cyclotomic division left a remainder at n = " + std::to_string(n));
    return cyclotomic_.emplace(n, std::move(quo)).first->second;
}

const FactoredPolynomial<Rational>& LucasSequence::factored(int n) {
    if (auto it = factored_.find(n); it != factored_.end()) return it->second;
    if (n < 1) throw InputError("Lucas index must be >= 1 to factor");
    return factored_.emplace(n, factor_over_rationals(term(n), opts_)).first->second;
}

std::vector<QPoly> LucasSequence::primitive_factors(int n) {
    std::vector<QPoly> out;
    if (n < 2) return out;
    std::vector<int> maximal;
    for (int p = 2; p <= n; ++p)
        if (n % p == 0 && is_prime(static_cast<std::uint64_t>(p))) maximal.push_back(n / p);
    for (const auto& [h, e] : factored(n).factors) {
        bool old = false;
        for (int m : maximal)
            if (m >= 2 && rem(term(m), h).is_zero()) old = true;
        if (!old) out.push_back(h);
    }
    return out;
}

QPoly cyclotomic_part(const LucasSpec& spec, int n) { return LucasSequence(spec).cyclotomic(n); }

std::vector<QPoly> lucas_primitive_factors(const LucasSpec& spec, int n, const FactorOptions& opts) {
    return LucasSequence(spec, opts).primitive_factors(n);
}

bool good_reduction(const LucasSpec& spec, std::uint64_t q) {
    const bool direct = spec.kind == LucasSpec::Case::direct;
    const std::vector<const QPoly*> data = direct ? std::vector{&spec.f, &spec.g} : std::vector{&spec.s, &spec.q};
    for (const QPoly* a : data)
        for (const Rational& c : a->coeffs())
            if (c.get_den() % q == 0) return false;
    const QPoly D = direct ? spec.f - spec.g : spec.discriminant();
    return D.lead().get_num() % q != 0;
}

std::optional<bool> in_M(const LucasSpec& spec, std::uint64_t q) {
    if (spec.kind != LucasSpec::Case::direct) return std::nullopt;
    const QPoly D = spec.f - spec.g;
    return good_reduction(spec, q) && D.degree() >= 1 && is_irreducible(NmodPoly::from(D, q).monic());
}

LucasSurvey lucas_survey(const LucasSpec& spec, std::uint64_t q_max, const FactorOptions& opts, unsigned threads) {
    LucasSurvey out;
    out.m_supported = spec.kind == LucasSpec::Case::direct;
    const std::vector<std::uint64_t> primes = primes_up_to(q_max);
    std::vector<QPoly> terms(primes.size());
    {
        QPoly prev, cur = QPoly::constant(1);
        std::size_t next = 0;
        for (std::uint64_t k = 1; next < primes.size(); ++k) {
            if (k == primes[next]) terms[next++] = cur;
            QPoly nxt = spec.s * cur - spec.q * prev;
            prev = std::move(cur);
            cur = std::move(nxt);
        }
    }
    out.rows.resize(primes.size());
    std::atomic<std::size_t> cursor{0};
    std::mutex failure_lock;
    std::exception_ptr failure;
    auto work = [&] {
        for (std::size_t i; (i = cursor.fetch_add(1)) < primes.size();) try {
            SurveyRow& row = out.rows[i];
            row.q = primes[i];
            row.in_M = in_M(spec, row.q);
            row.good_reduction = good_reduction(spec, row.q);
            const QPoly& L = terms[i];
            if (L.degree() >= 1) {
                IrreducibilityVerdict v = certify_irreducible(L, opts);
                row.L_q_irreducible = v.irreducible;
                row.witness = v.witness;
            }
            terms[i] = QPoly();
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_lock);
            if (!failure) failure = std::current_exception();
            cursor = primes.size();
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, primes.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    for (const auto& row : out.rows) {
        const bool m = row.in_M.value_or(false);
        if (m) ++out.m_count;
        if (row.L_q_irreducible) ++out.s_count;
        else out.reducible.push_back(row.q);
        if (m && !row.L_q_irreducible) out.exceptions.push_back(row.q);
    }
    if (!out.rows.empty()) {
        const double total = static_cast<double>(out.rows.size());
        out.m_density = static_cast<double>(out.m_count) / total;
        out.s_density = static_cast<double>(out.s_count) / total;
    }
    return out;
}

}  // namespace divseq
