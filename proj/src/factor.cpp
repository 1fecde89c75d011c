#include "divseq/factor.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "divseq/errors.hpp"

namespace divseq {

bool canonical_less(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

FactoredPolynomial<Fp> factor_mod_p(const FpPoly& a, const FactorOptions& opts) {
    if (a.is_zero()) throw InputError("cannot factor the zero polynomial");
    NmodPoly f = NmodPoly::from(a);
    FactoredPolynomial<Fp> out;
    out.unit = Fp(f.lead(), f.modulus());
    std::mt19937_64 rng(opts.seed);
    for (auto& [g, e] : factor_monic(f.monic(), rng)) out.factors.emplace_back(g.to_fp_poly(), e);
    return out;
}

namespace {

// Arithmetic in (Z/M)[x], coefficients kept in [0, M).

ZPoly reduce_mod(const ZPoly& a, const Integer& m) {
    std::vector<Integer> v(a.coeffs());
    for (auto& c : v) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    return ZPoly(std::move(v));
}

ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) { return reduce_mod(a * b, m); }

// Division by a monic polynomial modulo m.
std::pair<ZPoly, ZPoly> divrem_monic(const ZPoly& a_in, const ZPoly& b, const Integer& m) {
    ZPoly a = reduce_mod(a_in, m);
    if (a.degree() < b.degree()) return {ZPoly(), a};
    std::vector<Integer> r(a.coeffs());
    const std::size_t db = b.size() - 1;
    std::vector<Integer> q(r.size() - db);
    for (std::size_t i = q.size(); i-- > 0;) {
        Integer t = r[i + db];
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
        q[i] = t;
        if (sgn(t) == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[i + j].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
    }
    r.resize(db);
    return {ZPoly(std::move(q)), reduce_mod(ZPoly(std::move(r)), m)};
}

ZPoly symmetric_mod(const ZPoly& a, const Integer& m) {
    Integer half = m / 2;
    std::vector<Integer> v(a.coeffs());
    for (auto& c : v) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) c -= m;
    }
    return ZPoly(std::move(v));
}

// Quadratic lifting of f = g*h (h monic, s*g + t*h = 1) from modulus m to
// modulus m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m2) {
    ZPoly e = reduce_mod(f - g * h, m2);
    auto [q, r] = divrem_monic(s * e, h, m2);
    ZPoly gs = reduce_mod(g + t * e + q * g, m2);
    ZPoly hs = reduce_mod(h + r, m2);
    ZPoly b = reduce_mod(s * gs + t * hs - ZPoly{Integer(1)}, m2);
    auto [c, d] = divrem_monic(s * b, hs, m2);
    ZPoly ss = reduce_mod(s - d, m2);
    ZPoly ts = reduce_mod(t - t * b - c * gs, m2);
    g = std::move(gs);
    h = std::move(hs);
    s = std::move(ss);
    t = std::move(ts);
}

NmodPoly product(const std::vector<NmodPoly>& fs, std::size_t lo, std::size_t hi, std::uint64_t p) {
    NmodPoly acc = NmodPoly::one(p);
    for (std::size_t i = lo; i < hi; ++i) acc = acc * fs[i];
    return acc;
}

ZPoly to_nonnegative(const NmodPoly& a) {
    std::vector<Integer> v(a.coeffs().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Integer(static_cast<unsigned long>(a[i]));
    return ZPoly(std::move(v));
}

// f has lc a unit mod p; fs are monic coprime factors of f mod p. Appends monic
// lifts mod `target` (a power of p).
void lift_tree(const ZPoly& f, const std::vector<NmodPoly>& fs, std::size_t lo, std::size_t hi, std::uint64_t p,
               const Integer& target, std::vector<ZPoly>& out) {
    if (hi - lo == 1) {
        Integer lc = f.lead(), inv;
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), target.get_mpz_t());
        out.push_back(reduce_mod(f * inv, target));
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    NmodPoly g0 = product(fs, lo, mid, p).scaled(modarith::reduce(f.lead(), p));
    NmodPoly h0 = product(fs, mid, hi, p);
    NmodXgcd x = xgcd(g0, h0);
    if (x.g.degree() != 0) throw std::invalid_argument("modular factors are not coprime");
    ZPoly g = to_nonnegative(g0), h = to_nonnegative(h0), s = to_nonnegative(x.s), t = to_nonnegative(x.t);
    Integer m(static_cast<unsigned long>(p));
    while (m < target) {
        m *= m;
        hensel_step(f, g, h, s, t, m);
    }
    g = reduce_mod(g, target);
    h = reduce_mod(h, target);
    lift_tree(g, fs, lo, mid, p, target, out);
    lift_tree(h, fs, mid, hi, p, target, out);
}

// Subset sums of a degree multiset: mask[d] set when some subset has total d.
std::vector<char> subset_sums(const std::vector<int>& degrees, int n) {
    std::vector<char> s(static_cast<std::size_t>(n) + 1, 0);
    s[0] = 1;
    for (int d : degrees)
        for (int i = n; i >= d; --i)
            if (s[i - d]) s[i] = 1;
    return s;
}

bool only_trivial(const std::vector<char>& s) {
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
        if (s[i]) return false;
    return true;
}

bool good_prime(const ZPoly& f, std::uint64_t p) {
    if (modarith::reduce(f.lead(), p) == 0) return false;
    NmodPoly fp = NmodPoly::from(f, p);
    return gcd(fp, fp.derivative()).degree() == 0;
}

struct Recombiner {
    const FactorOptions& opts;
    std::uint64_t trials = 0;

    void charge() {
        if (++trials > opts.recombination_budget)
            throw ResourceLimit("factor recombination exceeded its budget");
    }
};

// Factors a primitive squarefree integer polynomial with positive leading
// coefficient into primitive irreducibles.
std::vector<ZPoly> factor_squarefree(const ZPoly& f_in, const FactorOptions& opts) {
    if (f_in.degree() <= 1) return {f_in};
    ZPoly f = f_in;
    const int n = f.degree();

    // Lift from the prime with the fewest modular factors among the first
    // good primes >= 5; every pattern seen also prunes the admissible degrees.
    std::vector<char> allowed(static_cast<std::size_t>(n) + 1, 1);
    std::uint64_t p = 0;
    std::size_t best = 0;
    std::uint64_t q = 5;
    for (int seen = 0; seen < 10; q = next_prime(q)) {
        if (!good_prime(f, q)) continue;
        ++seen;
        std::vector<int> degs = factor_degree_pattern(NmodPoly::from(f, q).monic());
        if (degs.size() == 1) return {f};
        std::vector<char> s = subset_sums(degs, n);
        for (std::size_t i = 0; i < allowed.size(); ++i) allowed[i] = allowed[i] && s[i];
        if (only_trivial(allowed)) return {f};
        if (p == 0 || degs.size() < best) {
            p = q;
            best = degs.size();
        }
    }
    NmodPoly fp = NmodPoly::from(f, p).monic();
    std::mt19937_64 rng(opts.seed);
    std::vector<NmodPoly> modular;
    for (auto& [g, e] : factor_monic(fp, rng)) modular.push_back(g);

    Integer lc = f.lead();
    Integer bound = lc * norm2_ceil(f);
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
    bound *= 2;
    Integer pz(static_cast<unsigned long>(p)), modulus = pz;
    unsigned k = 1;
    while (modulus <= bound) {
        modulus *= pz;
        ++k;
    }
    std::vector<ZPoly> lifted = hensel_lift_factors(f, modular, k);

    Recombiner rec{opts};
    std::vector<ZPoly> found;
    std::vector<std::size_t> alive(lifted.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
    for (std::size_t s = 1; 2 * s <= alive.size(); ++s) {
        bool restart = true;
        while (restart) {
            restart = false;
            if (2 * s > alive.size()) break;
            std::vector<std::size_t> idx(s);
            for (std::size_t i = 0; i < s; ++i) idx[i] = i;
            while (true) {
                rec.charge();
                int d = 0;
                for (std::size_t i : idx) d += lifted[alive[i]].degree();
                bool try_it = allowed[static_cast<std::size_t>(d)] != 0;
                if (try_it && sgn(f[0]) != 0) {
                    Integer c = f.lead();
                    for (std::size_t i : idx) c = (c * lifted[alive[i]][0]) % modulus;
                    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
                    if (c > modulus / 2) c -= modulus;
                    Integer prod = f.lead() * f[0];
                    if (sgn(c) == 0 || !mpz_divisible_p(prod.get_mpz_t(), c.get_mpz_t())) try_it = false;
                }
                if (try_it) {
                    ZPoly g = ZPoly{f.lead()};
                    for (std::size_t i : idx) g = mul_mod(g, lifted[alive[i]], modulus);
                    g = primitive_part(symmetric_mod(g, modulus));
                    if (auto quo = divide_exact(f, g)) {
                        found.push_back(g);
                        f = *quo;
                        std::vector<std::size_t> rest;
                        for (std::size_t i = 0; i < alive.size(); ++i)
                            if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(alive[i]);
                        alive = std::move(rest);
                        restart = true;
                        break;
                    }
                }
                // next combination
                std::size_t i = s;
                while (i-- > 0) {
                    if (idx[i] != i + alive.size() - s) break;
                }
                if (i == static_cast<std::size_t>(-1)) break;
                ++idx[i];
                for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if (f.degree() > 0) found.push_back(primitive_part(f));
    return found;
}

}  // namespace

std::vector<ZPoly> hensel_lift_factors(const ZPoly& a, const std::vector<NmodPoly>& factors, unsigned k) {
    if (factors.empty()) throw std::invalid_argument("no factors to lift");
    std::uint64_t p = factors.front().modulus();
    if (modarith::reduce(a.lead(), p) == 0) throw std::invalid_argument("leading coefficient not a unit mod p");
    Integer target;
    mpz_ui_pow_ui(target.get_mpz_t(), p, k);
    std::vector<NmodPoly> monic;
    for (const auto& g : factors) monic.push_back(g.monic());
    std::vector<ZPoly> out;
    lift_tree(reduce_mod(a, target), monic, 0, monic.size(), p, target, out);
    return out;
}

FactoredPolynomial<Rational> factor_over_rationals(const QPoly& a, const FactorOptions& opts) {
    if (a.is_zero()) throw InputError("cannot factor the zero polynomial");
    FactoredPolynomial<Rational> out;
    out.unit = a.lead();
    for (auto& [part, mult] : squarefree_decompose(a)) {
        ZPoly z = primitive_form(part).poly;
        for (auto& g : factor_squarefree(z, opts)) out.factors.emplace_back(monic(to_qpoly(g)), mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return canonical_less(x.first, y.first);
        return x.second < y.second;
    });
    return out;
}

IrreducibilityVerdict certify_irreducible(const QPoly& a, const FactorOptions& opts) {
    if (a.degree() < 1) throw InputError("irreducibility of a constant is undefined");
    ZPoly f = primitive_form(a).poly;
    const int n = f.degree();
    if (n == 1) return {true, std::nullopt};
    if (gcd(f, f.derivative()).degree() > 0) return {false, std::nullopt};
    std::vector<char> allowed(static_cast<std::size_t>(n) + 1, 1);
    int patterns = 0;
    for (std::uint64_t p = 2; p <= opts.certify_prime_bound && patterns < 24; p = next_prime(p)) {
        if (!good_prime(f, p)) continue;
        ++patterns;
        std::vector<int> degs = factor_degree_pattern(NmodPoly::from(f, p).monic());
        if (degs.size() == 1) return {true, p};
        std::vector<char> s = subset_sums(degs, n);
        for (std::size_t i = 0; i < allowed.size(); ++i) allowed[i] = allowed[i] && s[i];
        if (only_trivial(allowed)) return {true, p};
    }
    auto fac = factor_over_rationals(a, opts);
    bool irr = fac.factors.size() == 1 && fac.factors[0].second == 1;
    return {irr, std::nullopt};
}

}  // namespace divseq
