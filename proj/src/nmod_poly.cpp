#include "divseq/nmod_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace divseq {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

NmodPoly NmodPoly::from(const ZPoly& a, u64 p) {
    std::vector<u64> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = modarith::reduce(a[i], p);
    return NmodPoly(p, std::move(v));
}

NmodPoly NmodPoly::from(const QPoly& a, u64 p) {
    std::vector<u64> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = modarith::reduce(a[i], p);
    return NmodPoly(p, std::move(v));
}

NmodPoly NmodPoly::from(const FpPoly& a) {
    u64 p = 0;
    for (const auto& c : a.coeffs())
        if (c.bound()) p = c.modulus();
    if (p == 0) throw std::domain_error("polynomial over F_p without a bound modulus");
    std::vector<u64> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = (a[i] + Fp(0ULL, p)).value();
    return NmodPoly(p, std::move(v));
}

FpPoly NmodPoly::to_fp_poly() const {
    std::vector<Fp> v;
    v.reserve(c_.size());
    for (u64 x : c_) v.emplace_back(x, p_);
    return FpPoly(std::move(v));
}

ZPoly NmodPoly::to_zpoly_symmetric() const {
    std::vector<Integer> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] > p_ / 2)
            v[i] = -Integer(static_cast<unsigned long>(p_ - c_[i]));
        else
            v[i] = Integer(static_cast<unsigned long>(c_[i]));
    }
    return ZPoly(std::move(v));
}

NmodPoly operator+(const NmodPoly& a, const NmodPoly& b) {
    std::vector<u64> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = modarith::add(a[i], b[i], a.p_);
    return NmodPoly(a.p_, std::move(v));
}

NmodPoly operator-(const NmodPoly& a, const NmodPoly& b) {
    std::vector<u64> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = modarith::sub(a[i], b[i], a.p_);
    return NmodPoly(a.p_, std::move(v));
}

NmodPoly operator*(const NmodPoly& a, const NmodPoly& b) {
    if (a.is_zero() || b.is_zero()) return NmodPoly(a.p_);
    const u64 p = a.p_;
    const std::size_t n = a.c_.size(), m = b.c_.size();
    std::vector<u64> out(n + m - 1);
    const bool small = p < (1ULL << 32);
    for (std::size_t k = 0; k < n + m - 1; ++k) {
        std::size_t lo = k >= m ? k - m + 1 : 0;
        std::size_t hi = std::min(k, n - 1);
        u128 acc = 0;
        if (small) {
            for (std::size_t i = lo; i <= hi; ++i) acc += static_cast<u128>(a.c_[i]) * b.c_[k - i];
            out[k] = static_cast<u64>(acc % p);
        } else {
            for (std::size_t i = lo; i <= hi; ++i) {
                acc += static_cast<u128>(a.c_[i]) * b.c_[k - i];
                acc %= p;
            }
            out[k] = static_cast<u64>(acc);
        }
    }
    return NmodPoly(p, std::move(out));
}

NmodPoly NmodPoly::scaled(u64 s) const {
    std::vector<u64> v(c_);
    for (auto& x : v) x = modarith::mul(x, s, p_);
    return NmodPoly(p_, std::move(v));
}

NmodPoly NmodPoly::derivative() const {
    if (c_.size() <= 1) return NmodPoly(p_);
    std::vector<u64> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = modarith::mul(c_[i], i % p_, p_);
    return NmodPoly(p_, std::move(v));
}

NmodPoly NmodPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(modarith::inv(lead(), p_));
}

u64 NmodPoly::evaluate(u64 x) const {
    u64 acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = modarith::add(modarith::mul(acc, x, p_), c_[i], p_);
    return acc;
}

std::pair<NmodPoly, NmodPoly> divrem(const NmodPoly& a, const NmodPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial mod p");
    const u64 p = a.modulus();
    if (a.degree() < b.degree()) return {NmodPoly(p), a};
    std::vector<u64> r = a.coeffs();
    const std::vector<u64>& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<u64> q(r.size() - db, 0);
    const u64 inv = modarith::inv(b.lead(), p);
    const bool small = p < (u64{1} << 32);
    const modarith::SmallReducer red(small ? p : 3);
    for (std::size_t i = q.size(); i-- > 0;) {
        u64 t = modarith::mul(r[i + db], inv, p);
        q[i] = t;
        if (t == 0) continue;
        u64 nt = p - t;
        if (small) {
            for (std::size_t j = 0; j < db; ++j) r[i + j] = red(r[i + j] + nt * bc[j]);
        } else {
            for (std::size_t j = 0; j < db; ++j)
                r[i + j] = static_cast<u64>((r[i + j] + static_cast<u128>(nt) * bc[j]) % p);
        }
        r[i + db] = 0;
    }
    r.resize(db);
    return {NmodPoly(p, std::move(q)), NmodPoly(p, std::move(r))};
}

NmodPoly rem(const NmodPoly& a, const NmodPoly& b) {
    if (a.degree() < b.degree()) return a;
    return divrem(a, b).second;
}

NmodPoly quo(const NmodPoly& a, const NmodPoly& b) { return divrem(a, b).first; }

NmodPoly gcd(NmodPoly a, NmodPoly b) {
    while (!b.is_zero()) {
        NmodPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

NmodXgcd xgcd(const NmodPoly& a, const NmodPoly& b) {
    const u64 p = a.modulus();
    NmodPoly r0 = a, r1 = b;
    NmodPoly s0 = NmodPoly::one(p), s1(p);
    NmodPoly t0(p), t1 = NmodPoly::one(p);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        NmodPoly s2 = s0 - q * s1;
        NmodPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    u64 inv = modarith::inv(r0.lead(), p);
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

u64 resultant(const NmodPoly& a_in, const NmodPoly& b_in) {
    const u64 p = a_in.modulus();
    if (a_in.is_zero() || b_in.is_zero()) return 0;
    NmodPoly a = a_in, b = b_in;
    u64 acc = 1;
    for (;;) {
        int m = a.degree(), n = b.degree();
        if (n == 0) return modarith::mul(acc, modarith::pow(b.lead(), static_cast<u64>(m), p), p);
        if (m == 0) return modarith::mul(acc, modarith::pow(a.lead(), static_cast<u64>(n), p), p);
        NmodPoly r = rem(a, b);
        if (r.is_zero()) return 0;
        if ((m * n) % 2 == 1) acc = modarith::neg(acc, p);
        acc = modarith::mul(acc, modarith::pow(b.lead(), static_cast<u64>(m - r.degree()), p), p);
        a = std::move(b);
        b = std::move(r);
    }
}

NmodPoly mulmod(const NmodPoly& a, const NmodPoly& b, const NmodPoly& m) { return rem(a * b, m); }

NmodPoly powmod(const NmodPoly& base, const Integer& exp, const NmodPoly& m) {
    NmodPoly result = rem(NmodPoly::one(base.modulus()), m);
    NmodPoly b = rem(base, m);
    const std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    if (sgn(exp) == 0) return result;
    for (std::size_t i = bits; i-- > 0;) {
        result = mulmod(result, result, m);
        if (mpz_tstbit(exp.get_mpz_t(), i)) result = mulmod(result, b, m);
    }
    return result;
}

FrobeniusMap::FrobeniusMap(const NmodPoly& f) : f_(f) {
    const u64 p = f.modulus();
    const int n = f.degree();
    NmodPoly xp = powmod(NmodPoly::x(p), Integer(static_cast<unsigned long>(p)), f);
    rows_.reserve(static_cast<std::size_t>(std::max(n, 1)));
    rows_.push_back(rem(NmodPoly::one(p), f));
    for (int i = 1; i < n; ++i) rows_.push_back(mulmod(rows_.back(), xp, f));
}

NmodPoly FrobeniusMap::apply(const NmodPoly& h_in) const {
    const u64 p = f_.modulus();
    NmodPoly h = rem(h_in, f_);
    const std::size_t n = static_cast<std::size_t>(std::max(f_.degree(), 0));
    std::vector<u128> acc(n, 0);
    std::vector<u64> out(n, 0);
    const bool small = p < (1ULL << 32);
    for (std::size_t i = 0; i < h.coeffs().size(); ++i) {
        u64 hi = h.coeffs()[i];
        if (hi == 0) continue;
        const auto& row = rows_[i].coeffs();
        for (std::size_t j = 0; j < row.size(); ++j) {
            acc[j] += static_cast<u128>(hi) * row[j];
            if (!small) acc[j] %= p;
        }
    }
    for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<u64>(acc[j] % p);
    return NmodPoly(p, std::move(out));
}

namespace {

NmodPoly pth_root(const NmodPoly& f) {
    const u64 p = f.modulus();
    std::vector<u64> v;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) v.push_back(f.coeffs()[i]);
    return NmodPoly(p, std::move(v));
}

void squarefree_rec(const NmodPoly& f, int mult, std::vector<std::pair<NmodPoly, int>>& out) {
    const u64 p = f.modulus();
    if (f.degree() <= 0) return;
    NmodPoly fd = f.derivative();
    if (fd.is_zero()) {
        squarefree_rec(pth_root(f), mult * static_cast<int>(p), out);
        return;
    }
    NmodPoly c = gcd(f, fd);
    NmodPoly w = quo(f, c);
    int i = 1;
    while (w.degree() > 0) {
        NmodPoly y = gcd(w, c);
        NmodPoly z = quo(w, y);
        if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
        ++i;
        w = y;
        c = quo(c, y);
    }
    if (c.degree() > 0) squarefree_rec(pth_root(c), mult * static_cast<int>(p), out);
}

bool poly_less(const NmodPoly& a, const NmodPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.coeffs().size(); i-- > 0;)
        if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
    return false;
}

}  // namespace

std::vector<std::pair<NmodPoly, int>> squarefree_decompose(const NmodPoly& f) {
    std::vector<std::pair<NmodPoly, int>> out;
    squarefree_rec(f.monic(), 1, out);
    // merge equal multiplicities produced by different recursion levels
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<NmodPoly, int>> merged;
    for (auto& e : out) {
        if (!merged.empty() && merged.back().second == e.second)
            merged.back().first = merged.back().first * e.first;
        else
            merged.push_back(e);
    }
    return merged;
}

std::vector<std::pair<NmodPoly, int>> distinct_degree_factor(const NmodPoly& f_in) {
    std::vector<std::pair<NmodPoly, int>> out;
    NmodPoly f = f_in.monic();
    const u64 p = f.modulus();
    if (f.degree() <= 0) return out;
    if (f.degree() == 1) {
        out.emplace_back(f, 1);
        return out;
    }
    FrobeniusMap frob(f);
    NmodPoly g = f;
    NmodPoly h = NmodPoly::x(p);
    const NmodPoly x = NmodPoly::x(p);
    for (int d = 1; 2 * d <= g.degree(); ++d) {
        h = frob.apply(h);
        NmodPoly G = gcd(g, rem(h, g) - x);
        if (G.degree() > 0) {
            out.emplace_back(G, d);
            g = quo(g, G);
        }
    }
    if (g.degree() > 0) out.emplace_back(g.monic(), g.degree());
    return out;
}

std::vector<NmodPoly> equal_degree_factor(const NmodPoly& f_in, int d, std::mt19937_64& rng) {
    NmodPoly f = f_in.monic();
    const u64 p = f.modulus();
    if (f.degree() == d) return {f};
    if (f.degree() % d != 0) throw std::logic_error("equal-degree input has inconsistent degree");
    std::uniform_int_distribution<u64> coef(0, p - 1);
    FrobeniusMap frob(f);
    auto frob_mod = [&](const NmodPoly& h, const NmodPoly& m) { return rem(frob.apply(rem(h, f)), m); };
    std::vector<NmodPoly> pending{f}, done;
    while (!pending.empty()) {
        NmodPoly g = pending.back();
        pending.pop_back();
        if (g.degree() == d) {
            done.push_back(g);
            continue;
        }
        for (;;) {
            std::vector<u64> rc(static_cast<std::size_t>(g.degree()));
            for (auto& c : rc) c = coef(rng);
            NmodPoly a(p, rc);
            if (a.degree() < 1) continue;
            NmodPoly b(p);
            if (p == 2) {
                // trace a + a^2 + ... + a^(2^(d-1))
                NmodPoly t = a;
                b = a;
                for (int i = 1; i < d; ++i) {
                    t = mulmod(t, t, g);
                    b = b + t;
                }
            } else {
                // norm-like exponent: a^(1 + p + ... + p^(d-1)), then ^((p-1)/2)
                NmodPoly acc = rem(a, g), t = rem(a, g);
                for (int i = 1; i < d; ++i) {
                    t = frob_mod(t, g);
                    acc = mulmod(acc, t, g);
                }
                b = powmod(acc, Integer(static_cast<unsigned long>((p - 1) / 2)), g) - NmodPoly::one(p);
            }
            NmodPoly s = gcd(g, b);
            if (s.degree() > 0 && s.degree() < g.degree()) {
                pending.push_back(s);
                pending.push_back(quo(g, s).monic());
                break;
            }
        }
    }
    std::sort(done.begin(), done.end(), poly_less);
    return done;
}

std::vector<int> factor_degree_pattern(const NmodPoly& f) {
    std::vector<int> out;
    for (const auto& [g, d] : distinct_degree_factor(f))
        for (int k = 0; k < g.degree() / d; ++k) out.push_back(d);
    return out;
}

std::vector<std::pair<NmodPoly, int>> factor_monic(const NmodPoly& f, std::mt19937_64& rng) {
    std::vector<std::pair<NmodPoly, int>> out;
    for (const auto& [part, mult] : squarefree_decompose(f)) {
        for (const auto& [g, d] : distinct_degree_factor(part))
            for (auto& h : equal_degree_factor(g, d, rng)) out.emplace_back(std::move(h), mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return poly_less(a.first, b.first);
        return a.second < b.second;
    });
    return out;
}

bool is_irreducible(const NmodPoly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    NmodPoly m = f.monic();
    if (gcd(m, m.derivative()).degree() > 0) return false;
    auto ddf = distinct_degree_factor(m);
    return ddf.size() == 1 && ddf[0].second == m.degree();
}

}  // namespace divseq
