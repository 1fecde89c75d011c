#include "divseq/zpoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "divseq/nmod_poly.hpp"

namespace divseq {

Integer content(const ZPoly& a) {
    Integer g = 0;
    for (const auto& c : a.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly primitive_part(const ZPoly& a) {
    if (a.is_zero()) return a;
    Integer g = content(a);
    if (sgn(a.lead()) < 0) g = -g;
    if (g == 1) return a;
    std::vector<Integer> v(a.coeffs());
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return ZPoly(std::move(v));
}

ZPoly to_zpoly_exact(const QPoly& a) {
    std::vector<Integer> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].get_den() != 1) throw std::domain_error("non-integral coefficient");
        v[i] = a[i].get_num();
    }
    return ZPoly(std::move(v));
}

QPoly to_qpoly(const ZPoly& a) {
    std::vector<Rational> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = Rational(a[i]);
    return QPoly(std::move(v));
}

PrimitiveForm primitive_form(const QPoly& a) {
    if (a.is_zero()) return {Rational(0), ZPoly()};
    Integer l = 1;
    for (const auto& c : a.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Integer t = l / a[i].get_den();
        v[i] = a[i].get_num() * t;
    }
    ZPoly z(std::move(v));
    Integer g = content(z);
    if (sgn(z.lead()) < 0) g = -g;
    ZPoly pp = primitive_part(z);
    Rational scale(g, l);
    scale.canonicalize();
    return {scale, pp};
}

namespace detail {
std::optional<ZPoly> divide_large(const ZPoly& a, const ZPoly& b);
constexpr std::size_t kDivideThreshold = 32;
}  // namespace detail

std::optional<ZPoly> divide_exact(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return ZPoly();
    if (a.degree() < b.degree()) return std::nullopt;
    if (b.size() >= detail::kDivideThreshold && a.size() - b.size() + 1 >= detail::kDivideThreshold)
        return detail::divide_large(a, b);
    return divide_schoolbook(a, b);
}

std::optional<ZPoly> divide_schoolbook(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return ZPoly();
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<Integer> r(a.coeffs());
    const std::size_t db = b.size() - 1;
    std::vector<Integer> q(r.size() - db);
    const Integer& lb = b.lead();
    Integer t;
    for (std::size_t i = q.size(); i-- > 0;) {
        if (!mpz_divisible_p(r[i + db].get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        mpz_divexact(t.get_mpz_t(), r[i + db].get_mpz_t(), lb.get_mpz_t());
        q[i] = t;
        if (sgn(t) == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[i + j].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
    }
    for (std::size_t i = 0; i < db; ++i)
        if (sgn(r[i]) != 0) return std::nullopt;
    return ZPoly(std::move(q));
}

bool divides(const ZPoly& b, const ZPoly& a) { return divide_exact(a, b).has_value(); }

namespace {

// Primes just below 2^31, used for the multi-modular gcd.
std::uint64_t gcd_prime(std::size_t index) {
    thread_local std::vector<std::uint64_t> local;
    std::uint64_t c = local.empty() ? (1ULL << 31) : local.back();
    while (local.size() <= index) {
        do {
            --c;
        } while (!is_prime(c));
        local.push_back(c);
    }
    return local[index];
}

ZPoly crt_symmetric(const std::vector<Integer>& coeffs, const Integer& modulus) {
    Integer half = modulus / 2;
    std::vector<Integer> v(coeffs);
    for (auto& c : v)
        if (c > half) c -= modulus;
    return ZPoly(std::move(v));
}

}  // namespace

GcdCofactors<ZPoly> gcd_cofactors(const ZPoly& a_in, const ZPoly& b_in) {
    if (a_in.is_zero() || b_in.is_zero()) throw std::domain_error("gcd cofactors of the zero polynomial");
    const Integer ca = content(a_in), cb = content(b_in);
    // Cofactors of the primitive parts, then the contents and signs are put back.
    auto finish = [&](ZPoly g, ZPoly qa, ZPoly qb, bool swapped) {
        if (swapped) std::swap(qa, qb);
        qa *= ca;
        qb *= cb;
        if (sgn(a_in.lead()) < 0) qa = -qa;
        if (sgn(b_in.lead()) < 0) qb = -qb;
        return GcdCofactors<ZPoly>{std::move(g), std::move(qa), std::move(qb)};
    };
    ZPoly a = primitive_part(a_in), b = primitive_part(b_in);
    bool swapped = false;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        swapped = true;
    }
    if (b.degree() == 0) return finish(ZPoly{Integer(1)}, a, b, swapped);
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.lead().get_mpz_t(), b.lead().get_mpz_t());

    int best_degree = b.degree() + 1;
    std::vector<Integer> acc;
    Integer modulus = 1;
    ZPoly last_candidate;
    bool have_last = false;
    bool tried_b = false;
    for (std::size_t idx = 0;; ++idx) {
        std::uint64_t p = gcd_prime(idx);
        if (modarith::reduce(a.lead(), p) == 0 || modarith::reduce(b.lead(), p) == 0) continue;
        NmodPoly gp = gcd(NmodPoly::from(a, p), NmodPoly::from(b, p));
        if (gp.degree() == 0) return finish(ZPoly{Integer(1)}, a, b, swapped);
        if (gp.degree() == b.degree() && !tried_b) {
            tried_b = true;
            if (auto q = divide_exact(a, b)) return finish(b, std::move(*q), ZPoly{Integer(1)}, swapped);
        }
        if (gp.degree() > best_degree) continue;  // unlucky prime
        gp = gp.scaled(modarith::reduce(g, p));
        Integer pz(static_cast<unsigned long>(p));
        if (gp.degree() < best_degree) {
            best_degree = gp.degree();
            acc.assign(static_cast<std::size_t>(best_degree) + 1, Integer(0));
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = Integer(static_cast<unsigned long>(gp[i]));
            modulus = pz;
            have_last = false;
        } else {
            // CRT: x = acc mod modulus, x = gp mod p
            std::uint64_t minv = modarith::inv(modarith::reduce(modulus, p), p);
            for (std::size_t i = 0; i < acc.size(); ++i) {
                std::uint64_t ai = modarith::reduce(acc[i], p);
                std::uint64_t delta = modarith::mul(modarith::sub(gp[i], ai, p), minv, p);
                acc[i] += modulus * Integer(static_cast<unsigned long>(delta));
            }
            modulus *= pz;
        }
        ZPoly cand = crt_symmetric(acc, modulus);
        if (have_last && cand == last_candidate) {
            ZPoly pp = primitive_part(cand);
            if (auto qb = divide_exact(b, pp))
                if (auto qa = divide_exact(a, pp)) return finish(std::move(pp), std::move(*qa), std::move(*qb), swapped);
        }
        last_candidate = std::move(cand);
        have_last = true;
    }
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    return gcd_cofactors(a, b).g;
}

GcdCofactors<QPoly> gcd_cofactors(const QPoly& a, const QPoly& b) {
    PrimitiveForm fa = primitive_form(a), fb = primitive_form(b);
    GcdCofactors<ZPoly> z = gcd_cofactors(fa.poly, fb.poly);
    const Rational lg(z.g.lead());
    return {to_qpoly(z.g) * Rational(1 / lg), to_qpoly(z.a_over_g) * Rational(fa.scale * lg),
            to_qpoly(z.b_over_g) * Rational(fb.scale * lg)};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
    if (a.is_zero() && b.is_zero()) return QPoly();
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    ZPoly g = gcd(primitive_form(a).poly, primitive_form(b).poly);
    return monic(to_qpoly(g));
}

QPoly exact_quotient(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return a;
    PrimitiveForm fa = primitive_form(a), fb = primitive_form(b);
    auto q = divide_exact(fa.poly, fb.poly);
    if (!q) throw std::domain_error("inexact polynomial division");
    return to_qpoly(*q) * Rational(fa.scale / fb.scale);
}

std::vector<std::pair<QPoly, int>> squarefree_decompose(const QPoly& a) {
    std::vector<std::pair<QPoly, int>> out;
    if (a.degree() <= 0) return out;
    QPoly f = monic(a);
    QPoly fd = f.derivative();
    QPoly a0 = gcd(f, fd);
    QPoly b = exact_quotient(f, a0);
    QPoly c = exact_quotient(fd, a0);
    QPoly d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        QPoly ai = gcd(b, d);
        QPoly bn = exact_quotient(b, ai);
        QPoly cn = exact_quotient(d, ai);
        if (ai.degree() > 0) out.emplace_back(monic(ai), i);
        b = std::move(bn);
        d = cn - b.derivative();
    }
    return out;
}

std::vector<std::pair<ZPoly, int>> squarefree_decompose(const ZPoly& a) {
    std::vector<std::pair<ZPoly, int>> out;
    for (auto& [q, m] : squarefree_decompose(to_qpoly(a))) out.emplace_back(primitive_form(q).poly, m);
    return out;
}

Integer norm2_ceil(const ZPoly& a) {
    Integer s = 0;
    for (const auto& c : a.coeffs()) s += c * c;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    if (r * r < s) r += 1;
    return r;
}

Integer max_norm(const ZPoly& a) {
    Integer m = 0;
    for (const auto& c : a.coeffs()) {
        Integer t = abs(c);
        if (t > m) m = t;
    }
    return m;
}

std::size_t max_bits(const ZPoly& a) {
    std::size_t b = 0;
    for (const auto& c : a.coeffs())
        if (sgn(c) != 0) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
    return b;
}

Integer resultant(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    if (a.degree() == 0 && b.degree() == 0) return 1;
    // Hadamard bound on the Sylvester determinant.
    Integer na = norm2_ceil(a), nb = norm2_ceil(b);
    std::size_t bits = static_cast<std::size_t>(b.degree()) * mpz_sizeinbase(na.get_mpz_t(), 2) +
                       static_cast<std::size_t>(a.degree()) * mpz_sizeinbase(nb.get_mpz_t(), 2) + 2;
    Integer modulus = 1, acc = 0;
    for (std::size_t idx = 0; mpz_sizeinbase(modulus.get_mpz_t(), 2) <= bits; ++idx) {
        std::uint64_t p = gcd_prime(idx);
        if (modarith::reduce(a.lead(), p) == 0 || modarith::reduce(b.lead(), p) == 0) continue;
        std::uint64_t r = resultant(NmodPoly::from(a, p), NmodPoly::from(b, p));
        std::uint64_t minv = modarith::inv(modarith::reduce(modulus, p), p);
        std::uint64_t delta = modarith::mul(modarith::sub(r, modarith::reduce(acc, p), p), minv, p);
        acc += modulus * Integer(static_cast<unsigned long>(delta));
        modulus *= Integer(static_cast<unsigned long>(p));
    }
    if (acc > modulus / 2) acc -= modulus;
    return acc;
}

Rational resultant(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return Rational(0);
    PrimitiveForm fa = primitive_form(a), fb = primitive_form(b);
    Rational r(resultant(fa.poly, fb.poly));
    for (int i = 0; i < b.degree(); ++i) r *= fa.scale;
    for (int i = 0; i < a.degree(); ++i) r *= fb.scale;
    return r;
}

namespace detail {

namespace {

// Writes |c| into `slot` limbs starting at `out`.
void put_limbs(const Integer& c, mp_limb_t* out, std::size_t slot) {
    std::size_t n = mpz_size(c.get_mpz_t());
    const mp_limb_t* src = mpz_limbs_read(c.get_mpz_t());
    for (std::size_t i = 0; i < n && i < slot; ++i) out[i] = src[i];
}

Integer from_limbs(const std::vector<mp_limb_t>& limbs) {
    Integer r;
    std::size_t n = limbs.size();
    while (n > 0 && limbs[n - 1] == 0) --n;
    if (n == 0) return r;
    mp_limb_t* dst = mpz_limbs_write(r.get_mpz_t(), static_cast<mp_size_t>(n));
    std::copy(limbs.begin(), limbs.begin() + static_cast<std::ptrdiff_t>(n), dst);
    mpz_limbs_finish(r.get_mpz_t(), static_cast<mp_size_t>(n));
    return r;
}

Integer pack(const ZPoly& a, std::size_t slot) {
    std::vector<mp_limb_t> pos(a.size() * slot, 0), neg(a.size() * slot, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        int s = sgn(a[i]);
        if (s > 0) put_limbs(a[i], pos.data() + i * slot, slot);
        if (s < 0) put_limbs(a[i], neg.data() + i * slot, slot);
    }
    return from_limbs(pos) - from_limbs(neg);
}

// Inverse of pack: the `count` signed digits of c in base 2^(64 slot).
ZPoly unpack(const Integer& c, std::size_t slot, std::size_t count) {
    const int sign = sgn(c);
    std::vector<Integer> out(count);
    if (sign == 0) return ZPoly(std::move(out));
    const std::size_t climbs = mpz_size(c.get_mpz_t());
    const mp_limb_t* src = mpz_limbs_read(c.get_mpz_t());
    Integer half, full;
    mpz_setbit(full.get_mpz_t(), slot * GMP_NUMB_BITS);
    mpz_setbit(half.get_mpz_t(), slot * GMP_NUMB_BITS - 1);
    std::vector<mp_limb_t> buf(slot);
    bool carry = false;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < slot; ++j) {
            std::size_t k = i * slot + j;
            buf[j] = k < climbs ? src[k] : 0;
        }
        Integer d = from_limbs(buf);
        if (carry) d += 1;
        carry = d >= half;
        if (carry) d -= full;
        out[i] = sign > 0 ? d : Integer(-d);
    }
    return ZPoly(std::move(out));
}

}  // namespace

ZPoly multiply_large(const ZPoly& a, const ZPoly& b) {
    std::size_t bits = max_bits(a) + max_bits(b) + 2;
    std::size_t m = std::min(a.size(), b.size());
    while (m) {
        ++bits;
        m >>= 1;
    }
    const std::size_t slot = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
    Integer c = pack(a, slot) * pack(b, slot);
    return unpack(c, slot, a.size() + b.size() - 1);
}

QPoly multiply_large(const QPoly& a, const QPoly& b) {
    PrimitiveForm fa = primitive_form(a), fb = primitive_form(b);
    ZPoly z = multiply_large(fa.poly, fb.poly);
    Rational scale = fa.scale * fb.scale;
    std::vector<Rational> v(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        v[i] = Rational(z[i]) * scale;
    }
    return QPoly(std::move(v));
}

std::optional<ZPoly> divide_large(const ZPoly& a, const ZPoly& b) {
    // One modular remainder settles most non-divisible inputs cheaply.
    for (std::uint64_t p : {2147483629ULL, 2147483587ULL}) {
        if (modarith::reduce(b.lead(), p) == 0) continue;
        if (!rem(NmodPoly::from(a, p), NmodPoly::from(b, p)).is_zero()) return std::nullopt;
        break;
    }
    const std::size_t qsize = a.size() - b.size() + 1;
    const Integer& lb = b.lead();
    if (!mpz_divisible_p(a.lead().get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    // A quotient's coefficients are below 2^(deg q) |a|_2 (Mignotte).
    std::size_t limit = max_bits(a) + qsize + 64;
    for (std::size_t bits = std::max(max_bits(a), max_bits(b)) + 64;; bits *= 2) {
        if (bits > limit) bits = limit;
        const std::size_t slot = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
        Integer A = pack(a, slot), B = pack(b, slot), Q, R;
        mpz_tdiv_qr(Q.get_mpz_t(), R.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
        if (sgn(R) != 0) return std::nullopt;
        ZPoly q = unpack(Q, slot, qsize);
        if (multiply_large(q, b) == a) return q;
        if (bits == limit) return std::nullopt;
    }
}

}  // namespace detail

std::optional<QPoly> sqrt_exact(const QPoly& a) {
    if (a.is_zero()) return QPoly();
    if (a.degree() % 2 != 0) return std::nullopt;
    const Rational& lc = a.lead();
    if (sgn(lc) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(lc.get_num_mpz_t()) || !mpz_perfect_square_p(lc.get_den_mpz_t())) return std::nullopt;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), lc.get_num_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), lc.get_den_mpz_t());
    const int k = a.degree() / 2;
    std::vector<Rational> s(static_cast<std::size_t>(k) + 1, Rational(0));
    s[k] = Rational(sn, sd);
    // match coefficients of x^(k+i) for i = k-1 .. 0
    for (int i = k - 1; i >= 0; --i) {
        Rational sum = 0;
        for (int j = i + 1; j < k; ++j) {
            int other = k + i - j;
            if (other >= 0 && other <= k && other > i) sum += s[j] * s[other];
        }
        // coefficient of x^(k+i) = 2 s_k s_i + sum_{j+l=k+i, i<j,l<k} s_j s_l
        s[i] = (a.coeff(static_cast<std::size_t>(k + i)) - sum) / (2 * s[k]);
    }
    QPoly r(s);
    if (r * r != a) return std::nullopt;
    return r;
}

}  // namespace divseq
