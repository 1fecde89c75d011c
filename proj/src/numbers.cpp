#include "divseq/numbers.hpp"

#include <cctype>
#include <stdexcept>

#include "divseq/errors.hpp"

namespace divseq {

Rational parse_rational(const std::string& text) {
    auto valid_int = [](const std::string& s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) throw InputError("malformed rational: " + text);
    if (num[0] == '+') num.erase(0, 1);
    Integer d(den);
    if (d == 0) throw InputError("zero denominator: " + text);
    Rational r(Integer(num), d);
    r.canonicalize();
    return r;
}

namespace modarith {

u64 pow(u64 base, u64 exp, u64 p) {
    u64 result = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) result = mul(result, base, p);
        base = mul(base, base, p);
        exp >>= 1;
    }
    return result;
}

u64 inv(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw std::domain_error("inverse of zero modulo p");
    // extended Euclid on signed 128-bit to avoid overflow for p < 2^63
    __int128 t = 0, new_t = 1;
    __int128 r = p, new_r = a;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::domain_error("element not invertible modulo p");
    if (t < 0) t += p;
    return static_cast<u64>(t);
}

u64 reduce(const Integer& a, u64 p) {
    static_assert(sizeof(unsigned long) == 8, "mpz_fdiv_ui needs 64-bit unsigned long");
    return mpz_fdiv_ui(a.get_mpz_t(), p);
}

u64 reduce(const Rational& a, u64 p) {
    u64 num = reduce(a.get_num(), p);
    u64 den = reduce(a.get_den(), p);
    return mul(num, inv(den, p), p);
}

}  // namespace modarith

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = modarith::pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = modarith::mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t n) {
    std::uint64_t c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

int legendre(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    return modarith::pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace divseq
