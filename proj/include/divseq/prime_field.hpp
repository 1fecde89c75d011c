#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include "divseq/numbers.hpp"

namespace divseq {

// Element of F_p for a runtime prime p < 2^63.
//
// An element constructed from a plain integer is an unbound literal: it has no
// modulus yet and adopts the modulus of the other operand in any binary
// operation. This lets generic code write F(0), F(1), F(3) for every field.
class PrimeFieldElement {
  public:
    PrimeFieldElement() = default;
    PrimeFieldElement(long long literal) : literal_(literal) {}  // NOLINT(implicit)
    PrimeFieldElement(std::uint64_t residue, std::uint64_t modulus)
        : value_(residue % modulus), modulus_(modulus) {}

    static PrimeFieldElement from(const Integer& a, std::uint64_t p) { return {modarith::reduce(a, p), p}; }
    static PrimeFieldElement from(const Rational& a, std::uint64_t p) { return {modarith::reduce(a, p), p}; }

    bool bound() const { return modulus_ != 0; }
    std::uint64_t modulus() const { return modulus_; }
    // Residue in [0, p); only meaningful for bound elements.
    std::uint64_t value() const { return bound() ? value_ : 0; }
    long long literal() const { return literal_; }

    bool is_zero() const { return bound() ? value_ == 0 : literal_ == 0; }

    friend PrimeFieldElement operator+(const PrimeFieldElement& a, const PrimeFieldElement& b) {
        std::uint64_t p = common(a, b);
        if (!p) return PrimeFieldElement(a.literal_ + b.literal_);
        return {modarith::add(a.residue(p), b.residue(p), p), p};
    }
    friend PrimeFieldElement operator-(const PrimeFieldElement& a, const PrimeFieldElement& b) {
        std::uint64_t p = common(a, b);
        if (!p) return PrimeFieldElement(a.literal_ - b.literal_);
        return {modarith::sub(a.residue(p), b.residue(p), p), p};
    }
    friend PrimeFieldElement operator*(const PrimeFieldElement& a, const PrimeFieldElement& b) {
        std::uint64_t p = common(a, b);
        if (!p) return PrimeFieldElement(a.literal_ * b.literal_);
        return {modarith::mul(a.residue(p), b.residue(p), p), p};
    }
    friend PrimeFieldElement operator/(const PrimeFieldElement& a, const PrimeFieldElement& b) {
        std::uint64_t p = common(a, b);
        if (!p) {
            if (b.literal_ == 1 || b.literal_ == -1) return PrimeFieldElement(a.literal_ * b.literal_);
            throw std::domain_error("division of unbound literals");
        }
        return {modarith::mul(a.residue(p), modarith::inv(b.residue(p), p), p), p};
    }
    PrimeFieldElement operator-() const {
        if (!bound()) return PrimeFieldElement(-literal_);
        return {modarith::neg(value_, modulus_), modulus_};
    }
    PrimeFieldElement& operator+=(const PrimeFieldElement& o) { return *this = *this + o; }
    PrimeFieldElement& operator-=(const PrimeFieldElement& o) { return *this = *this - o; }
    PrimeFieldElement& operator*=(const PrimeFieldElement& o) { return *this = *this * o; }
    PrimeFieldElement& operator/=(const PrimeFieldElement& o) { return *this = *this / o; }

    friend bool operator==(const PrimeFieldElement& a, const PrimeFieldElement& b) {
        std::uint64_t p = common(a, b);
        if (!p) return a.literal_ == b.literal_;
        return a.residue(p) == b.residue(p);
    }
    friend bool operator!=(const PrimeFieldElement& a, const PrimeFieldElement& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const PrimeFieldElement& a) {
        return os << (a.bound() ? std::to_string(a.value_) : std::to_string(a.literal_));
    }

  private:
    static std::uint64_t common(const PrimeFieldElement& a, const PrimeFieldElement& b) {
        if (a.modulus_ && b.modulus_ && a.modulus_ != b.modulus_)
            throw std::domain_error("mixing elements of different prime fields");
        return a.modulus_ ? a.modulus_ : b.modulus_;
    }
    std::uint64_t residue(std::uint64_t p) const {
        if (bound()) return value_;
        long long r = literal_ % static_cast<long long>(p);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
    }

    std::uint64_t value_ = 0;
    std::uint64_t modulus_ = 0;
    long long literal_ = 0;
};

using Fp = PrimeFieldElement;

inline bool is_zero(const Fp& a) { return a.is_zero(); }
inline std::string to_string(const Fp& a) {
    return a.bound() ? std::to_string(a.value()) : std::to_string(a.literal());
}

}  // namespace divseq
