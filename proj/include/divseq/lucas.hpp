#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divseq/factor.hpp"
#include "divseq/polynomial.hpp"

namespace divseq {

// L_n = (f^n - g^n)/(f - g) with s = f + g and q = fg in Q[T].
struct LucasSpec {
    enum class Case { direct, quadratic };
    Case kind = Case::quadratic;
    QPoly s, q;
    QPoly f, g;  // direct case only

    // Throws InputError when f == g.
    static LucasSpec direct(QPoly f, QPoly g);
    // Throws InputError when s^2 - 4q = 0; a perfect-square discriminant
    // yields the direct case.
    static LucasSpec quadratic(QPoly s, QPoly q);

    QPoly discriminant() const { return s * s - Rational(4) * q; }
    int case_number() const { return kind == Case::direct ? 1 : 2; }
};

QPoly lucas_term(const LucasSpec& spec, int n);

struct AmenabilityCondition {
    std::string label;
    bool holds = false;
    std::string detail;
};
struct AmenabilityReport {
    int case_number = 1;
    std::array<AmenabilityCondition, 3> conditions;
    bool verdict = false;
};
AmenabilityReport amenability_check(const LucasSpec& spec, const FactorOptions& opts = {});

// Memoized terms, cyclotomic parts and factorizations.
class LucasSequence {
  public:
    explicit LucasSequence(LucasSpec spec, FactorOptions opts = {}) : spec_(std::move(spec)), opts_(opts) {}

    const LucasSpec& spec() const { return spec_; }
    const QPoly& term(int n);
    // C_n with L_n = prod_{d | n, d > 1} C_d.
    const QPoly& cyclotomic(int n);
    const FactoredPolynomial<Rational>& factored(int n);
    // Monic irreducible factors of L_n dividing no L_{n/p}.
    std::vector<QPoly> primitive_factors(int n);

  private:
    LucasSpec spec_;
    FactorOptions opts_;
    std::vector<QPoly> terms_;
    std::map<int, QPoly> cyclotomic_;
    std::map<int, FactoredPolynomial<Rational>> factored_;
};

QPoly cyclotomic_part(const LucasSpec& spec, int n);
std::vector<QPoly> lucas_primitive_factors(const LucasSpec& spec, int n, const FactorOptions& opts = {});

struct SurveyRow {
    std::uint64_t q = 0;
    std::optional<bool> in_M;  // empty when the M-column is unsupported (case 2)
    bool good_reduction = false;
    bool L_q_irreducible = false;
    std::optional<std::uint64_t> witness;
};
struct LucasSurvey {
    std::vector<SurveyRow> rows;
    bool m_supported = true;
    std::size_t m_count = 0, s_count = 0;
    double m_density = 0, s_density = 0;
    std::vector<std::uint64_t> exceptions;  // in M, L_q reducible
    std::vector<std::uint64_t> reducible;   // every prime with L_q reducible
};
// Rows are evaluated on worker threads and returned sorted by q.
LucasSurvey lucas_survey(const LucasSpec& spec, std::uint64_t q_max, const FactorOptions& opts = {},
                         unsigned threads = 0);
// No denominator of the data and no leading coefficient of f - g (or of
// s^2 - 4q) vanishes mod q.
bool good_reduction(const LucasSpec& spec, std::uint64_t q);
// The M-column alone: f - g irreducible mod q with good reduction at q.
std::optional<bool> in_M(const LucasSpec& spec, std::uint64_t q);

}  // namespace divseq
