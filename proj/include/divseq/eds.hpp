#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divseq/elliptic.hpp"
#include "divseq/factor.hpp"
#include "divseq/function_field.hpp"

namespace divseq {

// The pair (E, P): E over Q(u) (constant coefficients in the split case) and
// P = (x, y) with coordinates in K(C); x must lie in Q(u).
struct EdsContext {
    ModelPtr base = CurveModel::projective_line();
    WeierstrassCurve<QFunction> curve;
    FFElement x, y;
};

bool has_constant_coefficients(const WeierstrassCurve<QFunction>& E);
WeierstrassCurve<Rational> constant_curve(const WeierstrassCurve<QFunction>& E);
WeierstrassCurve<QFunction> lift_curve(const WeierstrassCurve<Rational>& E);
WeierstrassCurve<FFElement> curve_over(const WeierstrassCurve<QFunction>& E, const ModelPtr& model);

// Throws UnsupportedInput when x has a v-part, InputError when P is not on E
// or is torsion of order <= 24.
void validate(const EdsContext& ctx);

struct DivisorComponent {
    Place place;
    int order = 0;
    int degree = 0;  // order times the degree of the places above place
};

struct DivisorOverU {
    std::vector<DivisorComponent> components;  // sorted by place, orders >= 1
    int degree = 0;

    int order_at(const Place& p) const;
    bool contains(const Place& p) const { return order_at(p) > 0; }
};

// D_{nP} identified with a function constant * v^v_power * prod r_i on C.
struct EdsRendering {
    Rational constant = 1;
    int v_power = 0;
    bool symbolic_root = false;
    QPoly root_argument;                      // t_n, set when symbolic_root
    FactoredPolynomial<Rational> u_factors;   // r_n
    std::vector<Place> flagged;               // non-minimal places left out of r_n
    QPoly denominator;                        // monic lowest-terms denominator of x([n]P)
};

class EdsEngine {
  public:
    explicit EdsEngine(EdsContext ctx, FactorOptions opts = {});

    const EdsContext& context() const { return ctx_; }
    const CurveModel& model() const { return *ctx_.base; }
    // Constant coefficients: every place is minimal and x([n]P) has a
    // closed form through homogenized division polynomials.
    bool split() const { return split_.has_value(); }

    // x([n]P) in lowest terms; throws TorsionHit.
    QFunction x_multiple(int n);
    const DivisorOverU& divisor(int n);
    EdsRendering render(int n);
    // Divisor degree of the place set above pl (order one).
    int place_degree(const Place& pl) const { return pl.divisor_degree(ctx_.base->cover_degree()); }
    // Fiber type, factoring the residue quadratic when needed.
    Place resolve(Place pl) const;

  private:
    struct SplitData {
        WeierstrassCurve<Rational> E;
        DivisionPolynomials<Rational> dp;
        QPoly N, D, G;
        std::map<int, QPoly> homog;  // P_k(N, D)
        std::map<int, QPoly> primitive;  // q_d: x-coordinates of points of exact order d
        std::map<int, std::vector<std::pair<QPoly, int>>> primitive_factors;

        explicit SplitData(WeierstrassCurve<Rational> e) : E(e), dp(std::move(e)) {}
    };
    struct Term {
        QFunction x;
        std::vector<std::pair<QPoly, int>> den_factors;  // monic irreducibles of den(x)
        int ord_inf = 0;
        bool factored = false;
    };

    const Term& term(int n);
    const Term& factored_term(int n);
    Term split_term(int n);
    Term generic_term(int n);
    const QPoly& homogenized(int k);
    const QPoly& primitive_part(int d);
    const std::vector<std::pair<QPoly, int>>& primitive_factors(int d);
    std::vector<std::pair<QPoly, int>> factor_with_cache(const QPoly& a);
    const MinimalModel& minimal(const Place& pl);
    bool is_bad(const QPoly& p) const;
    void check_torsion(int n);

    EdsContext ctx_;
    FactorOptions opts_;
    std::optional<SplitData> split_;
    std::optional<DivisionValues<QFunction>> values_;
    std::map<int, Term> terms_;
    std::map<int, DivisorOverU> divisors_;
    std::vector<QPoly> known_;      // irreducibles met so far
    std::vector<QPoly> bad_;        // places needing a minimality check
    std::map<std::string, MinimalModel> minimal_;
};

struct RigidRow {
    Place place;
    int rank = 0;         // rank of apparition
    int base_order = 0;   // order at the rank
    std::vector<int> orders;  // orders at n = 1..N
    int violations = 0;
};
struct RigidReport {
    int N = 0;
    std::vector<RigidRow> rows;
    int violations = 0;
};
RigidReport rigid_divisibility_check(EdsEngine& eng, int N);

struct PrimitiveRow {
    int n = 0;
    std::vector<DivisorComponent> primitive;
};
std::vector<PrimitiveRow> primitive_report(EdsEngine& eng, int N);

struct HeightReport {
    std::vector<std::pair<int, Rational>> estimates;  // (n, deg D_nP / n^2)
    std::optional<Rational> split_exact;
};
HeightReport canonical_height(EdsEngine& eng, int N);

// (E', P') upstairs, (E, P) downstairs with tau(P') = P.
struct MagnifiedPair {
    EdsContext up;
    EdsContext down;
    VeluIsogeny isogeny;
    Transform<Rational> to_target;  // codomain of the Velu map onto E
    int degree = 1;
};
// Upstairs: the curve C over its own function field with P' = (u, v);
// downstairs: E with P the image of P' under the isogeny with the given kernel.
MagnifiedPair make_isogeny_pair(const WeierstrassCurve<Rational>& C, const WeierstrassCurve<Rational>& E,
                                const QPoly& kernel);

// Smallest odd-degree isogeny C -> E over Q with a cyclic kernel: a rational
// factor of degree (l - 1)/2 of the l-th division polynomial of C, l <= max_ell.
struct KernelSearch {
    QPoly kernel;  // monic
    int ell = 0;
};
std::optional<KernelSearch> recover_kernel(const WeierstrassCurve<Rational>& C, const WeierstrassCurve<Rational>& E,
                                           int max_ell = 13, const FactorOptions& opts = {});

struct MagnifiedRow {
    int n = 0;
    bool effective = true;
    int components = 0;
};
struct MagnifiedReport {
    std::vector<MagnifiedRow> rows;
    int threshold = 2;
    int violations = 0;
};
MagnifiedReport magnified_check(EdsEngine& down, EdsEngine& up, int N);

struct DecompositionClass {
    std::vector<DivisorComponent> components;
    int degree = 0;
    bool irreducible = false;  // single reduced component with inert or ramified fiber
    std::string note;
};
struct DecompositionReport {
    int q = 0, d = 0;
    std::vector<DecompositionClass> classes;
    int expected_large = 0, expected_small = 0;
    bool matches = false;
    bool small_is_division_polynomial = false;
};
DecompositionReport isogeny_decomposition_check(EdsEngine& down, const WeierstrassCurve<Rational>& C, int degree,
                                                int q);

struct ReductionRow {
    std::uint64_t q = 0;
    bool good = false;
    bool ordinary = false;
    bool dp_irreducible = false;
    bool in_M = false;
    long trace = 0;
};
struct ReductionSurvey {
    QPoly dp;  // integer-primitive polynomial carrying the finite support of D_P
    std::vector<ReductionRow> rows;
    std::size_t good = 0, ordinary = 0, supersingular = 0, irreducible = 0, in_M = 0;
};
ReductionSurvey reduction_survey(EdsEngine& eng, std::uint64_t x_max);

}  // namespace divseq
