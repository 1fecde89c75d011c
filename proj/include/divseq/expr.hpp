#pragma once

#include <map>
#include <string>
#include <vector>

#include "divseq/errors.hpp"
#include "divseq/polynomial.hpp"
#include "divseq/rational_function.hpp"

namespace divseq {

// Malformed expression or spec file; the message starts with "line L,
// column C:".
class SyntaxError : public InputError {
  public:
    SyntaxError(int line, int column, const std::string& what);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

  private:
    int line_, column_;
};

// a + b*v with a, b in Q[t]; t is whichever of T, u, x, y the text used.
struct ParsedExpr {
    QPoly a, b;
    std::string var;  // empty for constants

    bool has_v() const { return !b.is_zero(); }
};

// Grammar:
//   Expr   := ('+'|'-')? Term (('+'|'-') Term)*
//   Term   := Factor ('*' Factor)*
//   Factor := Base ('^' uint)?
//   Base   := rational | variable | '(' Expr ')' | '(' Expr ';' Expr ')'
//   rational := int ('/' uint)?
// Variables are T, u, x, y (one per expression) and v, which may appear at
// most linearly; (A; B) stands for A + B*v.
ParsedExpr parse_expression(const std::string& text, int line = 1);
// Same, rejecting any v-part.
QPoly parse_polynomial(const std::string& text, int line = 1);

// Line-oriented `name = expr` file; '#' starts a comment. A value may also be
// given as name.num / name.den.
struct InputSpec {
    std::string kind;  // lucas | eds | isogeny-pair | factor
    std::map<std::string, ParsedExpr> bindings;
    std::map<std::string, int> lines;

    bool has(const std::string& name) const;
    // Throws InputError naming the missing binding.
    const ParsedExpr& get(const std::string& name) const;
    QPoly polynomial(const std::string& name) const;
    // name, or name.num / name.den (den defaults to 1 and must be v-free).
    QFunction function(const std::string& name) const;
    // (a + b*v) / den as a pair of rational functions.
    std::pair<QFunction, QFunction> element(const std::string& name) const;
};

InputSpec parse_input(const std::string& text);

}  // namespace divseq
