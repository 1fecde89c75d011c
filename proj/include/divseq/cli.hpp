#pragma once

#include <string>
#include <vector>

#include "divseq/expr.hpp"
#include "divseq/factor.hpp"
#include "divseq/zpoly.hpp"

namespace divseq {

// Exit codes: 0 success, 1 input error, 2 unsupported input, 3 resource limit.
struct CommandResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

// args excludes the program name, e.g. {"lucas", "gen", "--spec", "f.spec"}.
CommandResult run_command(const std::vector<std::string>& args);

// Printed form c * prod P_i^e_i with P_i primitive in Z[t], positive leading
// coefficient, sorted by degree then coefficients.
struct DisplayForm {
    Rational constant = 1;
    std::vector<std::pair<ZPoly, int>> factors;
};
DisplayForm display_form(const FactoredPolynomial<Rational>& f);
// Extra symbolic factors (such as "v") are placed after the constant.
std::string render_display(const DisplayForm& d, const std::string& var,
                           const std::vector<std::string>& extra = {});

}  // namespace divseq
