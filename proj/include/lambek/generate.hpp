#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "lambek/syntax.hpp"

namespace lambek {

/// Which connectives and sequent shapes a random generator may produce.
struct SignatureOptions {
    bool unit = false;
    bool star = false;
    bool plus = false;
    bool bot = true;
    bool top = true;
    bool empty_antecedent = false;
};

SignatureOptions signature_for_mode(Mode mode, bool iteration);

/// Random formula of depth at most `depth` over `vars`.
FormulaPtr random_formula(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t depth,
                          const SignatureOptions& sig);

/// Random sequent with 0..max_antecedent antecedent formulas (at least one
/// unless the signature allows empty antecedents).
Sequent random_sequent(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t depth,
                       std::size_t max_antecedent, const SignatureOptions& sig);

}  // namespace lambek
