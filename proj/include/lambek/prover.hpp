#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lambek/syntax.hpp"

namespace lambek {

enum class Verdict { Derivable, NotDerivable, UnknownBounded };

std::string to_string(Verdict v);

/// One inference in a cut-free (or hypothesis-mode) derivation.
struct ProofNode {
    std::string rule;
    Sequent conclusion;
    std::vector<std::shared_ptr<const ProofNode>> premises;
};

using ProofPtr = std::shared_ptr<const ProofNode>;

struct ProofResult {
    Verdict verdict = Verdict::NotDerivable;
    ProofPtr witness;  // present iff verdict == Derivable
    std::size_t bound_used = 0;
    std::size_t cut_depth_used = 0;
    bool omega_truncated = false;
    bool cut_limit_reached = false;
    bool step_limit_reached = false;
};

struct ProverOptions {
    Mode mode = Mode::Restricted;
    HypothesisSet hyps;
    std::size_t omega_bound = 8;
    std::size_t cut_depth = 4;
    /// Sequents expanded before the search gives up with UnknownBounded.
    std::size_t step_limit = 250'000;
};

/// Backward proof search.
///
/// Without hypotheses the search is cut-free and decides every sequent that
/// does not need an ω-rule; an ω-rule is only ever used to refute (one false
/// premise kills it) and otherwise makes the verdict UnknownBounded. With
/// hypotheses, Cut is searched over subformulas of the goal and hypotheses up
/// to `cut_depth` nested cuts, and the verdict is never NotDerivable.
ProofResult prove(const Sequent& goal, const ProverOptions& options);

/// Renders a proof tree, one node per line, premises indented.
std::string render_proof(const ProofNode& node);

using Lexicon = std::map<std::string, std::vector<FormulaPtr>>;

/// Lexicon file: `word<TAB>formula` per line; repeated words add alternatives.
Lexicon read_lexicon(const std::string& path, Mode mode);
Lexicon parse_lexicon(const std::string& text, Mode mode);

struct SentenceAssignment {
    std::vector<FormulaPtr> types;
    ProofPtr proof;
};

struct SentenceParse {
    bool accepted = false;
    std::vector<SentenceAssignment> assignments;
};

/// Accepts iff some choice of lexical types derives `goal_type`.
SentenceParse parse_sentence(const Lexicon& lexicon, const std::vector<std::string>& sentence,
                             const FormulaPtr& goal_type, Mode mode);

}  // namespace lambek
