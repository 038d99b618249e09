#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lambek/algebra.hpp"
#include "lambek/generate.hpp"
#include "lambek/models.hpp"
#include "lambek/scl.hpp"

namespace lambek {

/// psc: Σ⁺ with non-standard ⊥; scl: Σ* with unit and non-standard ⊥;
/// botstd: Σ* without unit, standard ⊥.
enum class EmbeddingTemplate { Psc, Scl, BotStd };

std::string to_string(EmbeddingTemplate t);
EmbeddingTemplate parse_template(std::string_view text);
WordMode word_mode_of(EmbeddingTemplate t);
/// The calculus whose sequents the template interprets.
Mode sequent_mode_of(EmbeddingTemplate t);
bool template_permits(EmbeddingTemplate t, AlgebraKind kind);

class TemplateMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A finite algebra together with its designated language L and the map h.
///
/// Symbol i (< n) of the alphabet is the barred copy of element i, written
/// "name^"; symbol n + i is the underlined copy, written "name_".
struct EmbeddingConstruction {
    FiniteResiduatedAlgebra algebra;
    EmbeddingTemplate tmpl = EmbeddingTemplate::Psc;
    std::vector<Symbol> sigma;
    std::optional<Dfa> language;
    std::shared_ptr<const SclAlgebra> scl;
    std::vector<Concept> h;
    /// h(⊥) when it is the floor of the upper cone (psc, scl).
    std::optional<Concept> floor;

    std::size_t barred(std::size_t element) const { return element; }
    std::size_t underlined(std::size_t element) const { return algebra.size() + element; }
    const Dfa& dfa() const { return *language; }

    /// x^• with underlined letters skipped; nullopt for ε without a unit.
    std::optional<std::size_t> bullet(std::span<const std::size_t> word) const;
    /// Membership in L decided from the set-builder definition.
    bool in_language_direct(std::span<const std::size_t> word) const;
    /// Explicit set-builder description of h(b).
    bool in_h_direct(std::size_t element, std::span<const std::size_t> word) const;

    /// Model over the (cone of the) SCL with α = h ∘ interp.
    SclModel model_for(const AlgebraInterpretation& interp) const;
};

/// Throws TemplateMismatch when the algebra's kind does not fit the template.
EmbeddingConstruction build_embedding(const FiniteResiduatedAlgebra& alg, EmbeddingTemplate tmpl);

struct LemmaResult {
    std::string lemma;
    bool passed = true;
    std::string witness;
};

struct LemmaReport {
    std::vector<LemmaResult> results;
    bool all_passed() const;
    nlohmann::json to_json() const;
};

LemmaReport check_lemmas(const EmbeddingConstruction& con);

struct TransferResult {
    bool algebra_truth = false;
    bool scl_truth = false;
};

TransferResult truth_transfer(const EmbeddingConstruction& con, const AlgebraInterpretation& interp,
                              const Sequent& s);

SignatureOptions signature_of(const EmbeddingConstruction& con);

/// Bounded check of g(M^{▷◁}) = (g(M))^{▷◁} for the two-letter encoding g.
struct TwoLetterCheck {
    bool precondition_nonempty_word = false;
    bool precondition_nonempty_polar = false;
    bool equal = false;
    /// Shortest {e,f}-word on which the two sides differ, if any.
    std::optional<Word> witness;
    /// Engine closure agrees with the bounded oracle on the compared words.
    bool oracle_consistent = true;
};

class TwoLetterTransfer {
public:
    TwoLetterTransfer(const Dfa& lang, WordMode mode);

    const SclAlgebra& source() const { return *source_; }
    const SclAlgebra& target() const { return *target_; }
    const Dfa& encoded_language() const { return encoded_; }

    /// Behaviors of g(M) in the encoded SCL, exactly.
    BehaviorSet image(const BehaviorSet& m) const;
    bool has_nonempty_word(const BehaviorSet& m) const;

    /// Compares both sides on all {e,f}-words up to `word_bound`; the oracle
    /// cross-check uses contexts up to `ctx_bound` (0 skips it).
    TwoLetterCheck check(const Concept& m, std::size_t word_bound, std::size_t ctx_bound = 0) const;

private:
    Dfa source_dfa_;
    Dfa encoded_;
    std::shared_ptr<const SclAlgebra> source_;
    std::shared_ptr<const SclAlgebra> target_;
    /// Realized pairs (source behavior, target behavior) of words w, g(w).
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::vector<bool> pair_nonempty_;
};

}  // namespace lambek
