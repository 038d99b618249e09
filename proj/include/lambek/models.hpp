#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lambek/algebra.hpp"
#include "lambek/scl.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An interpretation of variables by closed languages of an SCL, optionally
/// restricted to the upper cone over a local zero (non-standard ⊥).
class SclModel {
public:
    SclModel(std::shared_ptr<const SclAlgebra> algebra, std::map<std::string, Concept> assignment, Mode mode,
             std::optional<Concept> floor = std::nullopt);

    const SclAlgebra& algebra() const { return *algebra_; }
    const std::shared_ptr<const SclAlgebra>& algebra_ptr() const { return algebra_; }
    const std::map<std::string, Concept>& assignment() const { return assignment_; }
    Mode mode() const { return mode_; }
    const std::optional<Concept>& floor() const { return floor_; }
    /// The interpretation of ⊥: the cone floor, or ∅^{▷◁}.
    const Concept& bottom() const;

private:
    std::shared_ptr<const SclAlgebra> algebra_;
    std::map<std::string, Concept> assignment_;
    Mode mode_;
    std::optional<Concept> floor_;
};

Concept eval_formula(const SclModel& model, const Formula& f);
/// α(A₁) ∘ … ∘ α(Aₙ) ⊆ α(B); an empty antecedent asks whether ε ∈ α(B).
bool eval_sequent(const SclModel& model, const Sequent& s);

struct CountermodelBudget {
    std::size_t max_dfa_states = 3;
    std::size_t max_letters = 2;
    std::size_t max_algebra_size = 4;
    std::size_t sample_limit = 20000;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
};

struct CountermodelReport {
    bool found = false;
    std::optional<SclModel> model;
    /// "algebra-embedding" or "dfa".
    std::string source;
    std::size_t checked_count = 0;
    /// For algebra-seeded finds: the algebra, its interpretation and the template used.
    std::optional<FiniteResiduatedAlgebra> seed_algebra;
    AlgebraInterpretation seed_interpretation;
    std::string template_name;
};

/// Searches for an SCL-model in which every hypothesis is true and the goal is
/// false: first finite algebras realized through the embedding, then small
/// DFAs with variables ranging over closures of at most two behavior classes.
/// A report with found == false says nothing about entailment.
CountermodelReport countermodel_search(const HypothesisSet& hyps, const Sequent& goal, Mode mode,
                                       const CountermodelBudget& budget);

/// Minimal DFAs with at most `max_states` states over the first `letters`
/// symbols of {a, b, c, ...}, each listed once, in a fixed order.
std::vector<Dfa> enumerate_small_dfas(std::size_t max_states, std::size_t letters);

/// Closures of the empty set, of each behavior class and of each pair.
std::vector<Concept> small_generated_concepts(const SclAlgebra& algebra);

}  // namespace lambek
