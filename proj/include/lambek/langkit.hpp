#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "json.hpp"

namespace lambek {

using Symbol = std::string;
/// A word as a sequence of symbol indices into some alphabet.
using Word = std::vector<std::size_t>;
using StateSet = boost::dynamic_bitset<>;

/// Whether the universe of words is Σ⁺ (positive) or Σ* (epsilon).
enum class WordMode { Positive, Epsilon };

std::string to_string(WordMode mode);
WordMode parse_word_mode(std::string_view text);

/// Complete deterministic automaton over a finite alphabet of named symbols.
class Dfa {
public:
    Dfa(std::vector<Symbol> alphabet, std::size_t states, std::size_t start, std::vector<bool> accepting,
        std::vector<std::vector<std::size_t>> delta);

    const std::vector<Symbol>& alphabet() const { return alphabet_; }
    std::size_t state_count() const { return accepting_.size(); }
    std::size_t start() const { return start_; }
    bool is_accepting(std::size_t q) const { return accepting_[q]; }
    std::size_t next(std::size_t q, std::size_t symbol) const { return delta_[q][symbol]; }
    const std::vector<std::vector<std::size_t>>& delta() const { return delta_; }

    std::size_t run(std::size_t q, std::span<const std::size_t> word) const;
    bool accepts(std::span<const std::size_t> word) const;

    std::optional<std::size_t> symbol_index(std::string_view name) const;

    /// Minimal equivalent DFA with reachable states numbered in BFS order.
    Dfa minimized() const;

    nlohmann::json to_json() const;
    static Dfa from_json(const nlohmann::json& j);
    static Dfa read_file(const std::string& path);

private:
    std::vector<Symbol> alphabet_;
    std::size_t start_;
    std::vector<bool> accepting_;
    std::vector<std::vector<std::size_t>> delta_;
};

/// Splits `text` into alphabet symbols: space-separated if it contains spaces,
/// otherwise greedy longest match. Throws on symbols outside the alphabet.
Word parse_word(const std::vector<Symbol>& alphabet, std::string_view text);
std::string format_word(const std::vector<Symbol>& alphabet, std::span<const std::size_t> word);

/// Minimal DFA accepting exactly `words`.
Dfa dfa_for_word_set(const std::vector<Word>& words, const std::vector<Symbol>& alphabet);
/// Σ⁺ (or Σ* with `with_empty`) over `alphabet`.
Dfa dfa_universal(const std::vector<Symbol>& alphabet, bool with_empty);
/// { u a v b | u, v ∈ Σ* }.
Dfa dfa_template_uavb(const std::vector<Symbol>& alphabet, const Symbol& a = "a", const Symbol& b = "b");

/// The action of a word on DFA states, with a shortest witness.
struct WordBehavior {
    std::vector<std::uint32_t> func;
    Word witness;
};

/// A context (x, y) up to equivalence: x leads from the start to `entry`, and
/// y leads from exactly the states in `exit_set` to acceptance.
struct ContextBehavior {
    std::size_t entry;
    StateSet exit_set;
    Word left_witness;
    Word right_witness;
};

/// Transition monoid of a minimal DFA together with its realized contexts.
class SyntacticMonoid {
public:
    static SyntacticMonoid build(const Dfa& minimal, WordMode mode);

    const Dfa& dfa() const { return dfa_; }
    WordMode mode() const { return mode_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<WordBehavior>& elements() const { return elements_; }
    const WordBehavior& element(std::size_t i) const { return elements_[i]; }
    std::optional<std::size_t> identity() const { return identity_; }

    std::size_t product(std::size_t a, std::size_t b) const { return table_[a * size() + b]; }
    std::optional<std::size_t> letter(std::size_t symbol) const { return letters_[symbol]; }

    /// Behavior index of `word`; nullopt for ε in positive mode.
    std::optional<std::size_t> behavior_of(std::span<const std::size_t> word) const;
    std::optional<std::size_t> find(const std::vector<std::uint32_t>& func) const;

    const std::vector<ContextBehavior>& contexts() const { return contexts_; }
    bool context_accepts(std::size_t ctx, std::size_t behavior) const;

private:
    Dfa dfa_;
    WordMode mode_ = WordMode::Positive;
    std::vector<WordBehavior> elements_;
    std::optional<std::size_t> identity_;
    std::vector<std::optional<std::size_t>> letters_;
    std::vector<std::uint32_t> table_;
    std::vector<ContextBehavior> contexts_;

    explicit SyntacticMonoid(Dfa dfa) : dfa_(std::move(dfa)) {}
};

/// The two-letter alphabet {e, f} and the homomorphism a_i ↦ e f^i e (i ≥ 1).
inline const std::vector<Symbol>& pentus_alphabet()
{
    static const std::vector<Symbol> sigma2{"e", "f"};
    return sigma2;
}

/// Encodes a word over an indexed alphabet (symbol index k is a_{k+1}).
Word pentus_encode(std::span<const std::size_t> word);
std::optional<Word> pentus_decode(std::span<const std::size_t> encoded,
                                  std::size_t alphabet_size = std::numeric_limits<std::size_t>::max());
/// Minimal DFA for g(L) over {e, f}.
Dfa pentus_encode_lang(const Dfa& lang);

}  // namespace lambek
