#pragma once

// Helpers shared by the unit tests and the acceptance runner. The oracles
// here work on explicit words and tables and never touch the behavior
// machinery they are used to check.

#include <functional>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lambek/algebra.hpp"
#include "lambek/langkit.hpp"
#include "lambek/models.hpp"
#include "lambek/scl.hpp"

namespace lambek::testing {

struct RegressionLanguage {
    std::string name;
    Dfa dfa;
};

inline std::vector<RegressionLanguage> regression_languages()
{
    return {
        {"uavb", dfa_template_uavb({"a", "b", "c", "d"})},
        {"ab", dfa_for_word_set({{0, 1}}, {"a", "b"})},
        {"a+", dfa_universal({"a"}, false)},
    };
}

inline Word random_word(std::mt19937_64& rng, std::size_t letters, std::size_t min_len, std::size_t max_len)
{
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<std::size_t> sym(0, letters - 1);
    Word w(len(rng));
    for (auto& s : w)
        s = sym(rng);
    return w;
}

inline std::vector<Word> words_up_to(std::size_t letters, std::size_t min_len, std::size_t max_len)
{
    std::vector<Word> out;
    std::vector<Word> layer{{}};
    for (std::size_t len = 0; len <= max_len; ++len) {
        if (len >= min_len)
            out.insert(out.end(), layer.begin(), layer.end());
        std::vector<Word> next;
        for (const auto& w : layer)
            for (std::size_t s = 0; s < letters; ++s) {
                auto v = w;
                v.push_back(s);
                next.push_back(std::move(v));
            }
        layer = std::move(next);
    }
    return out;
}

inline Word concat(const Word& a, const Word& b, const Word& c = {})
{
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    out.insert(out.end(), c.begin(), c.end());
    return out;
}

/// M^{▷◁} by brute force over words of length ≤ word_bound and contexts
/// (x, y) with |x|, |y| ≤ ctx_side each.
inline std::set<Word> naive_closure(const Dfa& lang, const std::vector<Word>& m, std::size_t word_bound,
                                    std::size_t ctx_side, WordMode mode)
{
    const auto k = lang.alphabet().size();
    const auto sides = words_up_to(k, 0, ctx_side);
    std::vector<std::pair<Word, Word>> polar;
    for (const auto& x : sides)
        for (const auto& y : sides) {
            bool all = true;
            for (const auto& w : m)
                if (!lang.accepts(concat(x, w, y))) {
                    all = false;
                    break;
                }
            if (all)
                polar.emplace_back(x, y);
        }
    std::set<Word> out;
    for (const auto& w : words_up_to(k, mode == WordMode::Positive ? 1 : 0, word_bound)) {
        bool all = true;
        for (const auto& [x, y] : polar)
            if (!lang.accepts(concat(x, w, y))) {
                all = false;
                break;
            }
        if (all)
            out.insert(w);
    }
    return out;
}

/// Words of length ≤ bound (non-empty in positive mode) that lie in `c`.
inline std::set<Word> engine_words(const SclAlgebra& alg, const Concept& c, std::size_t bound)
{
    std::set<Word> out;
    const auto k = alg.monoid().dfa().alphabet().size();
    for (const auto& w : words_up_to(k, alg.mode() == WordMode::Positive ? 1 : 0, bound))
        if (alg.contains_word(c, w))
            out.insert(w);
    return out;
}

/// Residuation a·b ⪯ c ⟺ b ⪯ a\c ⟺ a ⪯ c/b checked against the order, and
/// associativity, recomputed from the raw tables.
inline bool brute_force_residuated(const FiniteResiduatedAlgebra& alg)
{
    const auto n = alg.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                const bool p = alg.leq[alg.prod[a][b]][c];
                if (p != static_cast<bool>(alg.leq[b][alg.ldiv[a][c]]))
                    return false;
                if (p != static_cast<bool>(alg.leq[a][alg.rdiv[c][b]]))
                    return false;
                if (alg.prod[alg.prod[a][b]][c] != alg.prod[a][alg.prod[b][c]])
                    return false;
            }
        }
    return true;
}

/// A random closed set, chosen uniformly among the enumerated concepts.
inline Concept random_concept(std::mt19937_64& rng, const std::vector<Concept>& concepts)
{
    std::uniform_int_distribution<std::size_t> pick(0, concepts.size() - 1);
    return concepts[pick(rng)];
}

/// A fixed zoo of SCL-models over p, q, r. In positive mode the models are
/// for the restricted calculus, in epsilon mode for the unrestricted one.
/// Every third model lives on the cone over a non-standard local zero when
/// one is available.
inline std::vector<SclModel> model_zoo(WordMode mode, std::size_t count, std::uint64_t seed)
{
    std::vector<Dfa> langs;
    for (const auto& rl : regression_languages())
        langs.push_back(rl.dfa);
    for (const auto& d : enumerate_small_dfas(3, 2))
        langs.push_back(d);
    std::mt19937_64 rng(seed);
    std::vector<SclModel> out;
    const Mode calc = mode == WordMode::Positive ? Mode::Restricted : Mode::Unrestricted;
    for (std::size_t i = 0; out.size() < count && i < 10 * count; ++i) {
        const auto& dfa = langs[i % langs.size()];
        const auto alg = SclAlgebra::create(dfa, mode);
        const auto concepts = alg->enumerate_concepts();
        std::optional<Concept> floor;
        if (i % 3 == 2) {
            for (const auto& c : concepts) {
                if (c == alg->bot_closure() || !alg->is_local_zero(c))
                    continue;
                if (mode == WordMode::Epsilon && !c.subset_of(alg->unit()))
                    continue;
                floor = c;
                break;
            }
        }
        std::map<std::string, Concept> assign;
        for (const auto* v : {"p", "q", "r"}) {
            auto c = random_concept(rng, concepts);
            if (floor)
                c = alg->join(c, *floor);
            assign.emplace(v, c);
        }
        out.emplace_back(alg, std::move(assign), calc, floor);
    }
    return out;
}

}  // namespace lambek::testing
