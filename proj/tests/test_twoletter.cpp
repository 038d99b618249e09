#include <random>

#include "doctest.h"
#include "lambek/embedding.hpp"
#include "support.hpp"

using namespace lambek;
using namespace lambek::testing;

TEST_SUITE("twoletter")
{
    TEST_CASE("image of a closed set contains the encoded words")
    {
        std::mt19937_64 rng(51);
        for (const auto& rl : regression_languages()) {
            const TwoLetterTransfer t(rl.dfa, WordMode::Positive);
            const auto cs = t.source().enumerate_concepts();
            const auto k = rl.dfa.alphabet().size();
            for (int i = 0; i < 10; ++i) {
                const auto m = random_concept(rng, cs);
                const auto img = t.image(m.behaviors());
                // g(M) is exactly the set of encodings of words in M.
                for (const auto& v : words_up_to(2, 1, 9)) {
                    const auto d = pentus_decode(v, k);
                    const bool in_g = d && !d->empty() && t.source().contains_word(m, *d);
                    const auto b = t.target().monoid().behavior_of(v);
                    if (in_g)
                        CHECK(img[*b]);
                }
                // Conversely every class in the image is reached by some g(w), w ∈ M.
                BehaviorSet reached(img.size());
                for (const auto& w : words_up_to(k, 1, k > 2 ? 4 : 6))
                    if (t.source().contains_word(m, w))
                        reached.set(*t.target().monoid().behavior_of(pentus_encode(w)));
                CHECK(reached == img);
            }
        }
    }

    TEST_CASE("closure commutes with the encoding under the preconditions")
    {
        std::mt19937_64 rng(52);
        for (const auto& rl : regression_languages()) {
            for (const auto mode : {WordMode::Positive, WordMode::Epsilon}) {
                const TwoLetterTransfer t(rl.dfa, mode);
                std::size_t checked = 0;
                for (const auto& c : t.source().enumerate_concepts()) {
                    const auto r = t.check(c, 6, 4);
                    CHECK(r.oracle_consistent);
                    if (r.precondition_nonempty_word && r.precondition_nonempty_polar) {
                        CHECK_MESSAGE(r.equal, rl.name);
                        ++checked;
                    }
                }
                CHECK(checked > 0);
            }
        }
    }

    TEST_CASE("dropping the context precondition breaks the equality")
    {
        // In {ab} no context accepts both a and b, so the top element has an
        // empty polar; its image is not closed in g(L).
        const auto ab = regression_languages()[1].dfa;
        const TwoLetterTransfer t(ab, WordMode::Positive);
        const auto r = t.check(t.source().top(), 6);
        CHECK(r.precondition_nonempty_word);
        CHECK_FALSE(r.precondition_nonempty_polar);
        CHECK_FALSE(r.equal);
        REQUIRE(r.witness);
        CHECK_FALSE(pentus_decode(*r.witness, 2).has_value());
    }

    TEST_CASE("encoded language is minimal")
    {
        for (const auto& rl : regression_languages()) {
            const TwoLetterTransfer t(rl.dfa, WordMode::Positive);
            CHECK(t.encoded_language().alphabet() == pentus_alphabet());
            CHECK(t.encoded_language().minimized().state_count() == t.encoded_language().state_count());
        }
    }
}
