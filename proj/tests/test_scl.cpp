#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace lambek;
using namespace lambek::testing;

namespace {

std::vector<Word> sample_words(std::mt19937_64& rng, std::size_t k, std::size_t count, WordMode mode)
{
    std::vector<Word> m;
    for (std::size_t i = 0; i < count; ++i)
        m.push_back(random_word(rng, k, mode == WordMode::Positive ? 1 : 0, 3));
    return m;
}

}  // namespace

TEST_SUITE("scl")
{
    TEST_CASE("engine closure matches brute force on explicit words")
    {
        std::mt19937_64 rng(21);
        for (const auto& rl : regression_languages()) {
            for (const auto mode : {WordMode::Positive, WordMode::Epsilon}) {
                const auto alg = SclAlgebra::create(rl.dfa, mode);
                const auto k = rl.dfa.alphabet().size();
                const std::size_t bound = k > 2 ? 3 : 5;
                for (int i = 0; i < 15; ++i) {
                    const auto m = sample_words(rng, k, 1 + rng() % 3, mode);
                    const auto c = alg->closure(alg->behaviors_of(m));
                    CHECK(engine_words(*alg, c, bound) == naive_closure(rl.dfa, m, bound, 3, mode));
                }
            }
        }
    }

    TEST_CASE("library oracle closure matches brute force")
    {
        std::mt19937_64 rng(22);
        for (const auto& rl : regression_languages()) {
            const auto k = rl.dfa.alphabet().size();
            for (int i = 0; i < 8; ++i) {
                const auto m = sample_words(rng, k, 2, WordMode::Positive);
                CHECK(oracle_closure(rl.dfa, m, 3, 4, WordMode::Positive) ==
                      naive_closure(rl.dfa, m, 3, 2, WordMode::Positive));
            }
        }
    }

    TEST_CASE("concept count matches closures of all behavior subsets")
    {
        for (const auto& rl : regression_languages()) {
            for (const auto mode : {WordMode::Positive, WordMode::Epsilon}) {
                const auto alg = SclAlgebra::create(rl.dfa, mode);
                const auto n = alg->behavior_count();
                if (n > 14)
                    continue;
                std::set<BehaviorSet> closed;
                for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                    BehaviorSet b(n, mask);
                    // Direct double polar, by definition.
                    BehaviorSet back(n);
                    back.set();
                    for (std::size_t ctx = 0; ctx < alg->context_count(); ++ctx)
                        if ((b & ~alg->extent(ctx)).none())
                            back &= alg->extent(ctx);
                    closed.insert(back);
                }
                CHECK(alg->enumerate_concepts().size() == closed.size());
            }
        }
    }

    TEST_CASE("residuation, closure laws and closed residuals on random triples")
    {
        std::mt19937_64 rng(23);
        for (const auto& rl : regression_languages()) {
            for (const auto mode : {WordMode::Positive, WordMode::Epsilon}) {
                const auto alg = SclAlgebra::create(rl.dfa, mode);
                const auto cs = alg->enumerate_concepts();
                const auto n = alg->behavior_count();
                for (int i = 0; i < 200; ++i) {
                    const auto a = random_concept(rng, cs);
                    const auto b = random_concept(rng, cs);
                    const auto c = random_concept(rng, cs);
                    const bool p = alg->prod(a, b).subset_of(c);
                    CHECK(p == b.subset_of(alg->ldiv(a, c)));
                    CHECK(p == a.subset_of(alg->rdiv(c, b)));
                    CHECK(alg->is_closed(alg->ldiv_set(a.behaviors(), c.behaviors())));
                    CHECK(alg->is_closed(alg->rdiv_set(c.behaviors(), b.behaviors())));
                    CHECK(alg->prod(alg->prod(a, b), c) == alg->prod(a, alg->prod(b, c)));
                    CHECK(alg->meet(a, b).behaviors() == (a.behaviors() & b.behaviors()));
                    CHECK(a.subset_of(alg->join(a, b)));

                    BehaviorSet x(n), y(n);
                    for (std::size_t t = 0; t < n; ++t) {
                        x[t] = rng() % 3 == 0;
                        y[t] = x[t] || rng() % 3 == 0;
                    }
                    const auto cx = alg->closure(x);
                    CHECK(x.is_subset_of(cx.behaviors()));
                    CHECK(alg->closure(cx.behaviors()) == cx);
                    CHECK(cx.subset_of(alg->closure(y)));
                }
            }
        }
    }

    TEST_CASE("product and division agree with words")
    {
        std::mt19937_64 rng(24);
        for (const auto& rl : regression_languages()) {
            const auto alg = SclAlgebra::create(rl.dfa, WordMode::Positive);
            const auto cs = alg->enumerate_concepts();
            const auto k = rl.dfa.alphabet().size();
            const auto words = words_up_to(k, 1, k > 2 ? 2 : 4);
            for (int i = 0; i < 20; ++i) {
                const auto a = random_concept(rng, cs);
                const auto b = random_concept(rng, cs);
                const auto ab = alg->prod(a, b);
                const auto a_b = alg->ldiv(a, b);
                for (const auto& u : words)
                    for (const auto& v : words) {
                        if (alg->contains_word(a, u) && alg->contains_word(b, v))
                            CHECK(alg->contains_word(ab, concat(u, v)));
                        if (alg->contains_word(a, u) && alg->contains_word(a_b, v))
                            CHECK(alg->contains_word(b, concat(u, v)));
                    }
            }
        }
    }

    TEST_CASE("local zero of u a v b")
    {
        const auto alg = SclAlgebra::create(regression_languages()[0].dfa, WordMode::Positive);
        const auto a = *alg->monoid().dfa().symbol_index("a");
        BehaviorSet uav = alg->empty_set();
        for (std::size_t t = 0; t < alg->behavior_count(); ++t) {
            const auto& w = alg->monoid().element(t).witness;
            if (std::find(w.begin(), w.end(), a) != w.end())
                uav.set(t);
        }
        const auto z = alg->closure(uav);
        CHECK(alg->is_local_zero(z));
        CHECK(alg->is_local_zero_exhaustive(z));
        CHECK(alg->bot_closure().count() == 0);
        CHECK_FALSE(z == alg->bot_closure());
        // Every word containing a, and nothing else.
        for (const auto& w : words_up_to(4, 1, 4))
            CHECK(alg->contains_word(z, w) == (std::find(w.begin(), w.end(), a) != w.end()));
    }

    TEST_CASE("local zero criterion agrees with enumeration")
    {
        for (const auto& rl : regression_languages())
            for (const auto mode : {WordMode::Positive, WordMode::Epsilon}) {
                const auto alg = SclAlgebra::create(rl.dfa, mode);
                for (const auto& c : alg->enumerate_concepts())
                    CHECK(alg->is_local_zero(c) == alg->is_local_zero_exhaustive(c));
            }
    }

    TEST_CASE("iteration")
    {
        std::mt19937_64 rng(25);
        for (const auto& rl : regression_languages()) {
            for (const auto mode : {WordMode::Positive, WordMode::Epsilon}) {
                const auto alg = SclAlgebra::create(rl.dfa, mode);
                const auto cs = alg->enumerate_concepts();
                for (int i = 0; i < 30; ++i) {
                    const auto a = random_concept(rng, cs);
                    const auto p = alg->plus_iter(a);
                    CHECK(a.subset_of(p));
                    CHECK(alg->prod(p, p).subset_of(p));
                    CHECK(alg->plus_iter(p) == p);
                    if (mode == WordMode::Epsilon) {
                        const auto s = alg->star_iter(a);
                        CHECK(alg->unit().subset_of(s));
                        CHECK(p.subset_of(s));
                        CHECK(alg->join(alg->unit(), p) == s);
                    } else {
                        CHECK_THROWS(alg->star_iter(a));
                    }
                }
            }
        }
    }

    TEST_CASE("iterated denominators")
    {
        std::mt19937_64 rng(26);
        for (const auto& rl : regression_languages()) {
            for (const auto mode : {WordMode::Positive, WordMode::Epsilon}) {
                const auto alg = SclAlgebra::create(rl.dfa, mode);
                const auto cs = alg->enumerate_concepts();
                const bool eps = mode == WordMode::Epsilon;
                for (int i = 0; i < 20; ++i) {
                    const auto a = random_concept(rng, cs);
                    const auto b = random_concept(rng, cs);
                    // Union of powers computed here, by repeated products.
                    BehaviorSet powers = a.behaviors();
                    BehaviorSet layer = a.behaviors();
                    while (true) {
                        layer = alg->product_set(layer, a.behaviors());
                        if (layer.is_subset_of(powers))
                            break;
                        powers |= layer;
                    }
                    if (eps)
                        powers |= alg->singleton(*alg->monoid().identity());
                    const auto it = eps ? alg->star_iter(a) : alg->plus_iter(a);
                    CHECK(alg->ldiv_set(powers, b.behaviors()) == alg->ldiv(it, b).behaviors());
                    CHECK(alg->rdiv_set(b.behaviors(), powers) == alg->rdiv(b, it).behaviors());
                }
            }
        }
    }

    TEST_CASE("upper cone")
    {
        const auto alg = SclAlgebra::create(regression_languages()[0].dfa, WordMode::Positive);
        for (const auto& z : alg->enumerate_concepts()) {
            if (!alg->is_local_zero(z))
                continue;
            const UpperCone cone(alg, z);
            const auto members = cone.enumerate_concepts();
            for (const auto& a : members) {
                CHECK(z.subset_of(a));
                for (const auto& b : members) {
                    CHECK(cone.contains(alg->prod(a, b)));
                    CHECK(cone.contains(alg->ldiv(a, b)));
                    CHECK(cone.contains(alg->rdiv(a, b)));
                    CHECK(cone.contains(alg->meet(a, b)));
                }
            }
        }
    }

    TEST_CASE("mixing concepts of different algebras is rejected")
    {
        const auto a = SclAlgebra::create(regression_languages()[1].dfa, WordMode::Positive);
        const auto b = SclAlgebra::create(regression_languages()[1].dfa, WordMode::Positive);
        CHECK_THROWS_AS(a->meet(a->top(), b->top()), MixedAlgebraError);
        std::size_t rejected = 0;
        for (std::size_t t = 0; t < a->behavior_count(); ++t) {
            const auto s = a->singleton(t);
            if (a->is_closed(s)) {
                CHECK(a->as_concept(s).behaviors() == s);
            } else {
                CHECK_THROWS_AS(a->as_concept(s), std::logic_error);
                ++rejected;
            }
        }
        CHECK(rejected > 0);
    }
}
