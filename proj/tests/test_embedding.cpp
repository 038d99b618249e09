#include <random>

#include "doctest.h"
#include "lambek/embedding.hpp"
#include "lambek/generate.hpp"
#include "support.hpp"

using namespace lambek;
using namespace lambek::testing;

namespace {

std::vector<std::pair<FiniteResiduatedAlgebra, EmbeddingTemplate>> constructions(std::size_t max_size)
{
    std::vector<std::pair<FiniteResiduatedAlgebra, EmbeddingTemplate>> out;
    for (const auto& alg : enumerate_algebras(max_size, AlgebraKind::OmegaPAL))
        out.emplace_back(alg, EmbeddingTemplate::Psc);
    for (const auto& alg : enumerate_algebras(max_size, AlgebraKind::OmegaAL)) {
        out.emplace_back(alg, EmbeddingTemplate::Scl);
        out.emplace_back(alg, EmbeddingTemplate::BotStd);
    }
    return out;
}

AlgebraInterpretation random_interp(std::mt19937_64& rng, std::size_t n)
{
    return {{"p", rng() % n}, {"q", rng() % n}, {"r", rng() % n}};
}

}  // namespace

TEST_SUITE("embedding")
{
    TEST_CASE("template compatibility")
    {
        CHECK(template_permits(EmbeddingTemplate::Psc, AlgebraKind::OmegaPAL));
        CHECK(template_permits(EmbeddingTemplate::Psc, AlgebraKind::SRBL));
        CHECK_FALSE(template_permits(EmbeddingTemplate::Psc, AlgebraKind::OmegaAL));
        CHECK(template_permits(EmbeddingTemplate::Scl, AlgebraKind::RBL));
        CHECK_FALSE(template_permits(EmbeddingTemplate::Scl, AlgebraKind::OmegaPAL));
        CHECK(template_permits(EmbeddingTemplate::BotStd, AlgebraKind::OmegaAL));
        const auto unital = enumerate_algebras(2, AlgebraKind::OmegaAL).back();
        CHECK_THROWS_AS(build_embedding(unital, EmbeddingTemplate::Psc), TemplateMismatch);
        CHECK(parse_template("botstd") == EmbeddingTemplate::BotStd);
        CHECK_THROWS(parse_template("nope"));
    }

    TEST_CASE("lemmas hold for every algebra up to size 3")
    {
        for (const auto& [alg, tmpl] : constructions(3)) {
            const auto con = build_embedding(alg, tmpl);
            const auto report = check_lemmas(con);
            for (const auto& r : report.results)
                CHECK_MESSAGE(r.passed, to_string(tmpl) << " " << r.lemma << ": " << r.witness);
        }
    }

    TEST_CASE("alphabet and state counts")
    {
        const auto two = enumerate_algebras(2, AlgebraKind::OmegaPAL).back();
        const auto psc = build_embedding(two, EmbeddingTemplate::Psc);
        CHECK(psc.sigma == std::vector<Symbol>{"bot^", "top^", "bot_", "top_"});
        CHECK(psc.dfa().state_count() == two.size() + 4);
        const auto two_u = enumerate_algebras(2, AlgebraKind::OmegaAL).back();
        CHECK(build_embedding(two_u, EmbeddingTemplate::Scl).dfa().state_count() == 2 * two_u.size() + 2);
        CHECK(build_embedding(two_u, EmbeddingTemplate::BotStd).dfa().state_count() == 2 * two_u.size());
    }

    TEST_CASE("language and h agree with their direct descriptions")
    {
        for (const auto& [alg, tmpl] : constructions(2)) {
            const auto con = build_embedding(alg, tmpl);
            const auto k = con.sigma.size();
            const auto words = words_up_to(k, word_mode_of(tmpl) == WordMode::Positive ? 1 : 0, 4);
            for (const auto& w : words) {
                CHECK(con.dfa().accepts(w) == con.in_language_direct(w));
                for (std::size_t b = 0; b < alg.size(); ++b)
                    CHECK(con.scl->contains_word(con.h[b], w) == con.in_h_direct(b, w));
            }
        }
    }

    TEST_CASE("h is an order embedding into the cone")
    {
        for (const auto& [alg, tmpl] : constructions(3)) {
            const auto con = build_embedding(alg, tmpl);
            for (std::size_t a = 0; a < alg.size(); ++a)
                for (std::size_t b = 0; b < alg.size(); ++b)
                    CHECK(alg.le(a, b) == con.h[a].subset_of(con.h[b]));
            if (tmpl == EmbeddingTemplate::BotStd) {
                CHECK_FALSE(con.floor);
                CHECK(con.h[alg.bot] == con.scl->bot_closure());
            } else {
                REQUIRE(con.floor);
                CHECK(*con.floor == con.h[alg.bot]);
                CHECK(con.scl->is_local_zero(*con.floor));
            }
        }
    }

    TEST_CASE("truth transfers on random sequents")
    {
        std::mt19937_64 rng(41);
        for (const auto& [alg, tmpl] : constructions(3)) {
            const auto con = build_embedding(alg, tmpl);
            const auto sig = signature_of(con);
            for (int i = 0; i < 60; ++i) {
                const auto s = random_sequent(rng, {"p", "q", "r"}, 3, 3, sig);
                const auto in = random_interp(rng, alg.size());
                const auto r = truth_transfer(con, in, s);
                CHECK_MESSAGE(r.algebra_truth == r.scl_truth, to_string(tmpl) << " " << print_sequent(s));
                // The model is the SCL read through h.
                const auto model = con.model_for(in);
                CHECK(eval_sequent(model, s) == r.scl_truth);
            }
        }
    }

    TEST_CASE("botstd keeps unit and star out of its signature")
    {
        const auto alg = enumerate_algebras(2, AlgebraKind::OmegaAL).back();
        const auto con = build_embedding(alg, EmbeddingTemplate::BotStd);
        CHECK_FALSE(signature_of(con).unit);
        CHECK_FALSE(signature_of(con).star);
        CHECK_THROWS(truth_transfer(con, {{"p", 0}}, parse_sequent("p => one", Mode::Unrestricted)));
    }

    TEST_CASE("a size 4 sample passes as well")
    {
        std::size_t i = 0;
        for (const auto& [alg, tmpl] : constructions(4)) {
            if (alg.size() < 4 || i++ % 9 != 0)
                continue;
            CHECK(check_lemmas(build_embedding(alg, tmpl)).all_passed());
        }
        CHECK(i > 0);
    }

    TEST_CASE("lemma report json")
    {
        const auto alg = enumerate_algebras(2, AlgebraKind::OmegaPAL).back();
        const auto j = check_lemmas(build_embedding(alg, EmbeddingTemplate::Psc)).to_json();
        REQUIRE(j.is_array());
        CHECK(j[0]["status"] == "pass");
    }
}
