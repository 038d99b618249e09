#include <random>

#include "doctest.h"
#include "lambek/generate.hpp"
#include "lambek/syntax.hpp"

using namespace lambek;

TEST_SUITE("syntax")
{
    TEST_CASE("product of a transitive verb phrase groups divisions first")
    {
        const auto f = parse_formula("np . (np\\s)/np . np", Mode::Restricted);
        REQUIRE(f->kind() == Connective::Prod);
        CHECK(f->right()->name() == "np");
        const auto& inner = f->left();
        REQUIRE(inner->kind() == Connective::Prod);
        CHECK(inner->left()->name() == "np");
        REQUIRE(inner->right()->kind() == Connective::RDiv);
        CHECK(print_formula(inner->right()->den()) == "np");
        CHECK(print_formula(inner->right()->num()) == "np\\s");
    }

    TEST_CASE("dependent clause sequent has five antecedent formulas")
    {
        const auto s = parse_sequent("n/np, n, (n\\n)/(s/np), np, (np\\s)/np => s", Mode::Restricted);
        CHECK(s.antecedent.size() == 5);
        CHECK(print_formula(s.succedent) == "s");
        CHECK(print_formula(s.antecedent[2]) == "(n\\n)/(s/np)");
    }

    TEST_CASE("empty antecedent depends on the mode")
    {
        const auto s = parse_sequent("=> one", Mode::Unrestricted);
        CHECK(s.antecedent.empty());
        CHECK(s.succedent->kind() == Connective::One);
        CHECK_THROWS_AS(parse_sequent("=> p", Mode::Restricted), ModeError);
        CHECK_THROWS_AS(parse_formula("one", Mode::Restricted), ModeError);
        CHECK_THROWS_AS(parse_formula("p^*", Mode::Restricted), ModeError);
        CHECK_NOTHROW(parse_formula("p^+", Mode::Restricted));
    }

    TEST_CASE("syntax errors carry a position")
    {
        try {
            parse_sequent("p, => q", Mode::Restricted);
            FAIL("expected a syntax error");
        } catch (const SyntaxError& e) {
            CHECK(e.position() == 2);
            CHECK(e.message() == "empty formula in antecedent");
        }
        CHECK_THROWS_AS(parse_sequent("p => q => r", Mode::Restricted), SyntaxError);
        CHECK_THROWS_AS(parse_formula("(p . q", Mode::Restricted), SyntaxError);
        CHECK_THROWS_AS(parse_formula("p # q", Mode::Restricted), SyntaxError);
        CHECK_THROWS_AS(parse_sequent("p q", Mode::Restricted), SyntaxError);
    }

    TEST_CASE("variables in order of first occurrence")
    {
        const auto s = parse_sequent("q . p, r\\q => p", Mode::Restricted);
        CHECK(variables_of(s) == std::vector<std::string>{"q", "p", "r"});
    }

    TEST_CASE("hypothesis files skip comments and blank lines")
    {
        const auto hyps = parse_hypotheses("# comment\n\np => p . p\n  q => p  # trailing\n", Mode::Restricted);
        REQUIRE(hyps.size() == 2);
        CHECK(print_sequent(hyps[1]) == "q => p");
        CHECK_THROWS_AS(parse_hypotheses("p => p\n=> q\n", Mode::Restricted), ModeError);
    }

    TEST_CASE("printing then parsing is the identity on random formulas")
    {
        std::mt19937_64 rng(7);
        for (const auto mode : {Mode::Restricted, Mode::Unrestricted}) {
            const auto sig = signature_for_mode(mode, true);
            for (int i = 0; i < 400; ++i) {
                const auto s = random_sequent(rng, {"p", "q", "r"}, 4, 3, sig);
                const auto text = print_sequent(s);
                const auto back = parse_sequent(text, mode);
                CHECK_MESSAGE(back == s, text);
                CHECK(print_sequent(back) == text);
            }
        }
    }

    TEST_CASE("restricted generator never emits unit or star")
    {
        std::mt19937_64 rng(11);
        const auto sig = signature_for_mode(Mode::Restricted, true);
        for (int i = 0; i < 300; ++i) {
            const auto s = random_sequent(rng, {"p", "q"}, 4, 3, sig);
            CHECK_FALSE(s.antecedent.empty());
            CHECK_NOTHROW(check_mode(s, Mode::Restricted));
        }
    }
}
