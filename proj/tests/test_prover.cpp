#include <map>
#include <random>

#include "doctest.h"
#include "lambek/algebra.hpp"
#include "lambek/generate.hpp"
#include "lambek/prover.hpp"
#include "lambek/syntax.hpp"

using namespace lambek;

namespace {

Verdict verdict(const std::string& text, Mode mode)
{
    ProverOptions opt;
    opt.mode = mode;
    return prove(parse_sequent(text, mode), opt).verdict;
}

// Plain memoized cut-free search for the fragment without iteration; the
// rules are read off the calculus directly, one function per sequent.
class NaiveProver {
public:
    explicit NaiveProver(Mode mode) : mode_(mode) {}

    bool derivable(const std::vector<FormulaPtr>& ante, const FormulaPtr& succ)
    {
        std::string key;
        for (const auto& f : ante)
            key += print_formula(f) + " ,, ";
        key += "=> " + print_formula(succ);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        const bool r = search(ante, succ);
        memo_[key] = r;
        return r;
    }

private:
    Mode mode_;
    std::map<std::string, bool> memo_;

    bool nonempty_ok(std::size_t n) const { return mode_ == Mode::Unrestricted || n > 0; }

    static std::vector<FormulaPtr> slice(const std::vector<FormulaPtr>& v, std::size_t b, std::size_t e)
    {
        return {v.begin() + static_cast<std::ptrdiff_t>(b), v.begin() + static_cast<std::ptrdiff_t>(e)};
    }

    static std::vector<FormulaPtr> splice(const std::vector<FormulaPtr>& v, std::size_t b, std::size_t e,
                                          std::vector<FormulaPtr> mid)
    {
        auto out = slice(v, 0, b);
        out.insert(out.end(), mid.begin(), mid.end());
        out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(e), v.end());
        return out;
    }

    bool search(const std::vector<FormulaPtr>& g, const FormulaPtr& c)
    {
        const auto n = g.size();
        if (n == 1 && same_formula(g[0], c) && c->kind() == Connective::Var)
            return true;
        if (c->kind() == Connective::Top)
            return true;
        if (c->kind() == Connective::One && n == 0)
            return true;
        for (const auto& f : g)
            if (f->kind() == Connective::Bot)
                return true;
        switch (c->kind()) {
        case Connective::LDiv:
            if (nonempty_ok(n) && derivable(splice(g, 0, 0, {c->den()}), c->num()))
                return true;
            break;
        case Connective::RDiv:
            if (nonempty_ok(n) && derivable(splice(g, n, n, {c->den()}), c->num()))
                return true;
            break;
        case Connective::Prod:
            for (std::size_t k = 0; k <= n; ++k)
                if (nonempty_ok(k) && nonempty_ok(n - k) && derivable(slice(g, 0, k), c->left()) &&
                    derivable(slice(g, k, n), c->right()))
                    return true;
            break;
        case Connective::Meet:
            if (derivable(g, c->left()) && derivable(g, c->right()))
                return true;
            break;
        case Connective::Join:
            if (derivable(g, c->left()) || derivable(g, c->right()))
                return true;
            break;
        default:
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto& f = g[i];
            switch (f->kind()) {
            case Connective::One:
                if (derivable(splice(g, i, i + 1, {}), c))
                    return true;
                break;
            case Connective::Prod:
                if (derivable(splice(g, i, i + 1, {f->left(), f->right()}), c))
                    return true;
                break;
            case Connective::Meet:
                if (derivable(splice(g, i, i + 1, {f->left()}), c) || derivable(splice(g, i, i + 1, {f->right()}), c))
                    return true;
                break;
            case Connective::Join:
                if (derivable(splice(g, i, i + 1, {f->left()}), c) && derivable(splice(g, i, i + 1, {f->right()}), c))
                    return true;
                break;
            case Connective::LDiv:
                // Π, A\B with Π = g[j..i).
                for (std::size_t j = 0; j <= i; ++j)
                    if (nonempty_ok(i - j) && derivable(slice(g, j, i), f->den()) &&
                        derivable(splice(g, j, i + 1, {f->num()}), c))
                        return true;
                break;
            case Connective::RDiv:
                for (std::size_t j = i + 1; j <= n; ++j)
                    if (nonempty_ok(j - i - 1) && derivable(slice(g, i + 1, j), f->den()) &&
                        derivable(splice(g, i, j, {f->num()}), c))
                        return true;
                break;
            default:
                break;
            }
        }
        return false;
    }
};

}  // namespace

TEST_SUITE("prover")
{
    TEST_CASE("regression verdicts")
    {
        CHECK(verdict("np, (np\\s)/np, np => s", Mode::Restricted) == Verdict::Derivable);
        CHECK(verdict("np/n, n, (n\\n)/(s/np), np, (np\\s)/np => np", Mode::Restricted) == Verdict::Derivable);
        // As printed in the source text; the type counts do not match the goal.
        CHECK(verdict("n/np, n, (n\\n)/(s/np), np, (np\\s)/np => s", Mode::Restricted) == Verdict::NotDerivable);
        CHECK(verdict("(p\\p)\\q => q", Mode::Unrestricted) == Verdict::Derivable);
        CHECK(verdict("(p\\p)\\q => q", Mode::Restricted) == Verdict::NotDerivable);
        for (const auto mode : {Mode::Restricted, Mode::Unrestricted}) {
            CHECK(verdict("(p|q)&r => (p&r)|(q&r)", mode) == Verdict::NotDerivable);
            CHECK(verdict("x => top", mode) == Verdict::Derivable);
            CHECK(verdict("bot => x", mode) == Verdict::Derivable);
            CHECK(verdict("p, bot, q => r", mode) == Verdict::Derivable);
        }
        CHECK(verdict("=> one", Mode::Unrestricted) == Verdict::Derivable);
        CHECK(verdict("=> p\\p", Mode::Unrestricted) == Verdict::Derivable);
        CHECK(verdict("=> p^*", Mode::Unrestricted) == Verdict::Derivable);
        CHECK(verdict("=> p", Mode::Unrestricted) == Verdict::NotDerivable);
    }

    TEST_CASE("iteration")
    {
        CHECK(verdict("p => p^+", Mode::Restricted) == Verdict::Derivable);
        CHECK(verdict("p, p, p => p^+", Mode::Restricted) == Verdict::Derivable);
        CHECK(verdict("p^+ => p", Mode::Restricted) == Verdict::NotDerivable);
        CHECK(verdict("p^+ => q", Mode::Restricted) == Verdict::NotDerivable);
        CHECK(verdict("p^+ => p^+", Mode::Restricted) == Verdict::Derivable);
        CHECK(verdict("p^+ . p^+ => p^+", Mode::Restricted) == Verdict::UnknownBounded);
        CHECK(verdict("p^* => one | p^+", Mode::Unrestricted) == Verdict::UnknownBounded);
        CHECK(verdict("p^* => p", Mode::Unrestricted) == Verdict::NotDerivable);
    }

    TEST_CASE("proof witness concludes the goal")
    {
        ProverOptions opt;
        const auto goal = parse_sequent("np, (np\\s)/np, np => s", Mode::Restricted);
        const auto r = prove(goal, opt);
        REQUIRE(r.witness);
        CHECK(r.witness->conclusion == goal);
        const auto text = render_proof(*r.witness);
        CHECK(text.find("/L") != std::string::npos);
    }

    TEST_CASE("hypotheses never yield NotDerivable")
    {
        ProverOptions opt;
        opt.hyps = parse_hypotheses("p => p . p", Mode::Restricted);
        CHECK(prove(parse_sequent("p => p . p . p", Mode::Restricted), opt).verdict == Verdict::Derivable);
        const auto r = prove(parse_sequent("p => q", Mode::Restricted), opt);
        CHECK(r.verdict == Verdict::UnknownBounded);
        CHECK(r.cut_limit_reached);
        opt.hyps = parse_hypotheses("p => q\nq => r", Mode::Restricted);
        CHECK(prove(parse_sequent("p => r", Mode::Restricted), opt).verdict == Verdict::Derivable);
        CHECK(prove(parse_sequent("p . p => r . q", Mode::Restricted), opt).verdict == Verdict::Derivable);
    }

    TEST_CASE("agrees with a naive cut-free prover")
    {
        std::mt19937_64 rng(2024);
        for (const auto mode : {Mode::Restricted, Mode::Unrestricted}) {
            auto sig = signature_for_mode(mode, false);
            NaiveProver naive(mode);
            int derivable = 0;
            for (int i = 0; i < 600; ++i) {
                const auto s = random_sequent(rng, {"p", "q"}, 3, 3, sig);
                ProverOptions opt;
                opt.mode = mode;
                const auto v = prove(s, opt).verdict;
                REQUIRE(v != Verdict::UnknownBounded);
                const bool expected = naive.derivable(s.antecedent, s.succedent);
                CHECK_MESSAGE((v == Verdict::Derivable) == expected, print_sequent(s));
                derivable += expected;
            }
            CHECK(derivable > 30);
        }
    }

    TEST_CASE("derivable sequents hold in every small algebra")
    {
        std::mt19937_64 rng(99);
        const auto restricted = enumerate_algebras(3, AlgebraKind::OmegaPAL);
        const auto unrestricted = enumerate_algebras(3, AlgebraKind::OmegaAL);
        for (const auto mode : {Mode::Restricted, Mode::Unrestricted}) {
            const auto& algs = mode == Mode::Restricted ? restricted : unrestricted;
            const auto sig = signature_for_mode(mode, true);
            int theorems = 0;
            for (int i = 0; i < 800 && theorems < 60; ++i) {
                const auto s = random_sequent(rng, {"p", "q"}, 3, 3, sig);
                ProverOptions opt;
                opt.mode = mode;
                if (prove(s, opt).verdict != Verdict::Derivable)
                    continue;
                ++theorems;
                for (const auto& alg : algs)
                    for (std::size_t a = 0; a < alg.size(); ++a)
                        for (std::size_t b = 0; b < alg.size(); ++b)
                            CHECK_MESSAGE(evaluate_sequent(alg, {{"p", a}, {"q", b}}, s), print_sequent(s));
            }
            CHECK(theorems >= 40);
        }
    }

    TEST_CASE("parsing a sentence with a lexicon")
    {
        const auto lex = parse_lexicon("the\tnp/n\ngirl\tn\nwhom\t(n\\n)/(s/np)\nJohn\tnp\nloves\t(np\\s)/np\n"
                                       "loves\tnp\\s\n",
                                       Mode::Restricted);
        const auto np = parse_formula("np", Mode::Restricted);
        const auto s = parse_formula("s", Mode::Restricted);
        CHECK(parse_sentence(lex, {"the", "girl", "whom", "John", "loves"}, np, Mode::Restricted).accepted);
        CHECK(parse_sentence(lex, {"John", "loves"}, s, Mode::Restricted).accepted);
        CHECK_FALSE(parse_sentence(lex, {"loves", "John"}, s, Mode::Restricted).accepted);
        CHECK_THROWS(parse_sentence(lex, {"John", "sleeps"}, s, Mode::Restricted));
    }
}
