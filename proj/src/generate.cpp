#include "lambek/generate.hpp"

#include <algorithm>

namespace lambek {

SignatureOptions signature_for_mode(Mode mode, bool iteration)
{
    SignatureOptions sig;
    sig.plus = iteration;
    if (mode == Mode::Unrestricted) {
        sig.unit = true;
        sig.star = iteration;
        sig.empty_antecedent = true;
    }
    return sig;
}

FormulaPtr random_formula(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t depth,
                          const SignatureOptions& sig)
{
    std::vector<Connective> leaves{Connective::Var, Connective::Var, Connective::Var};
    if (sig.top)
        leaves.push_back(Connective::Top);
    if (sig.bot)
        leaves.push_back(Connective::Bot);
    if (sig.unit)
        leaves.push_back(Connective::One);

    std::vector<Connective> nodes{Connective::Prod, Connective::LDiv, Connective::RDiv, Connective::Meet,
                                  Connective::Join};
    if (sig.plus)
        nodes.push_back(Connective::Plus);
    if (sig.star)
        nodes.push_back(Connective::Star);

    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    const bool leaf = depth == 0 || pick(3) == 0;
    if (leaf) {
        switch (leaves[pick(leaves.size())]) {
        case Connective::Top: return Formula::top();
        case Connective::Bot: return Formula::bot();
        case Connective::One: return Formula::one();
        default: return Formula::var(vars[pick(vars.size())]);
        }
    }
    const auto c = nodes[pick(nodes.size())];
    if (c == Connective::Plus)
        return Formula::plus(random_formula(rng, vars, depth - 1, sig));
    if (c == Connective::Star)
        return Formula::star(random_formula(rng, vars, depth - 1, sig));
    auto a = random_formula(rng, vars, depth - 1, sig);
    auto b = random_formula(rng, vars, depth - 1, sig);
    switch (c) {
    case Connective::Prod: return Formula::prod(std::move(a), std::move(b));
    case Connective::LDiv: return Formula::ldiv(std::move(a), std::move(b));
    case Connective::RDiv: return Formula::rdiv(std::move(a), std::move(b));
    case Connective::Meet: return Formula::meet(std::move(a), std::move(b));
    default: return Formula::join(std::move(a), std::move(b));
    }
}

Sequent random_sequent(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t depth,
                       std::size_t max_antecedent, const SignatureOptions& sig)
{
    const std::size_t lo = sig.empty_antecedent ? 0 : 1;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(lo, std::max(lo, max_antecedent))(rng);
    Sequent s;
    for (std::size_t i = 0; i < n; ++i)
        s.antecedent.push_back(random_formula(rng, vars, depth, sig));
    s.succedent = random_formula(rng, vars, depth, sig);
    return s;
}

}  // namespace lambek
