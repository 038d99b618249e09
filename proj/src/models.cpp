#include "lambek/models.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <random>
#include <set>
#include <unordered_set>

#include "lambek/embedding.hpp"

namespace lambek {

SclModel::SclModel(std::shared_ptr<const SclAlgebra> algebra, std::map<std::string, Concept> assignment, Mode mode,
                   std::optional<Concept> floor)
    : algebra_(std::move(algebra)), assignment_(std::move(assignment)), mode_(mode), floor_(std::move(floor))
{
    if (mode_ == Mode::Unrestricted && algebra_->mode() != WordMode::Epsilon)
        throw ModelError("unrestricted models need an SCL over words with ε");
    if (floor_ && floor_->algebra_id() != algebra_->id())
        throw MixedAlgebraError();
    for (const auto& [var, c] : assignment_) {
        if (c.algebra_id() != algebra_->id())
            throw MixedAlgebraError();
        if (floor_ && !floor_->subset_of(c))
            throw ModelError("variable '" + var + "' is interpreted below the cone floor");
    }
}

const Concept& SclModel::bottom() const
{
    return floor_ ? *floor_ : algebra_->bot_closure();
}

Concept eval_formula(const SclModel& model, const Formula& f)
{
    const auto& alg = model.algebra();
    switch (f.kind()) {
    case Connective::Var: {
        auto it = model.assignment().find(f.name());
        if (it == model.assignment().end())
            throw ModelError("variable '" + f.name() + "' is not assigned");
        return it->second;
    }
    case Connective::Top: return alg.top();
    case Connective::Bot: return model.bottom();
    case Connective::One:
        if (model.mode() == Mode::Restricted || alg.mode() != WordMode::Epsilon)
            throw ModelError("the unit is not available in restricted mode");
        return alg.unit();
    case Connective::Prod: return alg.prod(eval_formula(model, *f.left()), eval_formula(model, *f.right()));
    case Connective::LDiv: return alg.ldiv(eval_formula(model, *f.den()), eval_formula(model, *f.num()));
    case Connective::RDiv: return alg.rdiv(eval_formula(model, *f.num()), eval_formula(model, *f.den()));
    case Connective::Meet: return alg.meet(eval_formula(model, *f.left()), eval_formula(model, *f.right()));
    case Connective::Join: return alg.join(eval_formula(model, *f.left()), eval_formula(model, *f.right()));
    case Connective::Plus: return alg.plus_iter(eval_formula(model, *f.body()));
    case Connective::Star:
        if (model.mode() == Mode::Restricted || alg.mode() != WordMode::Epsilon)
            throw ModelError("Kleene star is not available in restricted mode");
        return alg.star_iter(eval_formula(model, *f.body()));
    }
    throw ModelError("unknown connective");
}

bool eval_sequent(const SclModel& model, const Sequent& s)
{
    const auto rhs = eval_formula(model, *s.succedent);
    const auto& alg = model.algebra();
    if (s.antecedent.empty()) {
        const auto id = alg.monoid().identity();
        if (!id)
            throw ModelError("empty antecedents need an SCL over words with ε");
        return rhs.contains(*id);
    }
    auto acc = eval_formula(model, *s.antecedent.front());
    for (std::size_t i = 1; i < s.antecedent.size(); ++i)
        acc = alg.prod(acc, eval_formula(model, *s.antecedent[i]));
    return acc.subset_of(rhs);
}

// ---------------------------------------------------------------------------

std::vector<Dfa> enumerate_small_dfas(std::size_t max_states, std::size_t letters)
{
    std::vector<Symbol> alphabet;
    for (std::size_t i = 0; i < letters; ++i)
        alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<Dfa> out;
    for (std::size_t s = 1; s <= max_states; ++s) {
        const std::size_t cells = s * letters;
        std::vector<std::size_t> digits(cells, 0);
        while (true) {
            // Keep only tables whose states are numbered in BFS discovery order.
            std::vector<std::size_t> order{0};
            std::vector<bool> seen(s, false);
            seen[0] = true;
            for (std::size_t i = 0; i < order.size(); ++i)
                for (std::size_t a = 0; a < letters; ++a) {
                    const auto t = digits[order[i] * letters + a];
                    if (!seen[t]) {
                        seen[t] = true;
                        order.push_back(t);
                    }
                }
            bool canonical = order.size() == s;
            for (std::size_t i = 0; canonical && i < s; ++i)
                canonical = order[i] == i;
            if (canonical) {
                std::vector<std::vector<std::size_t>> delta(s, std::vector<std::size_t>(letters));
                for (std::size_t q = 0; q < s; ++q)
                    for (std::size_t a = 0; a < letters; ++a)
                        delta[q][a] = digits[q * letters + a];
                for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
                    std::vector<bool> acc(s);
                    for (std::size_t q = 0; q < s; ++q)
                        acc[q] = (mask >> q) & 1;
                    Dfa d(alphabet, s, 0, std::move(acc), delta);
                    if (d.minimized().state_count() == s)
                        out.push_back(std::move(d));
                }
            }
            std::size_t i = 0;
            while (i < cells && ++digits[i] == s)
                digits[i++] = 0;
            if (i == cells)
                break;
        }
    }
    return out;
}

std::vector<Concept> small_generated_concepts(const SclAlgebra& algebra)
{
    const std::size_t n = algebra.behavior_count();
    std::unordered_set<BehaviorSet> seen;
    std::vector<Concept> out;
    auto add = [&](const BehaviorSet& m) {
        auto c = algebra.closure(m);
        if (seen.insert(c.behaviors()).second)
            out.push_back(std::move(c));
    };
    add(algebra.empty_set());
    for (std::size_t i = 0; i < n; ++i)
        add(algebra.singleton(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto m = algebra.singleton(i);
            m.set(j);
            add(m);
        }
    std::sort(out.begin(), out.end(), [](const Concept& a, const Concept& b) {
        return a.count() != b.count() ? a.count() < b.count() : a < b;
    });
    return out;
}

// ---------------------------------------------------------------------------

namespace {

bool refutes(const SclModel& model, const HypothesisSet& hyps, const Sequent& goal)
{
    for (const auto& h : hyps)
        if (!eval_sequent(model, h))
            return false;
    return !eval_sequent(model, goal);
}

bool uses_iteration(const Formula& f)
{
    if (f.is_iteration())
        return true;
    return (f.left() && uses_iteration(*f.left())) || (f.right() && uses_iteration(*f.right()));
}

/// Odometer over assignments of `vars` to indices below `range`.
bool next_assignment(std::vector<std::size_t>& digits, std::size_t range)
{
    for (auto& d : digits) {
        if (++d < range)
            return true;
        d = 0;
    }
    return false;
}

struct DfaOutcome {
    std::size_t checked = 0;
    std::optional<SclModel> model;
};

DfaOutcome search_dfa(const Dfa& dfa, std::uint64_t seed, const HypothesisSet& hyps, const Sequent& goal, Mode mode,
                      const std::vector<std::string>& vars, std::size_t sample_limit)
{
    DfaOutcome out;
    const auto wmode = mode == Mode::Restricted ? WordMode::Positive : WordMode::Epsilon;
    auto algebra = SclAlgebra::create(dfa, wmode);
    const auto concepts = small_generated_concepts(*algebra);

    // Standard ⊥ first, then each generated local zero as a cone floor.
    std::vector<std::optional<Concept>> floors{std::nullopt};
    for (const auto& c : concepts) {
        if (c == algebra->bot_closure() || !algebra->is_local_zero(c))
            continue;
        if (wmode == WordMode::Epsilon && !c.subset_of(algebra->unit()))
            continue;
        floors.emplace_back(c);
    }

    std::mt19937_64 rng(seed);
    for (const auto& floor : floors) {
        std::vector<const Concept*> range;
        for (const auto& c : concepts)
            if (!floor || floor->subset_of(c))
                range.push_back(&c);
        if (range.empty())
            continue;
        auto try_digits = [&](const std::vector<std::size_t>& digits) -> bool {
            std::map<std::string, Concept> assignment;
            for (std::size_t i = 0; i < vars.size(); ++i)
                assignment.emplace(vars[i], *range[digits[i]]);
            SclModel model(algebra, std::move(assignment), mode, floor);
            ++out.checked;
            if (refutes(model, hyps, goal)) {
                out.model = std::move(model);
                return true;
            }
            return false;
        };

        double total = 1;
        for (std::size_t i = 0; i < vars.size(); ++i)
            total *= static_cast<double>(range.size());
        std::vector<std::size_t> digits(vars.size(), 0);
        if (total <= static_cast<double>(sample_limit)) {
            do {
                if (try_digits(digits))
                    return out;
            } while (next_assignment(digits, range.size()));
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, range.size() - 1);
            for (std::size_t s = 0; s < sample_limit; ++s) {
                for (auto& d : digits)
                    d = pick(rng);
                if (try_digits(digits))
                    return out;
            }
        }
    }
    return out;
}

}  // namespace

CountermodelReport countermodel_search(const HypothesisSet& hyps, const Sequent& goal, Mode mode,
                                       const CountermodelBudget& budget)
{
    if (budget.max_dfa_states == 0 && budget.max_algebra_size == 0)
        throw std::invalid_argument("countermodel budget must be positive");
    for (const auto& h : hyps)
        check_mode(h, mode);
    check_mode(goal, mode);

    CountermodelReport report;
    const auto vars = variables_of(hyps, goal);

    // Strategy A: finite algebras, realized through the embedding.
    bool iteration = false;
    for (const auto& h : hyps) {
        for (const auto& f : h.antecedent)
            iteration = iteration || uses_iteration(*f);
        iteration = iteration || uses_iteration(*h.succedent);
    }
    for (const auto& f : goal.antecedent)
        iteration = iteration || uses_iteration(*f);
    iteration = iteration || uses_iteration(*goal.succedent);

    const AlgebraKind kind = mode == Mode::Restricted ? (iteration ? AlgebraKind::OmegaPAL : AlgebraKind::SRBL)
                                                      : (iteration ? AlgebraKind::OmegaAL : AlgebraKind::RBL);
    const EmbeddingTemplate tmpl = mode == Mode::Restricted ? EmbeddingTemplate::Psc : EmbeddingTemplate::Scl;

    if (budget.max_algebra_size > 0) {
        for_each_algebra(std::min<std::size_t>(budget.max_algebra_size, 5), kind, [&](const FiniteResiduatedAlgebra& alg) {
            std::optional<EmbeddingConstruction> con;
            std::vector<std::size_t> digits(vars.size(), 0);
            do {
                AlgebraInterpretation interp;
                for (std::size_t i = 0; i < vars.size(); ++i)
                    interp[vars[i]] = digits[i];
                ++report.checked_count;
                bool candidate = true;
                try {
                    for (const auto& h : hyps)
                        if (!evaluate_sequent(alg, interp, h)) {
                            candidate = false;
                            break;
                        }
                    candidate = candidate && !evaluate_sequent(alg, interp, goal);
                } catch (const EvaluationError&) {
                    candidate = false;
                }
                if (!candidate)
                    continue;
                if (!con)
                    con = build_embedding(alg, tmpl);
                auto model = con->model_for(interp);
                if (!refutes(model, hyps, goal))
                    continue;
                report.found = true;
                report.model = std::move(model);
                report.source = "algebra-embedding";
                report.seed_algebra = alg;
                report.seed_interpretation = interp;
                report.template_name = to_string(tmpl);
                return false;
            } while (next_assignment(digits, alg.size()));
            return true;
        });
        if (report.found)
            return report;
    }

    // Strategy B: small DFAs, variables over closures of at most two classes.
    std::vector<Dfa> dfas;
    for (std::size_t k = 1; k <= budget.max_letters; ++k) {
        auto batch = enumerate_small_dfas(budget.max_dfa_states, k);
        for (auto& d : batch)
            dfas.push_back(std::move(d));
    }
    const std::size_t jobs = std::max<std::size_t>(1, budget.jobs);
    for (std::size_t base = 0; base < dfas.size(); base += jobs) {
        const std::size_t end = std::min(dfas.size(), base + jobs);
        std::vector<std::future<DfaOutcome>> futures;
        for (std::size_t i = base; i < end; ++i)
            futures.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, search_dfa,
                                         std::cref(dfas[i]), budget.seed + i, std::cref(hyps), std::cref(goal), mode,
                                         std::cref(vars), budget.sample_limit));
        std::vector<DfaOutcome> outcomes;
        for (auto& f : futures)
            outcomes.push_back(f.get());
        for (auto& o : outcomes) {
            report.checked_count += o.checked;
            if (o.model) {
                report.found = true;
                report.model = std::move(o.model);
                report.source = "dfa";
                return report;
            }
        }
    }
    return report;
}

}  // namespace lambek
