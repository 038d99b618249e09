#include "lambek/prover.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace lambek {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Derivable:
        return "Derivable";
    case Verdict::NotDerivable:
        return "NotDerivable";
    case Verdict::UnknownBounded:
        return "UnknownBounded";
    }
    return "?";
}

namespace {

enum class Status { Proved, Failed, Unknown };

struct Outcome {
    Status status = Status::Failed;
    ProofPtr proof;
};

using Seq = std::vector<FormulaPtr>;

Seq slice(const Seq& s, std::size_t from, std::size_t to)
{
    return Seq(s.begin() + static_cast<std::ptrdiff_t>(from), s.begin() + static_cast<std::ptrdiff_t>(to));
}

// s[0..at) ++ middle ++ s[after..)
Seq splice(const Seq& s, std::size_t at, std::size_t after, const Seq& middle)
{
    Seq out = slice(s, 0, at);
    out.insert(out.end(), middle.begin(), middle.end());
    out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(after), s.end());
    return out;
}

class Search {
public:
    explicit Search(const ProverOptions& options) : opt_(options), hyp_mode_(!options.hyps.empty())
    {
        if (hyp_mode_) {
            for (const auto& h : opt_.hyps) {
                for (const auto& a : h.antecedent)
                    collect_subformulas(a, cut_candidates_);
                collect_subformulas(h.succedent, cut_candidates_);
            }
        }
    }

    void add_goal_subformulas(const Sequent& goal)
    {
        if (!hyp_mode_)
            return;
        for (const auto& a : goal.antecedent)
            collect_subformulas(a, cut_candidates_);
        collect_subformulas(goal.succedent, cut_candidates_);
    }

    Outcome solve(const Sequent& s, std::size_t budget)
    {
        std::string key = print_sequent(s);
        if (hyp_mode_)
            key += "#" + std::to_string(budget);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        if (!in_progress_.insert(key).second)
            return {Status::Failed, nullptr};
        if (++steps_ > opt_.step_limit) {
            in_progress_.erase(key);
            step_limit_reached = true;
            return {Status::Unknown, nullptr};
        }
        Outcome out = expand(s, budget);
        in_progress_.erase(key);
        memo_.emplace(std::move(key), out);
        return out;
    }

    bool omega_truncated = false;
    bool cut_limit_reached = false;
    bool step_limit_reached = false;
    std::size_t bound_used = 0;
    /// Longest antecedent an ω-premise may have.
    std::size_t omega_length_cap = 0;
    std::size_t cut_depth_used = 0;

private:
    const ProverOptions& opt_;
    bool hyp_mode_;
    std::vector<FormulaPtr> cut_candidates_;
    std::unordered_map<std::string, Outcome> memo_;
    std::unordered_set<std::string> in_progress_;
    std::size_t steps_ = 0;

    bool restricted() const { return opt_.mode == Mode::Restricted; }

    static Outcome proved(std::string rule, const Sequent& s, std::vector<ProofPtr> premises = {})
    {
        auto node = std::make_shared<ProofNode>();
        node->rule = std::move(rule);
        node->conclusion = s;
        node->premises = std::move(premises);
        return {Status::Proved, node};
    }

    // Conjunction of premises, evaluated left to right with early exit.
    Outcome all_of(const std::string& rule, const Sequent& s, const std::vector<Sequent>& premises,
                   std::size_t budget)
    {
        std::vector<ProofPtr> proofs;
        bool unknown = false;
        for (const auto& p : premises) {
            Outcome o = solve(p, budget);
            if (o.status == Status::Failed)
                return {Status::Failed, nullptr};
            if (o.status == Status::Unknown)
                unknown = true;
            else
                proofs.push_back(o.proof);
        }
        if (unknown)
            return {Status::Unknown, nullptr};
        return proved(rule, s, std::move(proofs));
    }

    std::optional<Outcome> axiom(const Sequent& s) const
    {
        const auto& g = s.antecedent;
        const auto& c = s.succedent;
        if (g.size() == 1 && same_formula(g[0], c))
            return proved("Id", s);
        for (const auto& a : g)
            if (a->kind() == Connective::Bot)
                return proved("botL", s);
        if (c->kind() == Connective::Top && (!g.empty() || !restricted()))
            return proved("topR", s);
        if (g.empty() && c->kind() == Connective::One)
            return proved("1R", s);
        if (g.empty() && c->kind() == Connective::Star)
            return proved("*R", s);
        for (const auto& h : opt_.hyps)
            if (h == s)
                return proved("Hyp", s);
        return std::nullopt;
    }

    // Invertible rules that may be applied eagerly (hypothesis-free search).
    std::optional<Outcome> invertible(const Sequent& s, std::size_t budget)
    {
        const auto& g = s.antecedent;
        const auto& c = s.succedent;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto& f = g[i];
            if (f->kind() == Connective::Prod)
                return all_of(".L", s, {Sequent{splice(g, i, i + 1, {f->left(), f->right()}), c}}, budget);
            if (f->kind() == Connective::One)
                return all_of("1L", s, {Sequent{splice(g, i, i + 1, {}), c}}, budget);
        }
        if (c->kind() == Connective::LDiv && (!g.empty() || !restricted())) {
            Seq prem = {c->den()};
            prem.insert(prem.end(), g.begin(), g.end());
            return all_of("\\R", s, {Sequent{prem, c->num()}}, budget);
        }
        if (c->kind() == Connective::RDiv && (!g.empty() || !restricted())) {
            Seq prem = g;
            prem.push_back(c->den());
            return all_of("/R", s, {Sequent{prem, c->num()}}, budget);
        }
        if (c->kind() == Connective::Meet)
            return all_of("&R", s, {Sequent{g, c->left()}, Sequent{g, c->right()}}, budget);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto& f = g[i];
            if (f->kind() == Connective::Join)
                return all_of("|L", s,
                              {Sequent{splice(g, i, i + 1, {f->left()}), c},
                               Sequent{splice(g, i, i + 1, {f->right()}), c}},
                              budget);
        }
        return std::nullopt;
    }

    // Enumerates splits of g[from..) into non-empty blocks, each proving `a`.
    bool blocks(const Seq& g, std::size_t from, const FormulaPtr& a, std::size_t budget,
                std::vector<ProofPtr>& proofs, bool& unknown)
    {
        if (from == g.size())
            return true;
        for (std::size_t to = from + 1; to <= g.size(); ++to) {
            Outcome o = solve(Sequent{slice(g, from, to), a}, budget);
            if (o.status == Status::Failed)
                continue;
            if (o.status == Status::Unknown) {
                unknown = true;
                continue;
            }
            proofs.push_back(o.proof);
            if (blocks(g, to, a, budget, proofs, unknown))
                return true;
            proofs.pop_back();
        }
        return false;
    }

    // ω-rules are invertible: one failed finite premise refutes the sequent.
    bool omega_refutes(const Sequent& s, std::size_t budget)
    {
        const auto& g = s.antecedent;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto& f = g[i];
            if (!f->is_iteration())
                continue;
            omega_truncated = true;
            const std::size_t first = f->kind() == Connective::Plus ? 1 : 0;
            for (std::size_t n = first; n <= opt_.omega_bound; ++n) {
                Sequent premise{splice(g, i, i + 1, Seq(n, f->body())), s.succedent};
                if (premise.antecedent.size() > omega_length_cap)
                    break;
                bound_used = std::max(bound_used, n);
                if (premise.antecedent.empty() && restricted())
                    continue;
                if (solve(premise, budget).status == Status::Failed)
                    return true;
            }
        }
        return false;
    }

    Outcome expand(const Sequent& s, std::size_t budget)
    {
        if (auto ax = axiom(s))
            return *ax;
        if (!hyp_mode_) {
            if (auto inv = invertible(s, budget))
                return *inv;
            if (omega_refutes(s, budget))
                return {Status::Failed, nullptr};
        }

        const auto& g = s.antecedent;
        const auto& c = s.succedent;
        bool unknown = false;
        auto consider = [&](const Outcome& o) {
            if (o.status == Status::Unknown)
                unknown = true;
            return o.status == Status::Proved;
        };

        // Remaining left rules.
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto& f = g[i];
            switch (f->kind()) {
            case Connective::Prod:
                if (auto o = all_of(".L", s, {Sequent{splice(g, i, i + 1, {f->left(), f->right()}), c}}, budget);
                    consider(o))
                    return o;
                break;
            case Connective::One:
                if (auto o = all_of("1L", s, {Sequent{splice(g, i, i + 1, {}), c}}, budget); consider(o))
                    return o;
                break;
            case Connective::Join:
                if (auto o = all_of("|L", s,
                                    {Sequent{splice(g, i, i + 1, {f->left()}), c},
                                     Sequent{splice(g, i, i + 1, {f->right()}), c}},
                                    budget);
                    consider(o))
                    return o;
                break;
            case Connective::Meet:
                for (const auto& part : {f->left(), f->right()})
                    if (auto o = all_of("&L", s, {Sequent{splice(g, i, i + 1, {part}), c}}, budget); consider(o))
                        return o;
                break;
            case Connective::LDiv:
                // Γ, Π, A\B, Δ => C  from  Π => A  and  Γ, B, Δ => C
                for (std::size_t j = i + 1; j-- > 0;) {
                    if (j == i && restricted())
                        continue;
                    Sequent left{slice(g, j, i), f->den()};
                    Sequent right{splice(g, j, i + 1, {f->num()}), c};
                    if (auto o = all_of("\\L", s, {left, right}, budget); consider(o))
                        return o;
                }
                break;
            case Connective::RDiv:
                // Γ, B/A, Π, Δ => C  from  Π => A  and  Γ, B, Δ => C
                for (std::size_t k = i + 1; k <= g.size(); ++k) {
                    if (k == i + 1 && restricted())
                        continue;
                    Sequent left{slice(g, i + 1, k), f->den()};
                    Sequent right{splice(g, i, k, {f->num()}), c};
                    if (auto o = all_of("/L", s, {left, right}, budget); consider(o))
                        return o;
                }
                break;
            default:
                break;
            }
        }

        // Remaining right rules.
        switch (c->kind()) {
        case Connective::LDiv:
            if (hyp_mode_ && (!g.empty() || !restricted())) {
                Seq prem = {c->den()};
                prem.insert(prem.end(), g.begin(), g.end());
                if (auto o = all_of("\\R", s, {Sequent{prem, c->num()}}, budget); consider(o))
                    return o;
            }
            break;
        case Connective::RDiv:
            if (hyp_mode_ && (!g.empty() || !restricted())) {
                Seq prem = g;
                prem.push_back(c->den());
                if (auto o = all_of("/R", s, {Sequent{prem, c->num()}}, budget); consider(o))
                    return o;
            }
            break;
        case Connective::Meet:
            if (hyp_mode_)
                if (auto o = all_of("&R", s, {Sequent{g, c->left()}, Sequent{g, c->right()}}, budget); consider(o))
                    return o;
            break;
        case Connective::Join:
            for (const auto& part : {c->left(), c->right()})
                if (auto o = all_of("|R", s, {Sequent{g, part}}, budget); consider(o))
                    return o;
            break;
        case Connective::Prod: {
            const std::size_t lo = restricted() ? 1 : 0;
            const std::size_t hi = restricted() ? g.size() - 1 : g.size();
            for (std::size_t k = lo; k <= hi && k <= g.size(); ++k) {
                if (auto o = all_of(".R", s,
                                    {Sequent{slice(g, 0, k), c->left()}, Sequent{slice(g, k, g.size()), c->right()}},
                                    budget);
                    consider(o))
                    return o;
            }
            break;
        }
        case Connective::Plus:
        case Connective::Star: {
            const std::string rule = c->kind() == Connective::Plus ? "+R" : "*R";
            if (g.empty()) {
                // Only reachable for ^+ without the restriction: every block is empty.
                if (auto o = all_of(rule, s, {Sequent{{}, c->body()}}, budget); consider(o))
                    return o;
            } else {
                std::vector<ProofPtr> proofs;
                bool blocks_unknown = false;
                if (blocks(g, 0, c->body(), budget, proofs, blocks_unknown))
                    return proved(rule, s, std::move(proofs));
                unknown = unknown || blocks_unknown;
            }
            break;
        }
        default:
            break;
        }

        if (hyp_mode_) {
            if (auto o = cut(s, budget); consider(o))
                return o;
        }

        // ω-rules give no positive certificate; their refutations were tried first.
        bool has_omega = false;
        for (const auto& f : g)
            has_omega = has_omega || f->is_iteration();
        if (has_omega || unknown)
            return {Status::Unknown, nullptr};
        return {Status::Failed, nullptr};
    }

    Outcome cut(const Sequent& s, std::size_t budget)
    {
        if (budget == 0) {
            cut_limit_reached = true;
            return {Status::Unknown, nullptr};
        }
        cut_depth_used = std::max(cut_depth_used, opt_.cut_depth - budget + 1);
        const auto& g = s.antecedent;
        bool unknown = false;
        for (std::size_t j = 0; j <= g.size(); ++j) {
            for (std::size_t k = j; k <= g.size(); ++k) {
                if (k == j && restricted())
                    continue;
                for (const auto& a : cut_candidates_) {
                    if (k == j + 1 && same_formula(g[j], a))
                        continue;
                    if (j == 0 && k == g.size() && same_formula(a, s.succedent))
                        continue;
                    Sequent left{slice(g, j, k), a};
                    Sequent right{splice(g, j, k, {a}), s.succedent};
                    if (restricted() && right.antecedent.empty())
                        continue;
                    Outcome o = all_of("Cut", s, {left, right}, budget - 1);
                    if (o.status == Status::Proved)
                        return o;
                    if (o.status == Status::Unknown)
                        unknown = true;
                }
            }
        }
        return {unknown ? Status::Unknown : Status::Failed, nullptr};
    }
};

}  // namespace

ProofResult prove(const Sequent& goal, const ProverOptions& options)
{
    if (options.omega_bound == 0)
        throw std::invalid_argument("omega_bound must be at least 1");
    check_mode(goal, options.mode);
    for (const auto& h : options.hyps)
        check_mode(h, options.mode);

    Search search(options);
    search.add_goal_subformulas(goal);
    search.omega_length_cap = goal.antecedent.size() + options.omega_bound;
    const Outcome out = search.solve(goal, options.cut_depth);

    ProofResult r;
    r.bound_used = search.bound_used;
    r.cut_depth_used = search.cut_depth_used;
    r.omega_truncated = search.omega_truncated;
    r.cut_limit_reached = search.cut_limit_reached;
    r.step_limit_reached = search.step_limit_reached;
    switch (out.status) {
    case Status::Proved:
        r.verdict = Verdict::Derivable;
        r.witness = out.proof;
        break;
    case Status::Failed:
        r.verdict = options.hyps.empty() ? Verdict::NotDerivable : Verdict::UnknownBounded;
        break;
    case Status::Unknown:
        r.verdict = Verdict::UnknownBounded;
        break;
    }
    return r;
}

namespace {

void render_into(const ProofNode& node, std::size_t depth, std::string& out)
{
    out.append(depth * 2, ' ');
    out += print_sequent(node.conclusion);
    out += "   [" + node.rule + "]\n";
    for (const auto& p : node.premises)
        render_into(*p, depth + 1, out);
}

}  // namespace

std::string render_proof(const ProofNode& node)
{
    std::string out;
    render_into(node, 0, out);
    return out;
}

Lexicon parse_lexicon(const std::string& text, Mode mode)
{
    Lexicon lex;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("lexicon line " + std::to_string(line_no) + ": expected word<TAB>formula");
        std::string word = line.substr(0, tab);
        word.erase(word.find_last_not_of(' ') + 1);
        word.erase(0, word.find_first_not_of(' '));
        lex[word].push_back(parse_formula(line.substr(tab + 1), mode));
    }
    return lex;
}

Lexicon read_lexicon(const std::string& path, Mode mode)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open lexicon file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_lexicon(buf.str(), mode);
}

SentenceParse parse_sentence(const Lexicon& lexicon, const std::vector<std::string>& sentence,
                             const FormulaPtr& goal_type, Mode mode)
{
    if (sentence.empty() && mode == Mode::Restricted)
        throw ModeError("empty sentence is not allowed in restricted mode");
    std::vector<std::string> unknown;
    for (const auto& w : sentence)
        if (!lexicon.contains(w) && std::find(unknown.begin(), unknown.end(), w) == unknown.end())
            unknown.push_back(w);
    if (!unknown.empty()) {
        std::string msg = "unknown word(s):";
        for (const auto& w : unknown)
            msg += " " + w;
        throw std::invalid_argument(msg);
    }

    SentenceParse result;
    ProverOptions opt;
    opt.mode = mode;
    std::vector<FormulaPtr> choice(sentence.size());
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == sentence.size()) {
            ProofResult r = prove(Sequent{choice, goal_type}, opt);
            if (r.verdict == Verdict::Derivable)
                result.assignments.push_back({choice, r.witness});
            return;
        }
        for (const auto& t : lexicon.at(sentence[i])) {
            choice[i] = t;
            go(i + 1);
        }
    };
    go(0);
    result.accepted = !result.assignments.empty();
    return result;
}

}  // namespace lambek
