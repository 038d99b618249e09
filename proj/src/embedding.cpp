#include "lambek/embedding.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace lambek {

std::string to_string(EmbeddingTemplate t)
{
    switch (t) {
    case EmbeddingTemplate::Psc: return "psc";
    case EmbeddingTemplate::Scl: return "scl";
    case EmbeddingTemplate::BotStd: return "botstd";
    }
    return "?";
}

EmbeddingTemplate parse_template(std::string_view text)
{
    if (text == "psc")
        return EmbeddingTemplate::Psc;
    if (text == "scl")
        return EmbeddingTemplate::Scl;
    if (text == "botstd")
        return EmbeddingTemplate::BotStd;
    throw std::invalid_argument("unknown template '" + std::string(text) + "' (expected psc, scl or botstd)");
}

WordMode word_mode_of(EmbeddingTemplate t)
{
    return t == EmbeddingTemplate::Psc ? WordMode::Positive : WordMode::Epsilon;
}

Mode sequent_mode_of(EmbeddingTemplate t)
{
    return t == EmbeddingTemplate::Psc ? Mode::Restricted : Mode::Unrestricted;
}

bool template_permits(EmbeddingTemplate t, AlgebraKind kind)
{
    // botstd uses the unit internally (ε^• = 1) but never exports it.
    return t == EmbeddingTemplate::Psc ? !has_unit(kind) : has_unit(kind);
}

std::optional<std::size_t> EmbeddingConstruction::bullet(std::span<const std::size_t> word) const
{
    const std::size_t n = algebra.size();
    std::optional<std::size_t> acc;
    for (auto s : word) {
        if (s >= n)
            continue;
        acc = acc ? algebra.prod[*acc][s] : s;
    }
    if (!acc)
        return algebra.unit;
    return acc;
}

namespace {

std::size_t underline_count(std::span<const std::size_t> word, std::size_t n)
{
    return static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [n](std::size_t s) { return s >= n; }));
}

}  // namespace

bool EmbeddingConstruction::in_language_direct(std::span<const std::size_t> word) const
{
    const std::size_t n = algebra.size();
    const auto& alg = algebra;
    switch (tmpl) {
    case EmbeddingTemplate::Psc: {
        const auto u = underline_count(word, n);
        if (u >= 2)
            return true;
        if (u != 1 || word.size() < 2 || word.back() < n)
            return false;
        return alg.le(*bullet(word.first(word.size() - 1)), word.back() - n);
    }
    case EmbeddingTemplate::Scl: {
        const auto u = underline_count(word, n);
        if (u >= 2)
            return true;
        if (u == 0)
            return false;
        const auto pos = static_cast<std::size_t>(
            std::find_if(word.begin(), word.end(), [n](std::size_t s) { return s >= n; }) - word.begin());
        const auto w = bullet(word.first(pos));
        const auto rest = bullet(word.subspan(pos + 1));
        return alg.le(*w, word[pos] - n) && alg.le(*rest, *alg.unit);
    }
    case EmbeddingTemplate::BotStd: {
        if (*bullet(word) == alg.bot)
            return true;
        if (word.empty() || word.back() < n)
            return false;
        return alg.le(*bullet(word.first(word.size() - 1)), word.back() - n);
    }
    }
    return false;
}

bool EmbeddingConstruction::in_h_direct(std::size_t element, std::span<const std::size_t> word) const
{
    const std::size_t n = algebra.size();
    switch (tmpl) {
    case EmbeddingTemplate::Psc:
        if (word.empty())
            return false;
        [[fallthrough]];
    case EmbeddingTemplate::Scl:
        if (underline_count(word, n) > 0)
            return true;
        return algebra.le(*bullet(word), element);
    case EmbeddingTemplate::BotStd: return algebra.le(*bullet(word), element);
    }
    return false;
}

SclModel EmbeddingConstruction::model_for(const AlgebraInterpretation& interp) const
{
    std::map<std::string, Concept> assignment;
    for (const auto& [var, elem] : interp) {
        if (elem >= h.size())
            throw ModelError("variable '" + var + "' is mapped outside the algebra");
        assignment.emplace(var, h[elem]);
    }
    return SclModel(scl, std::move(assignment), sequent_mode_of(tmpl), floor);
}

namespace {

/// States: start, B_v (non-empty barred prefix with product v), ACC (w b̲
/// just read, w^• ⪯ b), ONE (one underline, not accepting), TWO.
Dfa psc_dfa(const FiniteResiduatedAlgebra& alg, const std::vector<Symbol>& sigma)
{
    const std::size_t n = alg.size();
    const std::size_t start = 0;
    auto bstate = [](std::size_t v) { return 1 + v; };
    const std::size_t acc = n + 1;
    const std::size_t one = n + 2;
    const std::size_t two = n + 3;
    std::vector<std::vector<std::size_t>> delta(n + 4, std::vector<std::size_t>(2 * n));
    std::vector<bool> accepting(n + 4, false);
    accepting[acc] = true;
    accepting[two] = true;
    for (std::size_t a = 0; a < n; ++a) {
        delta[start][a] = bstate(a);
        delta[start][n + a] = one;
        for (std::size_t v = 0; v < n; ++v) {
            delta[bstate(v)][a] = bstate(alg.prod[v][a]);
            delta[bstate(v)][n + a] = alg.le(v, a) ? acc : one;
        }
        delta[acc][a] = one;
        delta[acc][n + a] = two;
        delta[one][a] = one;
        delta[one][n + a] = two;
        delta[two][a] = two;
        delta[two][n + a] = two;
    }
    return Dfa(sigma, n + 4, start, std::move(accepting), std::move(delta));
}

/// States: P_v (barred prefix, product v; start P_1), U_v (after w b̲ with
/// w^• ⪯ b, trailing product v), ONE, TWO.
Dfa scl_dfa(const FiniteResiduatedAlgebra& alg, const std::vector<Symbol>& sigma)
{
    const std::size_t n = alg.size();
    const std::size_t unit = *alg.unit;
    auto pstate = [](std::size_t v) { return v; };
    auto ustate = [n](std::size_t v) { return n + v; };
    const std::size_t one = 2 * n;
    const std::size_t two = 2 * n + 1;
    std::vector<std::vector<std::size_t>> delta(2 * n + 2, std::vector<std::size_t>(2 * n));
    std::vector<bool> accepting(2 * n + 2, false);
    accepting[two] = true;
    for (std::size_t v = 0; v < n; ++v)
        accepting[ustate(v)] = alg.le(v, unit);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t v = 0; v < n; ++v) {
            delta[pstate(v)][a] = pstate(alg.prod[v][a]);
            delta[pstate(v)][n + a] = alg.le(v, a) ? ustate(unit) : one;
            delta[ustate(v)][a] = ustate(alg.prod[v][a]);
            delta[ustate(v)][n + a] = two;
        }
        delta[one][a] = one;
        delta[one][n + a] = two;
        delta[two][a] = two;
        delta[two][n + a] = two;
    }
    return Dfa(sigma, 2 * n + 2, pstate(unit), std::move(accepting), std::move(delta));
}

/// States (v, flag): v = x^• ignoring underlines, flag = the last letter was
/// an underlined b with v ⪯ b.
Dfa botstd_dfa(const FiniteResiduatedAlgebra& alg, const std::vector<Symbol>& sigma)
{
    const std::size_t n = alg.size();
    auto state = [](std::size_t v, bool flag) { return 2 * v + (flag ? 1 : 0); };
    std::vector<std::vector<std::size_t>> delta(2 * n, std::vector<std::size_t>(2 * n));
    std::vector<bool> accepting(2 * n, false);
    for (std::size_t v = 0; v < n; ++v) {
        accepting[state(v, true)] = true;
        if (v == alg.bot)
            accepting[state(v, false)] = true;
        for (bool flag : {false, true})
            for (std::size_t a = 0; a < n; ++a) {
                delta[state(v, flag)][a] = state(alg.prod[v][a], false);
                delta[state(v, flag)][n + a] = state(v, alg.le(v, a));
            }
    }
    return Dfa(sigma, 2 * n, state(*alg.unit, false), std::move(accepting), std::move(delta));
}

}  // namespace

EmbeddingConstruction build_embedding(const FiniteResiduatedAlgebra& alg, EmbeddingTemplate tmpl)
{
    if (!template_permits(tmpl, alg.kind))
        throw TemplateMismatch("template " + to_string(tmpl) + " does not accept algebras of kind " +
                               to_string(alg.kind) +
                               (tmpl == EmbeddingTemplate::Psc ? " (needs a kind without unit)" : " (needs a unit)"));
    if (tmpl != EmbeddingTemplate::Psc && !alg.unit)
        throw TemplateMismatch("template " + to_string(tmpl) + " needs the unit element");

    EmbeddingConstruction con;
    con.algebra = alg;
    con.tmpl = tmpl;
    const std::size_t n = alg.size();
    for (std::size_t i = 0; i < n; ++i)
        con.sigma.push_back(alg.elements[i] + "^");
    for (std::size_t i = 0; i < n; ++i)
        con.sigma.push_back(alg.elements[i] + "_");

    switch (tmpl) {
    case EmbeddingTemplate::Psc: con.language = psc_dfa(alg, con.sigma); break;
    case EmbeddingTemplate::Scl: con.language = scl_dfa(alg, con.sigma); break;
    case EmbeddingTemplate::BotStd: con.language = botstd_dfa(alg, con.sigma); break;
    }
    con.scl = SclAlgebra::create(*con.language, word_mode_of(tmpl));

    // h(b) = {(ε, b̲)}^◁: the behaviors t with start·t·b̲ accepting.
    const auto& monoid = con.scl->monoid();
    const auto& mdfa = monoid.dfa();
    for (std::size_t b = 0; b < n; ++b) {
        BehaviorSet s = con.scl->empty_set();
        for (std::size_t t = 0; t < monoid.size(); ++t) {
            const std::size_t q = monoid.element(t).func[mdfa.start()];
            s[t] = mdfa.is_accepting(mdfa.next(q, con.underlined(b)));
        }
        con.h.push_back(con.scl->as_concept(s));
    }
    if (tmpl != EmbeddingTemplate::BotStd)
        con.floor = con.h[alg.bot];
    return con;
}

// ---------------------------------------------------------------------------

bool LemmaReport::all_passed() const
{
    return std::all_of(results.begin(), results.end(), [](const LemmaResult& r) { return r.passed; });
}

nlohmann::json LemmaReport::to_json() const
{
    auto arr = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json item;
        item["lemma"] = r.lemma;
        if (r.passed)
            item["status"] = "pass";
        else
            item["status"] = nlohmann::json{{"fail", r.witness}};
        arr.push_back(std::move(item));
    }
    return arr;
}

namespace {

class LemmaRecorder {
public:
    explicit LemmaRecorder(std::string name) { result_.lemma = std::move(name); }
    void fail(const std::string& witness)
    {
        if (result_.passed) {
            result_.passed = false;
            result_.witness = witness;
        }
    }
    bool failed() const { return !result_.passed; }
    LemmaResult take() { return std::move(result_); }

private:
    LemmaResult result_;
};

std::vector<Word> barred_words(std::size_t n, std::size_t min_len, std::size_t max_len)
{
    return all_words(n, min_len, max_len);
}

std::size_t sample_length(std::size_t alphabet)
{
    return alphabet <= 6 ? 3 : 2;
}

}  // namespace

LemmaReport check_lemmas(const EmbeddingConstruction& con)
{
    LemmaReport report;
    const auto& alg = con.algebra;
    const auto& scl = *con.scl;
    const std::size_t n = alg.size();
    const std::size_t k = con.sigma.size();
    const bool positive = con.tmpl == EmbeddingTemplate::Psc;
    const auto fmt = [&](const Word& w) { return format_word(con.sigma, w); };
    const auto& e = alg.elements;

    const auto samples = all_words(k, positive ? 1 : 0, sample_length(k));

    {
        LemmaRecorder rec("language");
        for (const auto& w : samples)
            if (con.dfa().accepts(w) != con.in_language_direct(w)) {
                rec.fail(fmt(w));
                break;
            }
        report.results.push_back(rec.take());
    }
    {
        LemmaRecorder rec("hb");
        for (std::size_t b = 0; b < n && !rec.failed(); ++b)
            for (const auto& w : samples)
                if (scl.contains_word(con.h[b], w) != con.in_h_direct(b, w)) {
                    rec.fail(e[b] + ": " + fmt(w));
                    break;
                }
        report.results.push_back(rec.take());
    }
    {
        LemmaRecorder rec("replace");
        const auto us = barred_words(n, positive || con.tmpl == EmbeddingTemplate::BotStd ? 1 : 0, 3);
        auto xs = barred_words(n, positive ? 1 : 0, 3);
        if (con.tmpl == EmbeddingTemplate::BotStd)
            for (auto& w : all_words(k, 1, 2))
                if (underline_count(w, n) > 0)
                    xs.push_back(w);
        for (const auto& x : xs) {
            if (rec.failed())
                break;
            for (const auto& u : us) {
                const bool algebraic = alg.le(*con.bullet(x), *con.bullet(u));
                if (algebraic != scl.replaceable(x, u)) {
                    rec.fail(fmt(x) + " vs " + fmt(u));
                    break;
                }
            }
        }
        report.results.push_back(rec.take());
    }
    {
        LemmaRecorder rec("hom");
        const auto& h = con.h;
        auto expect = [&](const Concept& lhs, const Concept& rhs, const std::string& what) {
            if (!(lhs == rhs))
                rec.fail(what);
        };
        if (!(h[alg.top] == scl.top()))
            rec.fail("top");
        if (con.tmpl == EmbeddingTemplate::Scl && !(h[*alg.unit] == scl.unit()))
            rec.fail("unit");
        for (std::size_t a = 0; a < n && !rec.failed(); ++a) {
            for (std::size_t b = 0; b < n && !rec.failed(); ++b) {
                const std::string ab = "(" + e[a] + ", " + e[b] + ")";
                expect(h[alg.prod[a][b]], scl.prod(h[a], h[b]), "prod" + ab);
                expect(h[alg.ldiv[a][b]], scl.ldiv(h[a], h[b]), "ldiv" + ab);
                expect(h[alg.rdiv[a][b]], scl.rdiv(h[a], h[b]), "rdiv" + ab);
                expect(h[alg.meet[a][b]], scl.meet(h[a], h[b]), "meet" + ab);
                expect(h[alg.join[a][b]], scl.join(h[a], h[b]), "join" + ab);
            }
            if (alg.plus)
                expect(h[(*alg.plus)[a]], scl.plus_iter(h[a]), "plus(" + e[a] + ")");
            if (alg.star && con.tmpl == EmbeddingTemplate::Scl)
                expect(h[(*alg.star)[a]], scl.star_iter(h[a]), "star(" + e[a] + ")");
        }
        report.results.push_back(rec.take());
    }
    if (con.tmpl == EmbeddingTemplate::BotStd) {
        LemmaRecorder rec("bot");
        if (!(con.h[alg.bot] == scl.bot_closure()))
            rec.fail("h(" + e[alg.bot] + ") differs from the closure of the empty set");
        report.results.push_back(rec.take());
    } else {
        LemmaRecorder rec("lz");
        const auto& z = con.h[alg.bot];
        if (!scl.is_local_zero(z))
            rec.fail("h(" + e[alg.bot] + ") is not a local zero");
        else if (con.tmpl == EmbeddingTemplate::Scl && !z.subset_of(scl.unit()))
            rec.fail("the unit lies outside the cone over h(" + e[alg.bot] + ")");
        report.results.push_back(rec.take());
    }
    {
        LemmaRecorder rec("order");
        for (std::size_t a = 0; a < n && !rec.failed(); ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (alg.le(a, b) != con.h[a].subset_of(con.h[b])) {
                    rec.fail(e[a] + ", " + e[b]);
                    break;
                }
        report.results.push_back(rec.take());
    }
    return report;
}

TransferResult truth_transfer(const EmbeddingConstruction& con, const AlgebraInterpretation& interp,
                              const Sequent& s)
{
    if (con.tmpl == EmbeddingTemplate::BotStd) {
        bool bad = std::any_of(s.antecedent.begin(), s.antecedent.end(),
                               [](const FormulaPtr& f) { return f->uses_unit_or_star(); });
        if (bad || s.succedent->uses_unit_or_star())
            throw ModelError("the botstd construction has no unit and no Kleene star");
    }
    check_mode(s, sequent_mode_of(con.tmpl));
    TransferResult out;
    out.algebra_truth = evaluate_sequent(con.algebra, interp, s);
    out.scl_truth = eval_sequent(con.model_for(interp), s);
    return out;
}

SignatureOptions signature_of(const EmbeddingConstruction& con)
{
    SignatureOptions sig;
    sig.plus = con.algebra.plus.has_value();
    if (con.tmpl == EmbeddingTemplate::Scl) {
        sig.unit = true;
        sig.star = con.algebra.star.has_value();
    }
    sig.empty_antecedent = con.tmpl != EmbeddingTemplate::Psc;
    return sig;
}

// ---------------------------------------------------------------------------

TwoLetterTransfer::TwoLetterTransfer(const Dfa& lang, WordMode mode)
    : source_dfa_(lang.minimized()), encoded_(pentus_encode_lang(source_dfa_)),
      source_(std::make_shared<const SclAlgebra>(SyntacticMonoid::build(source_dfa_, mode))),
      target_(SclAlgebra::create(encoded_, mode))
{
    const auto& sm = source_->monoid();
    const auto& tm = target_->monoid();
    const std::size_t k = source_dfa_.alphabet().size();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    std::deque<std::size_t> queue;
    auto add = [&](std::pair<std::size_t, std::size_t> p, bool nonempty) {
        if (index.emplace(p, pairs_.size()).second) {
            pairs_.push_back(p);
            pair_nonempty_.push_back(nonempty);
            if (nonempty)
                queue.push_back(pairs_.size() - 1);
        } else if (nonempty && !pair_nonempty_[index[p]]) {
            pair_nonempty_[index[p]] = true;
            queue.push_back(index[p]);
        }
    };
    std::vector<std::pair<std::size_t, std::size_t>> letters;
    for (std::size_t a = 0; a < k; ++a) {
        const Word single{a};
        letters.emplace_back(*sm.letter(a), *tm.behavior_of(pentus_encode(single)));
        add(letters.back(), true);
    }
    while (!queue.empty()) {
        const auto [x, y] = pairs_[queue.front()];
        queue.pop_front();
        for (const auto& [lx, ly] : letters)
            add({sm.product(x, lx), tm.product(y, ly)}, true);
    }
    if (mode == WordMode::Epsilon)
        add({*sm.identity(), *tm.identity()}, false);
}

BehaviorSet TwoLetterTransfer::image(const BehaviorSet& m) const
{
    BehaviorSet out = target_->empty_set();
    for (std::size_t i = 0; i < pairs_.size(); ++i)
        if (m[pairs_[i].first])
            out.set(pairs_[i].second);
    return out;
}

bool TwoLetterTransfer::has_nonempty_word(const BehaviorSet& m) const
{
    for (std::size_t i = 0; i < pairs_.size(); ++i)
        if (pair_nonempty_[i] && m[pairs_[i].first])
            return true;
    return false;
}

TwoLetterCheck TwoLetterTransfer::check(const Concept& m, std::size_t word_bound, std::size_t ctx_bound) const
{
    TwoLetterCheck out;
    out.precondition_nonempty_word = has_nonempty_word(m.behaviors());
    out.precondition_nonempty_polar = m.polar().any();

    const auto rhs = target_->closure(image(m.behaviors()));
    const std::size_t k = source_dfa_.alphabet().size();
    const auto& sm = source_->monoid();
    const auto& tm = target_->monoid();
    const std::size_t min_len = target_->mode() == WordMode::Positive ? 1 : 0;
    const auto words = all_words(2, min_len, word_bound);

    out.equal = true;
    for (const auto& v : words) {
        bool left = false;
        if (auto decoded = pentus_decode(v, k))
            if (auto b = sm.behavior_of(*decoded))
                left = m.contains(*b);
        const auto tb = tm.behavior_of(v);
        const bool right = tb && rhs.contains(*tb);
        if (left != right) {
            out.equal = false;
            out.witness = v;
            break;
        }
    }

    if (ctx_bound > 0) {
        const auto img = image(m.behaviors());
        std::vector<Word> generators;
        for (auto t = img.find_first(); t != BehaviorSet::npos; t = img.find_next(t))
            generators.push_back(tm.element(t).witness);
        const auto oracle = oracle_closure(encoded_, generators, word_bound, ctx_bound, target_->mode());
        for (const auto& v : words) {
            const auto tb = tm.behavior_of(v);
            if (tb && rhs.contains(*tb) && !oracle.count(v)) {
                out.oracle_consistent = false;
                break;
            }
        }
    }
    return out;
}

}  // namespace lambek
