// scl-lambek: command-line front end for the prover, the SCL engine, the
// algebra embeddings and the countermodel search.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lambek/algebra.hpp"
#include "lambek/embedding.hpp"
#include "lambek/langkit.hpp"
#include "lambek/models.hpp"
#include "lambek/prover.hpp"
#include "lambek/scl.hpp"
#include "lambek/syntax.hpp"

#ifndef LAMBEK_VERSION
#define LAMBEK_VERSION "0.0.0"
#endif

namespace {

using namespace lambek;
using nlohmann::json;

constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

constexpr const char* kNotFoundCaveat =
    "No countermodel found within the budget. This is not evidence of entailment: neither ACTω nor even MALC "
    "is strongly complete w.r.t. regular SCL-models, so a finite search can miss every countermodel.";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json envelope(const std::string& command)
{
    return json{{"schema", "scl-lambek/1"}, {"command", command}};
}

void print_json(const json& j)
{
    std::cout << j.dump(2) << '\n';
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    return out;
}

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// --- prove -----------------------------------------------------------------

struct ProveArgs {
    std::string mode = "restricted";
    std::string hyp_file;
    std::size_t omega_bound = 8;
    std::size_t cut_depth = 4;
    bool show_proof = false;
    bool json_out = false;
    std::string sequent;
};

int run_prove(const ProveArgs& a)
{
    ProverOptions opt;
    opt.mode = parse_mode(a.mode);
    opt.omega_bound = a.omega_bound;
    opt.cut_depth = a.cut_depth;
    if (!a.hyp_file.empty())
        opt.hyps = read_hypothesis_file(a.hyp_file, opt.mode);
    const auto goal = parse_sequent(a.sequent, opt.mode);
    const auto r = prove(goal, opt);
    const int code = r.verdict == Verdict::Derivable ? 0 : r.verdict == Verdict::NotDerivable ? 1 : 2;
    if (a.json_out) {
        auto j = envelope("prove");
        j["sequent"] = print_sequent(goal);
        j["mode"] = to_string(opt.mode);
        j["verdict"] = to_string(r.verdict);
        j["omega_bound"] = r.bound_used;
        j["omega_truncated"] = r.omega_truncated;
        j["cut_depth"] = r.cut_depth_used;
        j["cut_limit_reached"] = r.cut_limit_reached;
        j["step_limit_reached"] = r.step_limit_reached;
        if (a.show_proof && r.witness)
            j["proof"] = render_proof(*r.witness);
        print_json(j);
    } else {
        std::cout << to_string(r.verdict) << '\n';
        if (r.verdict == Verdict::UnknownBounded) {
            if (r.omega_truncated)
                std::cout << "omega-rule premises checked up to n = " << r.bound_used << '\n';
            if (r.cut_limit_reached)
                std::cout << "cut search stopped at depth " << r.cut_depth_used << '\n';
            if (r.step_limit_reached)
                std::cout << "search step limit reached\n";
        }
        if (a.show_proof && r.witness)
            std::cout << render_proof(*r.witness);
    }
    return code;
}

// --- parse -----------------------------------------------------------------

struct ParseArgs {
    std::string lexicon;
    std::string goal;
    std::string mode = "restricted";
    std::string sentence;
    bool show_proof = false;
    bool json_out = false;
};

int run_parse(const ParseArgs& a)
{
    const auto mode = parse_mode(a.mode);
    const auto lex = read_lexicon(a.lexicon, mode);
    const auto goal = parse_formula(a.goal, mode);
    std::vector<std::string> words;
    std::istringstream in(a.sentence);
    for (std::string w; in >> w;)
        words.push_back(w);
    const auto r = parse_sentence(lex, words, goal, mode);
    if (a.json_out) {
        auto j = envelope("parse");
        j["accepted"] = r.accepted;
        auto arr = json::array();
        for (const auto& asg : r.assignments) {
            auto types = json::array();
            for (const auto& t : asg.types)
                types.push_back(print_formula(t));
            json item{{"types", types}};
            if (a.show_proof && asg.proof)
                item["proof"] = render_proof(*asg.proof);
            arr.push_back(std::move(item));
        }
        j["assignments"] = std::move(arr);
        print_json(j);
    } else {
        std::cout << (r.accepted ? "accepted" : "rejected") << '\n';
        for (const auto& asg : r.assignments) {
            std::string line;
            for (std::size_t i = 0; i < asg.types.size(); ++i)
                line += (i ? ", " : "") + print_formula(asg.types[i]);
            std::cout << "  " << line << " => " << print_formula(goal) << '\n';
            if (a.show_proof && asg.proof)
                std::cout << render_proof(*asg.proof);
        }
    }
    return r.accepted ? 0 : 1;
}

// --- scl -------------------------------------------------------------------

struct LangArgs {
    std::string lang;
    std::string builtin;
    std::string mode = "positive";
};

Dfa load_language(const LangArgs& a)
{
    if (!a.lang.empty() && !a.builtin.empty())
        throw UsageError("give either --lang or --builtin, not both");
    if (!a.lang.empty())
        return Dfa::read_file(a.lang);
    if (a.builtin == "uavb")
        return dfa_template_uavb({"a", "b", "c", "d"});
    if (a.builtin == "ab")
        return dfa_for_word_set({{0, 1}}, {"a", "b"});
    if (a.builtin == "aplus")
        return dfa_universal({"a"}, false);
    if (a.builtin.empty())
        throw UsageError("a language is required (--lang FILE or --builtin uavb|ab|aplus)");
    throw UsageError("unknown builtin language '" + a.builtin + "'");
}

/// Comma-separated words; each word is parsed against the alphabet.
std::vector<Word> parse_word_list(const std::vector<Symbol>& alphabet, const std::string& text)
{
    std::vector<Word> out;
    for (auto& part : split(text, ',')) {
        auto w = trim(part);
        if (w == "ε" || w == "eps" || w == "")
            out.push_back({});
        else
            out.push_back(parse_word(alphabet, w));
    }
    return out;
}

json concept_json(const SclAlgebra& alg, const Concept& c)
{
    const auto& sigma = alg.monoid().dfa().alphabet();
    auto words = json::array();
    for (const auto& w : alg.witnesses(c))
        words.push_back(format_word(sigma, w));
    auto idx = json::array();
    for (auto t = c.behaviors().find_first(); t != BehaviorSet::npos; t = c.behaviors().find_next(t))
        idx.push_back(t);
    return json{{"witnesses", words}, {"behaviors", idx}};
}

std::string concept_text(const SclAlgebra& alg, const Concept& c)
{
    const auto& sigma = alg.monoid().dfa().alphabet();
    std::string out = "{";
    bool first = true;
    for (const auto& w : alg.witnesses(c)) {
        out += (first ? "" : ", ") + format_word(sigma, w);
        first = false;
    }
    out += "}  behaviors [";
    first = true;
    for (auto t = c.behaviors().find_first(); t != BehaviorSet::npos; t = c.behaviors().find_next(t)) {
        out += (first ? "" : " ") + std::to_string(t);
        first = false;
    }
    return out + "]";
}

struct SclArgs {
    LangArgs lang;
    std::string action;
    std::string words;
    std::string op;
    std::string left;
    std::string right;
    std::size_t cap = 20000;
    bool json_out = false;
};

int run_scl(const SclArgs& a)
{
    const auto dfa = load_language(a.lang);
    const auto mode = parse_word_mode(a.lang.mode);
    const auto alg = SclAlgebra::create(dfa, mode);
    const auto& sigma = dfa.alphabet();
    auto j = envelope("scl " + a.action);
    j["mode"] = to_string(mode);
    j["behaviors"] = alg->behavior_count();
    j["contexts"] = alg->context_count();

    auto gen = [&](const std::string& text) {
        auto words = parse_word_list(sigma, text);
        if (mode == WordMode::Positive)
            for (const auto& w : words)
                if (w.empty())
                    throw UsageError("ε is not a word in positive mode");
        return alg->closure(alg->behaviors_of(words));
    };

    if (a.action == "closure") {
        const auto c = gen(a.words);
        if (a.json_out) {
            j["concept"] = concept_json(*alg, c);
            print_json(j);
        } else {
            std::cout << concept_text(*alg, c) << '\n';
        }
        return 0;
    }
    if (a.action == "op") {
        const auto p = gen(a.left);
        std::optional<Concept> result;
        const bool unary = a.op == "plus" || a.op == "star";
        if (!unary && a.right.empty() && a.op != "meet" && a.op != "join" && a.op != "prod" && a.op != "ldiv" &&
            a.op != "rdiv")
            throw UsageError("unknown operation '" + a.op + "'");
        if (unary) {
            result = a.op == "plus" ? alg->plus_iter(p) : alg->star_iter(p);
        } else {
            const auto q = gen(a.right);
            if (a.op == "meet")
                result = alg->meet(p, q);
            else if (a.op == "join")
                result = alg->join(p, q);
            else if (a.op == "prod")
                result = alg->prod(p, q);
            else if (a.op == "ldiv")
                result = alg->ldiv(p, q);
            else if (a.op == "rdiv")
                result = alg->rdiv(p, q);
            else
                throw UsageError("unknown operation '" + a.op + "'");
        }
        if (a.json_out) {
            j["op"] = a.op;
            j["concept"] = concept_json(*alg, *result);
            print_json(j);
        } else {
            std::cout << concept_text(*alg, *result) << '\n';
        }
        return 0;
    }
    const auto concepts = alg->enumerate_concepts(a.cap);
    if (a.action == "lattice" || a.action == "localzeros") {
        const bool zeros = a.action == "localzeros";
        auto arr = json::array();
        std::size_t count = 0;
        for (const auto& c : concepts) {
            if (zeros && !alg->is_local_zero(c))
                continue;
            ++count;
            if (a.json_out)
                arr.push_back(concept_json(*alg, c));
            else
                std::cout << concept_text(*alg, c) << '\n';
        }
        if (a.json_out) {
            j["concepts"] = std::move(arr);
            j["count"] = count;
            print_json(j);
        } else {
            std::cout << count << (zeros ? " local zeros" : " concepts") << '\n';
        }
        return 0;
    }
    throw UsageError("unknown scl action '" + a.action + "'");
}

// --- embed -----------------------------------------------------------------

AlgebraInterpretation parse_interp(const FiniteResiduatedAlgebra& alg, const std::string& text)
{
    AlgebraInterpretation interp;
    for (auto& part : split(text, ',')) {
        for (auto& item : split(part, ' ')) {
            item = trim(item);
            if (item.empty())
                continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw UsageError("expected var=element, got '" + item + "'");
            const auto var = trim(item.substr(0, eq));
            const auto el = trim(item.substr(eq + 1));
            const auto idx = alg.index_of(el);
            if (!idx)
                throw UsageError("unknown algebra element '" + el + "'");
            interp[var] = *idx;
        }
    }
    return interp;
}

struct EmbedArgs {
    std::string algebra;
    std::string tmpl;
    bool verify = false;
    std::string transfer;
    bool json_out = false;
};

int run_embed(const EmbedArgs& a)
{
    const auto alg = FiniteResiduatedAlgebra::read_file(a.algebra);
    const auto violations = validate(alg);
    if (!violations.empty()) {
        std::string msg = "algebra is not valid:";
        for (const auto& v : violations)
            msg += "\n  " + v.axiom + " (" + v.witness + ")";
        throw UsageError(msg);
    }
    const auto tmpl = parse_template(a.tmpl);
    const auto con = build_embedding(alg, tmpl);
    auto j = envelope("embed");
    j["template"] = to_string(tmpl);
    j["alphabet"] = con.sigma;
    j["dfa_states"] = con.dfa().minimized().state_count();
    j["behaviors"] = con.scl->behavior_count();
    bool ok = true;

    if (!a.json_out) {
        std::cout << "template " << to_string(tmpl) << ", " << alg.size() << " elements, alphabet of "
                  << con.sigma.size() << " letters\n";
        std::cout << "L: " << j["dfa_states"] << " states (minimal), " << con.scl->behavior_count()
                  << " behavior classes\n";
        for (std::size_t b = 0; b < alg.size(); ++b)
            std::cout << "h(" << alg.elements[b] << ") = " << concept_text(*con.scl, con.h[b]) << '\n';
    }
    if (a.verify) {
        const auto report = check_lemmas(con);
        ok = ok && report.all_passed();
        j["lemmas"] = report.to_json();
        if (!a.json_out)
            for (const auto& r : report.results)
                std::cout << "lemma " << r.lemma << ": " << (r.passed ? "pass" : "FAIL (" + r.witness + ")") << '\n';
    }
    if (!a.transfer.empty()) {
        const auto mode = sequent_mode_of(tmpl);
        auto arr = json::array();
        for (const auto& raw : split(read_text(a.transfer), '\n')) {
            auto line = raw;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            std::string seq_text = line;
            std::string interp_text;
            if (auto at = line.find('@'); at != std::string::npos) {
                seq_text = trim(line.substr(0, at));
                interp_text = line.substr(at + 1);
            }
            const auto seq = parse_sequent(seq_text, mode);
            const auto vars = variables_of(seq);
            std::vector<AlgebraInterpretation> interps;
            if (!interp_text.empty()) {
                interps.push_back(parse_interp(alg, interp_text));
            } else {
                std::vector<std::size_t> digits(vars.size(), 0);
                while (true) {
                    AlgebraInterpretation in;
                    for (std::size_t i = 0; i < vars.size(); ++i)
                        in[vars[i]] = digits[i];
                    interps.push_back(in);
                    std::size_t i = 0;
                    while (i < digits.size() && ++digits[i] == alg.size())
                        digits[i++] = 0;
                    if (i == digits.size())
                        break;
                }
            }
            for (const auto& in : interps) {
                const auto r = truth_transfer(con, in, seq);
                ok = ok && r.algebra_truth == r.scl_truth;
                std::string itext;
                for (const auto& [v, e] : in)
                    itext += (itext.empty() ? "" : " ") + v + "=" + alg.elements[e];
                arr.push_back(json{{"sequent", print_sequent(seq)},
                                   {"interpretation", itext},
                                   {"algebra", r.algebra_truth},
                                   {"scl", r.scl_truth}});
                if (!a.json_out)
                    std::cout << print_sequent(seq) << "  [" << itext << "]  algebra " << std::boolalpha
                              << r.algebra_truth << ", scl " << r.scl_truth
                              << (r.algebra_truth == r.scl_truth ? "" : "  MISMATCH") << '\n';
            }
        }
        j["transfer"] = std::move(arr);
    }
    j["ok"] = ok;
    if (a.json_out)
        print_json(j);
    return ok ? 0 : 1;
}

// --- countermodel ----------------------------------------------------------

struct CountermodelArgs {
    std::string hyp_file;
    std::string goal;
    std::string mode = "restricted";
    CountermodelBudget budget;
    std::string out_dfa;
    std::size_t witnesses = 6;
    bool json_out = false;
};

int run_countermodel(const CountermodelArgs& a)
{
    const auto mode = parse_mode(a.mode);
    HypothesisSet hyps;
    if (!a.hyp_file.empty())
        hyps = read_hypothesis_file(a.hyp_file, mode);
    const auto goal = parse_sequent(a.goal, mode);
    const auto r = countermodel_search(hyps, goal, mode, a.budget);
    auto j = envelope("countermodel");
    j["found"] = r.found;
    j["checked"] = r.checked_count;
    if (!r.found) {
        j["caveat"] = kNotFoundCaveat;
        if (a.json_out)
            print_json(j);
        else
            std::cout << "not found after " << r.checked_count << " candidates\n" << kNotFoundCaveat << '\n';
        return 1;
    }
    const auto& model = *r.model;
    const auto& alg = model.algebra();
    const auto& dfa = alg.monoid().dfa();
    j["source"] = r.source;
    j["mode"] = to_string(alg.mode());
    j["dfa"] = dfa.to_json();
    if (r.seed_algebra) {
        j["algebra"] = r.seed_algebra->to_json();
        j["template"] = r.template_name;
        json in;
        for (const auto& [v, e] : r.seed_interpretation)
            in[v] = r.seed_algebra->elements[e];
        j["interpretation"] = in;
    }
    auto limited = [&](const Concept& c) {
        auto ws = alg.witnesses(c);
        if (ws.size() > a.witnesses)
            ws.resize(a.witnesses);
        std::vector<std::string> out;
        for (const auto& w : ws)
            out.push_back(format_word(dfa.alphabet(), w));
        return out;
    };
    json assign;
    for (const auto& [v, c] : model.assignment())
        assign[v] = limited(c);
    j["assignment"] = assign;
    if (model.floor())
        j["bottom"] = limited(*model.floor());
    if (!a.out_dfa.empty()) {
        std::ofstream out(a.out_dfa);
        if (!out)
            throw UsageError("cannot write '" + a.out_dfa + "'");
        out << dfa.to_json().dump(2) << '\n';
    }
    if (a.json_out) {
        print_json(j);
    } else {
        std::cout << "found (" << r.source << ") after " << r.checked_count << " candidates\n";
        if (r.seed_algebra) {
            std::cout << "algebra: " << r.seed_algebra->size() << " elements, kind " << to_string(r.seed_algebra->kind)
                      << ", template " << r.template_name << "\ninterpretation:";
            for (const auto& [v, e] : r.seed_interpretation)
                std::cout << ' ' << v << '=' << r.seed_algebra->elements[e];
            std::cout << '\n';
        }
        std::cout << "L: " << dfa.state_count() << " states over {";
        for (std::size_t i = 0; i < dfa.alphabet().size(); ++i)
            std::cout << (i ? ", " : "") << dfa.alphabet()[i];
        std::cout << "}, " << to_string(alg.mode()) << " mode\n";
        if (a.out_dfa.empty())
            std::cout << dfa.to_json().dump() << '\n';
        else
            std::cout << "DFA written to " << a.out_dfa << '\n';
        auto show = [&](const std::string& name, const Concept& c) {
            std::cout << "  " << name << " -> {";
            const auto ws = limited(c);
            for (std::size_t i = 0; i < ws.size(); ++i)
                std::cout << (i ? ", " : "") << ws[i];
            if (c.count() > ws.size())
                std::cout << ", ...";
            std::cout << "}  (" << c.count() << " classes)\n";
        };
        for (const auto& [v, c] : model.assignment())
            show(v, c);
        if (model.floor())
            show("bot", *model.floor());
    }
    return 0;
}

// --- reduce2 ---------------------------------------------------------------

struct Reduce2Args {
    LangArgs lang;
    std::string out;
    bool verify = false;
    std::size_t samples = 20;
    std::size_t word_bound = 6;
    std::size_t ctx_bound = 0;
    std::uint64_t seed = 1;
    bool json_out = false;
};

int run_reduce2(const Reduce2Args& a)
{
    const auto dfa = load_language(a.lang);
    const auto mode = parse_word_mode(a.lang.mode);
    const TwoLetterTransfer t(dfa, mode);
    auto j = envelope("reduce2");
    j["dfa"] = t.encoded_language().to_json();
    if (!a.out.empty()) {
        std::ofstream out(a.out);
        if (!out)
            throw UsageError("cannot write '" + a.out + "'");
        out << t.encoded_language().to_json().dump(2) << '\n';
    }
    bool ok = true;
    if (!a.json_out) {
        if (a.out.empty())
            std::cout << t.encoded_language().to_json().dump() << '\n';
        std::cout << "g(L): " << t.encoded_language().state_count() << " states, " << t.target().behavior_count()
                  << " behavior classes\n";
    }
    if (a.verify) {
        std::vector<Concept> eligible;
        for (const auto& c : t.source().enumerate_concepts())
            if (t.has_nonempty_word(c.behaviors()) && c.polar().any())
                eligible.push_back(c);
        std::mt19937_64 rng(a.seed);
        std::shuffle(eligible.begin(), eligible.end(), rng);
        if (eligible.size() > a.samples)
            eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(a.samples), eligible.end());
        auto arr = json::array();
        std::size_t passed = 0;
        for (const auto& c : eligible) {
            const auto r = t.check(c, a.word_bound, a.ctx_bound);
            const bool good = r.equal && r.oracle_consistent;
            passed += good;
            ok = ok && good;
            json item{{"concept", concept_json(t.source(), c)}, {"equal", r.equal}, {"oracle", r.oracle_consistent}};
            if (r.witness)
                item["witness"] = format_word(pentus_alphabet(), *r.witness);
            arr.push_back(std::move(item));
        }
        j["checks"] = std::move(arr);
        if (!a.json_out)
            std::cout << "g(M^{closure}) = (g(M))^{closure} on " << passed << "/" << eligible.size()
                      << " sampled closed sets (words up to length " << a.word_bound << ")\n";
    }
    j["ok"] = ok;
    if (a.json_out)
        print_json(j);
    return ok ? 0 : 1;
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
    std::string algebra;
    LangArgs lang;
    std::vector<std::string> assign;
    std::string floor;
    std::string mode_text;
    std::string sequent;
    bool json_out = false;
};

int run_eval(const EvalArgs& a)
{
    auto j = envelope("eval");
    bool truth = false;
    if (!a.algebra.empty()) {
        const auto alg = FiniteResiduatedAlgebra::read_file(a.algebra);
        const auto mode = a.mode_text.empty() ? (alg.unit ? Mode::Unrestricted : Mode::Restricted)
                                              : parse_mode(a.mode_text);
        const auto seq = parse_sequent(a.sequent, mode);
        std::string joined;
        for (const auto& item : a.assign)
            joined += item + ",";
        truth = evaluate_sequent(alg, parse_interp(alg, joined), seq);
        j["sequent"] = print_sequent(seq);
    } else {
        const auto dfa = load_language(a.lang);
        const auto wmode = parse_word_mode(a.lang.mode);
        const auto mode = a.mode_text.empty()
                              ? (wmode == WordMode::Epsilon ? Mode::Unrestricted : Mode::Restricted)
                              : parse_mode(a.mode_text);
        const auto alg = SclAlgebra::create(dfa, wmode);
        // var=w1|w2 pairs separated by ';'.
        std::map<std::string, Concept> assignment;
        std::string joined;
        for (const auto& item : a.assign)
            joined += item + ";";
        for (auto& item : split(joined, ';')) {
            item = trim(item);
            if (item.empty())
                continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw UsageError("expected var=words, got '" + item + "'");
            std::string words = item.substr(eq + 1);
            std::replace(words.begin(), words.end(), '|', ',');
            assignment.emplace(trim(item.substr(0, eq)),
                               alg->closure(alg->behaviors_of(parse_word_list(dfa.alphabet(), words))));
        }
        std::optional<Concept> floor;
        if (!a.floor.empty())
            floor = alg->closure(alg->behaviors_of(parse_word_list(dfa.alphabet(), a.floor)));
        if (floor && !alg->is_local_zero(*floor))
            throw UsageError("the --bot language is not a local zero");
        const SclModel model(alg, std::move(assignment), mode, floor);
        const auto seq = parse_sequent(a.sequent, mode);
        truth = eval_sequent(model, seq);
        j["sequent"] = print_sequent(seq);
    }
    j["true"] = truth;
    if (a.json_out)
        print_json(j);
    else
        std::cout << (truth ? "true" : "false") << '\n';
    return truth ? 0 : 1;
}

void add_lang_options(CLI::App* cmd, LangArgs& lang)
{
    cmd->add_option("--lang", lang.lang, "DFA file (JSON)");
    cmd->add_option("--builtin", lang.builtin, "Built-in language: uavb, ab or aplus");
    cmd->add_option("--mode", lang.mode, "positive (words in Σ⁺) or epsilon (words in Σ*)")
        ->check(CLI::IsMember({"positive", "epsilon"}));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lambek calculus and syntactic concept lattice workbench", "scl-lambek"};
    app.set_version_flag("--version", std::string("scl-lambek ") + LAMBEK_VERSION);
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success / true / derivable, 1 negative answer, 2 unknown (prove), 64 usage or input "
               "error, 70 internal error.");

    ProveArgs prove_args;
    auto* prove_cmd = app.add_subcommand("prove", "Decide a sequent by backward proof search");
    prove_cmd->add_option("--mode", prove_args.mode, "restricted or unrestricted")
        ->check(CLI::IsMember({"restricted", "unrestricted"}));
    prove_cmd->add_option("--hyp", prove_args.hyp_file, "Hypothesis file");
    prove_cmd->add_option("--omega-bound", prove_args.omega_bound, "Largest n tried for omega-rule premises");
    prove_cmd->add_option("--cut-depth", prove_args.cut_depth, "Nested cuts allowed with hypotheses");
    prove_cmd->add_flag("--show-proof", prove_args.show_proof, "Print the derivation");
    prove_cmd->add_flag("--json", prove_args.json_out, "Machine-readable output");
    prove_cmd->add_option("sequent", prove_args.sequent, "Sequent, e.g. \"np, (np\\s)/np, np => s\"")->required();
    prove_cmd->footer("Exit codes: 0 Derivable, 1 NotDerivable, 2 UnknownBounded, 64 usage error.");

    ParseArgs parse_args;
    auto* parse_cmd = app.add_subcommand("parse", "Parse a sentence with a categorial lexicon");
    parse_cmd->add_option("--lexicon", parse_args.lexicon, "Lexicon file: word<TAB>formula")->required();
    parse_cmd->add_option("--goal", parse_args.goal, "Goal type")->required();
    parse_cmd->add_option("--mode", parse_args.mode, "restricted or unrestricted")
        ->check(CLI::IsMember({"restricted", "unrestricted"}));
    parse_cmd->add_flag("--show-proof", parse_args.show_proof, "Print derivations");
    parse_cmd->add_flag("--json", parse_args.json_out, "Machine-readable output");
    parse_cmd->add_option("sentence", parse_args.sentence, "Space-separated words")->required();
    parse_cmd->footer("Exit codes: 0 accepted, 1 rejected, 64 usage error (including unknown words).");

    SclArgs scl_args;
    auto* scl_cmd = app.add_subcommand("scl", "Syntactic concept lattice of a regular language");
    scl_cmd->add_option("action", scl_args.action, "closure, op, lattice or localzeros")
        ->required()
        ->check(CLI::IsMember({"closure", "op", "lattice", "localzeros"}));
    add_lang_options(scl_cmd, scl_args.lang);
    scl_cmd->add_option("--words", scl_args.words, "closure: comma-separated generating words");
    scl_cmd->add_option("--op", scl_args.op, "op: meet, join, prod, ldiv, rdiv, plus or star")
        ->check(CLI::IsMember({"meet", "join", "prod", "ldiv", "rdiv", "plus", "star"}));
    scl_cmd->add_option("--left", scl_args.left, "op: words generating the first operand");
    scl_cmd->add_option("--right", scl_args.right, "op: words generating the second operand");
    scl_cmd->add_option("--cap", scl_args.cap, "Maximum number of concepts to enumerate");
    scl_cmd->add_flag("--json", scl_args.json_out, "Machine-readable output");
    scl_cmd->footer("Exit codes: 0 success, 64 usage error, 70 internal error.");

    EmbedArgs embed_args;
    auto* embed_cmd = app.add_subcommand("embed", "Embed a finite algebra into a syntactic concept lattice");
    embed_cmd->add_option("--algebra", embed_args.algebra, "Algebra file (JSON)")->required();
    embed_cmd->add_option("--template", embed_args.tmpl, "psc, scl or botstd")
        ->required()
        ->check(CLI::IsMember({"psc", "scl", "botstd"}));
    embed_cmd->add_flag("--verify", embed_args.verify, "Check the embedding lemmas");
    embed_cmd->add_option("--transfer", embed_args.transfer,
                          "File of sequents (optionally `@ p=elem q=elem`) evaluated on both sides");
    embed_cmd->add_flag("--json", embed_args.json_out, "Machine-readable output");
    embed_cmd->footer("Exit codes: 0 all checks pass, 1 a lemma or transfer check failed, 64 usage error.");

    CountermodelArgs cm_args;
    auto* cm_cmd = app.add_subcommand("countermodel", "Search for an SCL countermodel to an entailment");
    cm_cmd->add_option("--hyp", cm_args.hyp_file, "Hypothesis file");
    cm_cmd->add_option("--goal", cm_args.goal, "Goal sequent")->required();
    cm_cmd->add_option("--mode", cm_args.mode, "restricted or unrestricted")
        ->check(CLI::IsMember({"restricted", "unrestricted"}));
    cm_cmd->add_option("--max-states", cm_args.budget.max_dfa_states, "Largest DFA tried directly");
    cm_cmd->add_option("--max-letters", cm_args.budget.max_letters, "Largest alphabet tried directly");
    cm_cmd->add_option("--max-alg", cm_args.budget.max_algebra_size, "Largest algebra tried (at most 5)")
        ->check(CLI::Range(0, 5));
    cm_cmd->add_option("--sample-limit", cm_args.budget.sample_limit, "Assignments tried per DFA and floor");
    cm_cmd->add_option("--seed", cm_args.budget.seed, "Seed for sampled assignments");
    cm_cmd->add_option("--jobs", cm_args.budget.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cm_cmd->add_option("--out-dfa", cm_args.out_dfa, "Write the model's DFA to this file");
    cm_cmd->add_option("--witnesses", cm_args.witnesses, "Witness words shown per variable");
    cm_cmd->add_flag("--json", cm_args.json_out, "Machine-readable output");
    cm_cmd->footer("Exit codes: 0 found, 1 not found within the budget, 64 usage error.");

    Reduce2Args r2_args;
    auto* r2_cmd = app.add_subcommand("reduce2", "Encode a language over two letters (a_i -> e f^i e)");
    add_lang_options(r2_cmd, r2_args.lang);
    r2_cmd->add_option("--out", r2_args.out, "Write the encoded DFA to this file");
    r2_cmd->add_flag("--verify", r2_args.verify, "Check that encoding commutes with closure on sampled sets");
    r2_cmd->add_option("--samples", r2_args.samples, "Closed sets sampled by --verify");
    r2_cmd->add_option("--word-bound", r2_args.word_bound, "Longest {e,f}-word compared");
    r2_cmd->add_option("--ctx-bound", r2_args.ctx_bound, "Context bound for the brute-force cross-check (0: off)");
    r2_cmd->add_option("--seed", r2_args.seed, "Sampling seed");
    r2_cmd->add_flag("--json", r2_args.json_out, "Machine-readable output");
    r2_cmd->footer("Exit codes: 0 success, 1 a verification failed, 64 usage error.");

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a sequent in a finite algebra or an SCL model");
    eval_cmd->add_option("--algebra", eval_args.algebra, "Algebra file; --assign takes p=elem,q=elem");
    add_lang_options(eval_cmd, eval_args.lang);
    eval_cmd->add_option("--assign", eval_args.assign,
                         "Interpretation, repeatable: p=elem for algebras; p=w1|w2 (generating words) for languages");
    eval_cmd->add_option("--bot", eval_args.floor, "Words generating a local zero used as the bottom");
    eval_cmd->add_option("--calculus", eval_args.mode_text, "restricted or unrestricted")
        ->check(CLI::IsMember({"restricted", "unrestricted"}));
    eval_cmd->add_flag("--json", eval_args.json_out, "Machine-readable output");
    eval_cmd->add_option("sequent", eval_args.sequent, "Sequent to evaluate")->required();
    eval_cmd->footer("Exit codes: 0 true, 1 false, 64 usage error.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (prove_cmd->parsed())
            return run_prove(prove_args);
        if (parse_cmd->parsed())
            return run_parse(parse_args);
        if (scl_cmd->parsed())
            return run_scl(scl_args);
        if (embed_cmd->parsed())
            return run_embed(embed_args);
        if (cm_cmd->parsed())
            return run_countermodel(cm_args);
        if (r2_cmd->parsed())
            return run_reduce2(r2_args);
        if (eval_cmd->parsed())
            return run_eval(eval_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SyntaxError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const ModeError& e) {
        std::cerr << "mode error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const EvaluationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const LatticeTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
