// Python bindings: sequents and words are passed as strings, modes as
// "restricted"/"unrestricted" and "positive"/"epsilon".

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lambek/algebra.hpp"
#include "lambek/embedding.hpp"
#include "lambek/langkit.hpp"
#include "lambek/models.hpp"
#include "lambek/prover.hpp"
#include "lambek/scl.hpp"
#include "lambek/syntax.hpp"

namespace py = pybind11;
using namespace lambek;

namespace {

using SclPtr = std::shared_ptr<const SclAlgebra>;

/// pybind11 holders cannot point to const, so the lattice is wrapped.
struct PyScl {
    SclPtr p;
};

/// A concept together with the lattice it lives in.
struct PyConcept {
    SclPtr scl;
    Concept c;

    std::vector<std::size_t> behaviors() const
    {
        std::vector<std::size_t> out;
        for (auto t = c.behaviors().find_first(); t != BehaviorSet::npos; t = c.behaviors().find_next(t))
            out.push_back(t);
        return out;
    }
    std::vector<std::string> witnesses() const
    {
        std::vector<std::string> out;
        for (const auto& w : scl->witnesses(c))
            out.push_back(format_word(scl->monoid().dfa().alphabet(), w));
        return out;
    }
    bool contains(const std::string& word) const
    {
        return scl->contains_word(c, parse_word(scl->monoid().dfa().alphabet(), word));
    }
};

Word to_word(const std::vector<Symbol>& sigma, const std::string& text)
{
    if (text.empty() || text == "ε")
        return {};
    return parse_word(sigma, text);
}

PyConcept closure_of(const SclPtr& scl, const std::vector<std::string>& words)
{
    std::vector<Word> ws;
    for (const auto& w : words)
        ws.push_back(to_word(scl->monoid().dfa().alphabet(), w));
    return {scl, scl->closure(scl->behaviors_of(ws))};
}

py::dict prove_py(const std::string& sequent, const std::string& mode, const std::vector<std::string>& hyps,
                  std::size_t omega_bound, std::size_t cut_depth)
{
    ProverOptions opt;
    opt.mode = parse_mode(mode);
    opt.omega_bound = omega_bound;
    opt.cut_depth = cut_depth;
    for (const auto& h : hyps)
        opt.hyps.push_back(parse_sequent(h, opt.mode));
    const auto r = prove(parse_sequent(sequent, opt.mode), opt);
    py::dict d;
    d["verdict"] = to_string(r.verdict);
    d["proof"] = r.witness ? py::cast(render_proof(*r.witness)) : py::none();
    d["omega_truncated"] = r.omega_truncated;
    d["cut_limit_reached"] = r.cut_limit_reached;
    return d;
}

std::string json_text(const nlohmann::json& j)
{
    return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Lambek calculus prover, syntactic concept lattices, algebra embeddings and countermodels";

    py::register_exception<SyntaxError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ModeError>(m, "ModeError", PyExc_ValueError);
    py::register_exception<TemplateMismatch>(m, "TemplateMismatch", PyExc_ValueError);
    py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);

    m.def("normalize", [](const std::string& sequent, const std::string& mode) {
        return print_sequent(parse_sequent(sequent, parse_mode(mode)));
    }, py::arg("sequent"), py::arg("mode") = "restricted", "Parse and print a sequent.");

    m.def("prove", &prove_py, py::arg("sequent"), py::arg("mode") = "restricted",
          py::arg("hyps") = std::vector<std::string>{}, py::arg("omega_bound") = 8, py::arg("cut_depth") = 4,
          "Backward proof search. Returns a dict with 'verdict' and 'proof'.");

    py::class_<Dfa>(m, "Dfa")
        .def_static("from_json", [](const std::string& s) { return Dfa::from_json(nlohmann::json::parse(s)); })
        .def_static("read_file", &Dfa::read_file)
        .def_static("uavb", [](const std::vector<Symbol>& sigma) { return dfa_template_uavb(sigma); },
                    py::arg("alphabet") = std::vector<Symbol>{"a", "b", "c", "d"})
        .def_static("universal", &dfa_universal, py::arg("alphabet"), py::arg("with_empty") = false)
        .def_static("words", [](const std::vector<std::string>& words, const std::vector<Symbol>& sigma) {
            std::vector<Word> ws;
            for (const auto& w : words)
                ws.push_back(to_word(sigma, w));
            return dfa_for_word_set(ws, sigma);
        }, py::arg("words"), py::arg("alphabet"))
        .def_property_readonly("alphabet", &Dfa::alphabet)
        .def_property_readonly("state_count", &Dfa::state_count)
        .def("accepts", [](const Dfa& d, const std::string& w) { return d.accepts(to_word(d.alphabet(), w)); })
        .def("minimized", &Dfa::minimized)
        .def("to_json", [](const Dfa& d) { return json_text(d.to_json()); })
        .def("two_letter", &pentus_encode_lang, "The language encoded over {e, f} by a_i -> e f^i e.");

    py::class_<PyConcept>(m, "Concept")
        .def_property_readonly("behaviors", &PyConcept::behaviors)
        .def("witnesses", &PyConcept::witnesses, "Shortest word of each behavior class.")
        .def("__contains__", &PyConcept::contains)
        .def("__len__", [](const PyConcept& c) { return c.c.count(); })
        .def("__eq__", [](const PyConcept& a, const PyConcept& b) { return a.c == b.c; })
        .def("__le__", [](const PyConcept& a, const PyConcept& b) { return a.c.subset_of(b.c); })
        .def("__repr__", [](const PyConcept& c) {
            std::string s = "Concept({";
            bool first = true;
            for (const auto& w : c.witnesses()) {
                s += (first ? "" : ", ") + w;
                first = false;
            }
            return s + "})";
        });

    py::class_<PyScl>(m, "Scl")
        .def(py::init([](const Dfa& d, const std::string& mode) { return PyScl{SclAlgebra::create(d, parse_word_mode(mode))}; }),
             py::arg("dfa"), py::arg("mode") = "positive")
        .def_property_readonly("behavior_count", [](const PyScl& s) { return s.p->behavior_count(); })
        .def_property_readonly("context_count", [](const PyScl& s) { return s.p->context_count(); })
        .def("closure", [](const PyScl& w, const std::vector<std::string>& words) { return closure_of(w.p, words); })
        .def("top", [](const PyScl& w) { return PyConcept{w.p, w.p->top()}; })
        .def("bot", [](const PyScl& w) { return PyConcept{w.p, w.p->bot_closure()}; })
        .def("unit", [](const PyScl& w) { return PyConcept{w.p, w.p->unit()}; })
        .def("meet", [](const PyScl& w, const PyConcept& a, const PyConcept& b) { return PyConcept{w.p, w.p->meet(a.c, b.c)}; })
        .def("join", [](const PyScl& w, const PyConcept& a, const PyConcept& b) { return PyConcept{w.p, w.p->join(a.c, b.c)}; })
        .def("prod", [](const PyScl& w, const PyConcept& a, const PyConcept& b) { return PyConcept{w.p, w.p->prod(a.c, b.c)}; })
        .def("ldiv", [](const PyScl& w, const PyConcept& den, const PyConcept& num) {
            return PyConcept{w.p, w.p->ldiv(den.c, num.c)};
        }, py::arg("den"), py::arg("num"))
        .def("rdiv", [](const PyScl& w, const PyConcept& num, const PyConcept& den) {
            return PyConcept{w.p, w.p->rdiv(num.c, den.c)};
        }, py::arg("num"), py::arg("den"))
        .def("plus", [](const PyScl& w, const PyConcept& a) { return PyConcept{w.p, w.p->plus_iter(a.c)}; })
        .def("star", [](const PyScl& w, const PyConcept& a) { return PyConcept{w.p, w.p->star_iter(a.c)}; })
        .def("is_local_zero", [](const PyScl& w, const PyConcept& z) { return w.p->is_local_zero(z.c); })
        .def("concepts", [](const PyScl& w, std::size_t cap) {
            std::vector<PyConcept> out;
            for (auto& c : w.p->enumerate_concepts(cap))
                out.push_back({w.p, std::move(c)});
            return out;
        }, py::arg("cap") = 20000);

    py::class_<FiniteResiduatedAlgebra>(m, "Algebra")
        .def_static("from_json", [](const std::string& s) {
            return FiniteResiduatedAlgebra::from_json(nlohmann::json::parse(s));
        })
        .def_static("read_file", &FiniteResiduatedAlgebra::read_file)
        .def_readonly("elements", &FiniteResiduatedAlgebra::elements)
        .def_readonly("prod", &FiniteResiduatedAlgebra::prod)
        .def_readonly("unit", &FiniteResiduatedAlgebra::unit)
        .def_property_readonly("kind", [](const FiniteResiduatedAlgebra& a) { return to_string(a.kind); })
        .def("__len__", &FiniteResiduatedAlgebra::size)
        .def("validate", [](const FiniteResiduatedAlgebra& a) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& v : validate(a))
                out.emplace_back(v.axiom, v.witness);
            return out;
        }, "Failing axiom instances as (axiom, witness) pairs; empty if valid.")
        .def("evaluate", [](const FiniteResiduatedAlgebra& a, const std::string& sequent,
                            const std::map<std::string, std::string>& interp, const std::string& mode) {
            AlgebraInterpretation in;
            for (const auto& [v, e] : interp) {
                const auto idx = a.index_of(e);
                if (!idx)
                    throw py::value_error("unknown element '" + e + "'");
                in[v] = *idx;
            }
            return evaluate_sequent(a, in, parse_sequent(sequent, parse_mode(mode)));
        }, py::arg("sequent"), py::arg("interp"), py::arg("mode") = "unrestricted")
        .def("to_json", [](const FiniteResiduatedAlgebra& a) { return json_text(a.to_json()); });

    m.def("enumerate_algebras", [](std::size_t max_size, const std::string& kind) {
        return enumerate_algebras(max_size, parse_algebra_kind(kind));
    }, py::arg("max_size"), py::arg("kind") = "wPAL");

    py::class_<EmbeddingConstruction>(m, "Embedding")
        .def_readonly("alphabet", &EmbeddingConstruction::sigma)
        .def_property_readonly("dfa", &EmbeddingConstruction::dfa)
        .def_property_readonly("scl", [](const EmbeddingConstruction& e) { return PyScl{e.scl}; })
        .def("h", [](const EmbeddingConstruction& e, const std::string& element) {
            const auto idx = e.algebra.index_of(element);
            if (!idx)
                throw py::value_error("unknown element '" + element + "'");
            return PyConcept{e.scl, e.h[*idx]};
        })
        .def("check_lemmas", [](const EmbeddingConstruction& e) {
            std::vector<std::tuple<std::string, bool, std::string>> out;
            for (const auto& r : check_lemmas(e).results)
                out.emplace_back(r.lemma, r.passed, r.witness);
            return out;
        }, "(lemma, passed, witness) triples.")
        .def("transfer", [](const EmbeddingConstruction& e, const std::string& sequent,
                            const std::map<std::string, std::string>& interp) {
            AlgebraInterpretation in;
            for (const auto& [v, el] : interp) {
                const auto idx = e.algebra.index_of(el);
                if (!idx)
                    throw py::value_error("unknown element '" + el + "'");
                in[v] = *idx;
            }
            const auto r = truth_transfer(e, in, parse_sequent(sequent, sequent_mode_of(e.tmpl)));
            return std::make_pair(r.algebra_truth, r.scl_truth);
        }, "Truth of the sequent in the algebra and in the SCL-model.");

    m.def("embed", [](const FiniteResiduatedAlgebra& a, const std::string& tmpl) {
        return build_embedding(a, parse_template(tmpl));
    }, py::arg("algebra"), py::arg("template"));

    m.def("countermodel", [](const std::vector<std::string>& hyps, const std::string& goal, const std::string& mode,
                             std::size_t max_states, std::size_t max_letters, std::size_t max_alg,
                             std::size_t sample_limit, std::uint64_t seed, std::size_t jobs) {
        const auto md = parse_mode(mode);
        HypothesisSet hs;
        for (const auto& h : hyps)
            hs.push_back(parse_sequent(h, md));
        CountermodelBudget b{max_states, max_letters, max_alg, sample_limit, seed, jobs};
        const auto r = countermodel_search(hs, parse_sequent(goal, md), md, b);
        py::dict d;
        d["found"] = r.found;
        d["checked"] = r.checked_count;
        if (!r.found)
            return d;
        const auto& scl = r.model->algebra_ptr();
        d["source"] = r.source;
        d["dfa"] = scl->monoid().dfa();
        d["scl"] = PyScl{scl};
        py::dict assignment;
        for (const auto& [v, c] : r.model->assignment())
            assignment[py::str(v)] = PyConcept{scl, c};
        d["assignment"] = assignment;
        d["bottom"] = PyConcept{scl, r.model->bottom()};
        return d;
    }, py::arg("hyps"), py::arg("goal"), py::arg("mode") = "restricted", py::arg("max_states") = 3,
       py::arg("max_letters") = 2, py::arg("max_alg") = 4, py::arg("sample_limit") = 20000, py::arg("seed") = 1,
       py::arg("jobs") = 1);

    m.def("two_letter_check", [](const Dfa& d, const std::string& mode, std::size_t word_bound) {
        const TwoLetterTransfer t(d, parse_word_mode(mode));
        std::vector<std::tuple<bool, bool, bool>> out;
        for (const auto& c : t.source().enumerate_concepts()) {
            const auto r = t.check(c, word_bound);
            out.emplace_back(r.precondition_nonempty_word, r.precondition_nonempty_polar, r.equal);
        }
        return out;
    }, py::arg("dfa"), py::arg("mode") = "positive", py::arg("word_bound") = 6,
       "For every closed set: (nonempty word, nonempty polar, encoding commutes with closure).");
}
