#include "lambek/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lambek {

std::string to_string(AlgebraKind kind)
{
    switch (kind) {
    case AlgebraKind::SRBL: return "SRBL";
    case AlgebraKind::RBL: return "RBL";
    case AlgebraKind::OmegaPAL: return "wPAL";
    case AlgebraKind::OmegaAL: return "wAL";
    }
    return "?";
}

AlgebraKind parse_algebra_kind(std::string_view text)
{
    if (text == "SRBL" || text == "srbl")
        return AlgebraKind::SRBL;
    if (text == "RBL" || text == "rbl")
        return AlgebraKind::RBL;
    if (text == "wPAL" || text == "ωPAL" || text == "omegaPAL" || text == "wpal")
        return AlgebraKind::OmegaPAL;
    if (text == "wAL" || text == "ωAL" || text == "omegaAL" || text == "wal")
        return AlgebraKind::OmegaAL;
    throw std::invalid_argument("unknown algebra kind '" + std::string(text) + "'");
}

bool has_unit(AlgebraKind kind)
{
    return kind == AlgebraKind::RBL || kind == AlgebraKind::OmegaAL;
}

bool has_iteration(AlgebraKind kind)
{
    return kind == AlgebraKind::OmegaPAL || kind == AlgebraKind::OmegaAL;
}

std::optional<std::size_t> FiniteResiduatedAlgebra::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == name)
            return i;
    return std::nullopt;
}

namespace {

using Order = std::vector<std::vector<bool>>;

std::optional<std::size_t> greatest(const Order& leq, const std::vector<std::size_t>& candidates)
{
    for (auto m : candidates) {
        bool ok = true;
        for (auto x : candidates)
            if (!leq[x][m]) {
                ok = false;
                break;
            }
        if (ok)
            return m;
    }
    return std::nullopt;
}

std::optional<std::size_t> least(const Order& leq, const std::vector<std::size_t>& candidates)
{
    for (auto m : candidates) {
        bool ok = true;
        for (auto x : candidates)
            if (!leq[m][x]) {
                ok = false;
                break;
            }
        if (ok)
            return m;
    }
    return std::nullopt;
}

std::optional<std::size_t> supremum(const Order& leq, const std::vector<std::size_t>& xs)
{
    std::vector<std::size_t> ub;
    for (std::size_t m = 0; m < leq.size(); ++m)
        if (std::all_of(xs.begin(), xs.end(), [&](std::size_t x) { return bool(leq[x][m]); }))
            ub.push_back(m);
    return least(leq, ub);
}

std::optional<std::size_t> infimum(const Order& leq, const std::vector<std::size_t>& xs)
{
    std::vector<std::size_t> lb;
    for (std::size_t m = 0; m < leq.size(); ++m)
        if (std::all_of(xs.begin(), xs.end(), [&](std::size_t x) { return bool(leq[m][x]); }))
            lb.push_back(m);
    return greatest(leq, lb);
}

std::size_t require(std::optional<std::size_t> v, const std::string& what)
{
    if (!v)
        throw std::invalid_argument(what);
    return *v;
}

}  // namespace

std::optional<std::size_t> power_supremum(const FiniteResiduatedAlgebra& alg, std::size_t a, std::size_t from)
{
    std::vector<std::size_t> powers;
    std::set<std::size_t> seen;
    if (from == 0) {
        if (!alg.unit)
            return std::nullopt;
        powers.push_back(*alg.unit);
        seen.insert(*alg.unit);
    }
    std::size_t p = a;
    while (seen.insert(p).second) {
        powers.push_back(p);
        p = alg.prod[p][a];
    }
    return supremum(alg.leq, powers);
}

FiniteResiduatedAlgebra FiniteResiduatedAlgebra::from_order_and_product(std::vector<std::string> elements, Order leq,
                                                                        Table prod, std::optional<std::size_t> unit,
                                                                        AlgebraKind kind)
{
    FiniteResiduatedAlgebra alg;
    const std::size_t n = elements.size();
    if (n == 0)
        throw std::invalid_argument("an algebra needs at least one element");
    if (leq.size() != n || prod.size() != n)
        throw std::invalid_argument("table dimensions do not match the element count");
    for (std::size_t i = 0; i < n; ++i) {
        if (leq[i].size() != n || prod[i].size() != n)
            throw std::invalid_argument("table dimensions do not match the element count");
        for (auto v : prod[i])
            if (v >= n)
                throw std::invalid_argument("product table refers to an unknown element");
    }
    if (unit && *unit >= n)
        throw std::invalid_argument("unit is not an element");
    alg.elements = std::move(elements);
    alg.leq = std::move(leq);
    alg.prod = std::move(prod);
    alg.unit = unit;
    alg.kind = kind;

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    alg.top = require(greatest(alg.leq, all), "order has no top element");
    alg.bot = require(least(alg.leq, all), "order has no bottom element");
    alg.meet.assign(n, std::vector<std::size_t>(n));
    alg.join.assign(n, std::vector<std::size_t>(n));
    alg.ldiv.assign(n, std::vector<std::size_t>(n));
    alg.rdiv.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            alg.meet[a][b] = require(infimum(alg.leq, {a, b}), "order is not a lattice");
            alg.join[a][b] = require(supremum(alg.leq, {a, b}), "order is not a lattice");
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<std::size_t> right, left;
            for (std::size_t b = 0; b < n; ++b) {
                if (alg.leq[alg.prod[a][b]][c])
                    right.push_back(b);
                if (alg.leq[alg.prod[b][a]][c])
                    left.push_back(b);
            }
            alg.ldiv[a][c] = require(greatest(alg.leq, right), "left residual does not exist");
            alg.rdiv[c][a] = require(greatest(alg.leq, left), "right residual does not exist");
        }
    if (has_iteration(kind)) {
        std::vector<std::size_t> plus(n);
        for (std::size_t a = 0; a < n; ++a)
            plus[a] = require(power_supremum(alg, a, 1), "positive iteration supremum does not exist");
        alg.plus = std::move(plus);
        if (unit) {
            std::vector<std::size_t> star(n);
            for (std::size_t a = 0; a < n; ++a)
                star[a] = require(power_supremum(alg, a, 0), "Kleene iteration supremum does not exist");
            alg.star = std::move(star);
        }
    }
    return alg;
}

namespace {

std::size_t element_ref(const std::vector<std::string>& names, const nlohmann::json& v)
{
    if (v.is_number_unsigned()) {
        auto i = v.get<std::size_t>();
        if (i >= names.size())
            throw std::invalid_argument("element index out of range");
        return i;
    }
    if (v.is_string()) {
        auto s = v.get<std::string>();
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == s)
                return i;
        throw std::invalid_argument("unknown element '" + s + "'");
    }
    throw std::invalid_argument("element reference must be a name or an index");
}

Table binary_table(const std::vector<std::string>& names, const nlohmann::json& j, const char* field)
{
    const std::size_t n = names.size();
    if (!j.is_array() || j.size() != n)
        throw std::invalid_argument(std::string("table '") + field + "' must be " + std::to_string(n) + "x" +
                                    std::to_string(n));
    Table t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw std::invalid_argument(std::string("table '") + field + "' has a malformed row");
        for (std::size_t k = 0; k < n; ++k)
            t[i][k] = element_ref(names, j[i][k]);
    }
    return t;
}

std::vector<std::size_t> unary_table(const std::vector<std::string>& names, const nlohmann::json& j, const char* field)
{
    if (!j.is_array() || j.size() != names.size())
        throw std::invalid_argument(std::string("table '") + field + "' has the wrong length");
    std::vector<std::size_t> t(names.size());
    for (std::size_t i = 0; i < names.size(); ++i)
        t[i] = element_ref(names, j[i]);
    return t;
}

nlohmann::json named(const std::vector<std::string>& names, const Table& t)
{
    auto out = nlohmann::json::array();
    for (const auto& row : t) {
        auto r = nlohmann::json::array();
        for (auto v : row)
            r.push_back(names[v]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

FiniteResiduatedAlgebra FiniteResiduatedAlgebra::from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("elements") || !j.contains("leq") || !j.contains("prod"))
        throw std::invalid_argument("algebra file needs 'elements', 'leq' and 'prod'");
    auto names = j.at("elements").get<std::vector<std::string>>();
    const std::size_t n = names.size();
    std::set<std::string> distinct(names.begin(), names.end());
    if (distinct.size() != n)
        throw std::invalid_argument("element names must be distinct");

    const auto& jl = j.at("leq");
    if (!jl.is_array() || jl.size() != n)
        throw std::invalid_argument("'leq' must be an n x n matrix");
    Order leq(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a) {
        if (!jl[a].is_array() || jl[a].size() != n)
            throw std::invalid_argument("'leq' has a malformed row");
        for (std::size_t b = 0; b < n; ++b) {
            const auto& v = jl[a][b];
            leq[a][b] = v.is_boolean() ? v.get<bool>() : v.get<int>() != 0;
        }
    }
    Table prod = binary_table(names, j.at("prod"), "prod");
    std::optional<std::size_t> unit;
    if (j.contains("unit") && !j.at("unit").is_null())
        unit = element_ref(names, j.at("unit"));

    AlgebraKind kind = unit ? AlgebraKind::OmegaAL : AlgebraKind::OmegaPAL;
    if (j.contains("kind"))
        kind = parse_algebra_kind(j.at("kind").get<std::string>());
    if (has_unit(kind) && !unit)
        throw std::invalid_argument("kind " + to_string(kind) + " needs a unit");
    // A declared unit is dropped from the signature of a unitless kind.
    if (!has_unit(kind))
        unit.reset();

    auto alg = from_order_and_product(names, leq, prod, unit, kind);

    if (j.contains("top"))
        alg.top = element_ref(names, j.at("top"));
    if (j.contains("bot"))
        alg.bot = element_ref(names, j.at("bot"));
    if (j.contains("meet"))
        alg.meet = binary_table(names, j.at("meet"), "meet");
    if (j.contains("join"))
        alg.join = binary_table(names, j.at("join"), "join");
    if (j.contains("ldiv"))
        alg.ldiv = binary_table(names, j.at("ldiv"), "ldiv");
    if (j.contains("rdiv"))
        alg.rdiv = binary_table(names, j.at("rdiv"), "rdiv");
    if (j.contains("plus"))
        alg.plus = unary_table(names, j.at("plus"), "plus");
    if (j.contains("star"))
        alg.star = unary_table(names, j.at("star"), "star");
    return alg;
}

FiniteResiduatedAlgebra FiniteResiduatedAlgebra::read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open algebra file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("algebra file '" + path + "': " + e.what());
    }
    return from_json(j);
}

nlohmann::json FiniteResiduatedAlgebra::to_json() const
{
    nlohmann::json j;
    j["elements"] = elements;
    auto jl = nlohmann::json::array();
    for (const auto& row : leq) {
        auto r = nlohmann::json::array();
        for (bool b : row)
            r.push_back(b ? 1 : 0);
        jl.push_back(std::move(r));
    }
    j["leq"] = std::move(jl);
    j["prod"] = named(elements, prod);
    j["unit"] = unit ? nlohmann::json(elements[*unit]) : nlohmann::json(nullptr);
    j["top"] = elements[top];
    j["bot"] = elements[bot];
    j["kind"] = to_string(kind);
    j["ldiv"] = named(elements, ldiv);
    j["rdiv"] = named(elements, rdiv);
    j["meet"] = named(elements, meet);
    j["join"] = named(elements, join);
    if (plus) {
        auto p = nlohmann::json::array();
        for (auto v : *plus)
            p.push_back(elements[v]);
        j["plus"] = std::move(p);
    }
    if (star) {
        auto s = nlohmann::json::array();
        for (auto v : *star)
            s.push_back(elements[v]);
        j["star"] = std::move(s);
    }
    return j;
}

// ---------------------------------------------------------------------------

std::vector<Violation> validate(const FiniteResiduatedAlgebra& alg)
{
    std::vector<Violation> out;
    const std::size_t n = alg.size();
    const auto& e = alg.elements;
    auto fail = [&](std::string axiom, std::string witness) { out.push_back({std::move(axiom), std::move(witness)}); };

    auto shape_ok = [&](const Table& t) {
        if (t.size() != n)
            return false;
        for (const auto& row : t) {
            if (row.size() != n)
                return false;
            for (auto v : row)
                if (v >= n)
                    return false;
        }
        return true;
    };
    if (n == 0 || alg.leq.size() != n || !shape_ok(alg.prod) || !shape_ok(alg.ldiv) || !shape_ok(alg.rdiv) ||
        !shape_ok(alg.meet) || !shape_ok(alg.join) || alg.top >= n || alg.bot >= n) {
        fail("malformed tables", "dimensions or element references");
        return out;
    }

    for (std::size_t a = 0; a < n; ++a) {
        if (!alg.le(a, a))
            fail("reflexivity", e[a]);
        if (!alg.le(a, alg.top))
            fail("top bound", e[a]);
        if (!alg.le(alg.bot, a))
            fail("bottom bound", e[a]);
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b && alg.le(a, b) && alg.le(b, a))
                fail("antisymmetry", e[a] + ", " + e[b]);
            for (std::size_t c = 0; c < n; ++c)
                if (alg.le(a, b) && alg.le(b, c) && !alg.le(a, c))
                    fail("transitivity", e[a] + ", " + e[b] + ", " + e[c]);
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::string ab = e[a] + ", " + e[b];
            const auto m = alg.meet[a][b];
            const auto j = alg.join[a][b];
            if (!alg.le(m, a) || !alg.le(m, b))
                fail("meet is a lower bound", ab);
            if (!alg.le(a, j) || !alg.le(b, j))
                fail("join is an upper bound", ab);
            for (std::size_t c = 0; c < n; ++c) {
                if (alg.le(c, a) && alg.le(c, b) && !alg.le(c, m))
                    fail("meet is greatest", ab + ", " + e[c]);
                if (alg.le(a, c) && alg.le(b, c) && !alg.le(j, c))
                    fail("join is least", ab + ", " + e[c]);
            }
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const std::string abc = e[a] + ", " + e[b] + ", " + e[c];
                if (alg.prod[alg.prod[a][b]][c] != alg.prod[a][alg.prod[b][c]])
                    fail("associativity", abc);
                const bool p = alg.le(alg.prod[a][b], c);
                if (p != alg.le(b, alg.ldiv[a][c]))
                    fail("left residuation", abc);
                if (p != alg.le(a, alg.rdiv[c][b]))
                    fail("right residuation", abc);
            }

    if (has_unit(alg.kind) && !alg.unit)
        fail("unit", "missing for kind " + to_string(alg.kind));
    if (alg.unit) {
        if (*alg.unit >= n) {
            fail("unit", "not an element");
            return out;
        }
        for (std::size_t a = 0; a < n; ++a)
            if (alg.prod[*alg.unit][a] != a || alg.prod[a][*alg.unit] != a)
                fail("unit", e[a]);
    }

    auto check_iteration = [&](const std::optional<std::vector<std::size_t>>& table, std::size_t from,
                               const char* axiom) {
        if (!table)
            return;
        if (table->size() != n) {
            fail(axiom, "table has the wrong length");
            return;
        }
        for (std::size_t a = 0; a < n; ++a) {
            const auto expected = power_supremum(alg, a, from);
            if (!expected || (*table)[a] != *expected)
                fail(axiom, e[a]);
        }
    };
    if (has_iteration(alg.kind) && !alg.plus && !alg.star)
        fail("iteration", "missing table for kind " + to_string(alg.kind));
    if (alg.kind == AlgebraKind::OmegaAL && !alg.star)
        fail("Kleene iteration", "missing table");
    check_iteration(alg.plus, 1, "positive iteration is the supremum of powers");
    if (alg.star && !alg.unit)
        fail("Kleene iteration", "needs a unit");
    else
        check_iteration(alg.star, 0, "Kleene iteration is the supremum of powers");
    return out;
}

// ---------------------------------------------------------------------------

std::size_t evaluate_formula(const FiniteResiduatedAlgebra& alg, const AlgebraInterpretation& interp,
                             const Formula& f)
{
    switch (f.kind()) {
    case Connective::Var: {
        auto it = interp.find(f.name());
        if (it == interp.end())
            throw EvaluationError("variable '" + f.name() + "' is not interpreted");
        if (it->second >= alg.size())
            throw EvaluationError("variable '" + f.name() + "' is mapped outside the algebra");
        return it->second;
    }
    case Connective::Top: return alg.top;
    case Connective::Bot: return alg.bot;
    case Connective::One:
        if (!alg.unit)
            throw EvaluationError("the algebra has no unit");
        return *alg.unit;
    case Connective::Prod:
        return alg.prod[evaluate_formula(alg, interp, *f.left())][evaluate_formula(alg, interp, *f.right())];
    case Connective::LDiv:
        return alg.ldiv[evaluate_formula(alg, interp, *f.den())][evaluate_formula(alg, interp, *f.num())];
    case Connective::RDiv:
        return alg.rdiv[evaluate_formula(alg, interp, *f.num())][evaluate_formula(alg, interp, *f.den())];
    case Connective::Meet:
        return alg.meet[evaluate_formula(alg, interp, *f.left())][evaluate_formula(alg, interp, *f.right())];
    case Connective::Join:
        return alg.join[evaluate_formula(alg, interp, *f.left())][evaluate_formula(alg, interp, *f.right())];
    case Connective::Plus: {
        const auto a = evaluate_formula(alg, interp, *f.body());
        if (alg.plus)
            return (*alg.plus)[a];
        if (auto s = power_supremum(alg, a, 1))
            return *s;
        throw EvaluationError("positive iteration has no supremum");
    }
    case Connective::Star: {
        if (!alg.unit)
            throw EvaluationError("Kleene iteration needs a unit");
        const auto a = evaluate_formula(alg, interp, *f.body());
        if (alg.star)
            return (*alg.star)[a];
        if (auto s = power_supremum(alg, a, 0))
            return *s;
        throw EvaluationError("Kleene iteration has no supremum");
    }
    }
    throw EvaluationError("unknown connective");
}

bool evaluate_sequent(const FiniteResiduatedAlgebra& alg, const AlgebraInterpretation& interp, const Sequent& s)
{
    const auto rhs = evaluate_formula(alg, interp, *s.succedent);
    if (s.antecedent.empty()) {
        if (!alg.unit)
            throw EvaluationError("empty antecedent needs a unit");
        return alg.le(*alg.unit, rhs);
    }
    std::size_t acc = evaluate_formula(alg, interp, *s.antecedent.front());
    for (std::size_t i = 1; i < s.antecedent.size(); ++i)
        acc = alg.prod[acc][evaluate_formula(alg, interp, *s.antecedent[i])];
    return alg.le(acc, rhs);
}

// ---------------------------------------------------------------------------

namespace {

LatticeShape make_shape(std::string name, std::vector<std::string> elements,
                        const std::vector<std::pair<std::size_t, std::size_t>>& covers)
{
    const std::size_t n = elements.size();
    Order leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        leq[i][i] = true;
    for (auto [a, b] : covers)
        leq[a][b] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (leq[i][k] && leq[k][j])
                    leq[i][j] = true;
    return {std::move(name), std::move(elements), std::move(leq)};
}

LatticeShape chain(std::size_t n)
{
    static const std::vector<std::string> middle{"a", "b", "c", "d", "e", "f"};
    std::vector<std::string> names;
    if (n == 1) {
        names.push_back("o");
    } else {
        names.push_back("bot");
        for (std::size_t i = 0; i + 2 < n; ++i)
            names.push_back(middle.at(i));
        names.push_back("top");
    }
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t i = 0; i + 1 < n; ++i)
        covers.emplace_back(i, i + 1);
    return make_shape("chain" + std::to_string(n), std::move(names), covers);
}

std::vector<std::vector<std::size_t>> automorphisms(const Order& leq)
{
    const std::size_t n = leq.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    do {
        bool ok = true;
        for (std::size_t a = 0; ok && a < n; ++a)
            for (std::size_t b = 0; ok && b < n; ++b)
                ok = leq[a][b] == leq[perm[a]][perm[b]];
        if (ok)
            out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

bool is_canonical(const Table& prod, const std::vector<std::vector<std::size_t>>& autos)
{
    const std::size_t n = prod.size();
    for (const auto& p : autos) {
        std::vector<std::size_t> inv(n);
        for (std::size_t i = 0; i < n; ++i)
            inv[p[i]] = i;
        Table q(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                q[a][b] = p[prod[inv[a]][inv[b]]];
        if (q < prod)
            return false;
    }
    return true;
}

class ProductEnumerator {
public:
    ProductEnumerator(const LatticeShape& shape) : shape_(shape), n_(shape.elements.size())
    {
        const auto& leq = shape.leq;
        std::vector<std::size_t> all(n_);
        std::iota(all.begin(), all.end(), 0);
        bot_ = *least(leq, all);
        join_.assign(n_, std::vector<std::size_t>(n_));
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                join_[a][b] = *supremum(leq, {a, b});
        for (std::size_t x = 0; x < n_; ++x) {
            if (x == bot_)
                continue;
            std::vector<std::size_t> below;
            for (std::size_t y = 0; y < n_; ++y)
                if (y != x && leq[y][x])
                    below.push_back(y);
            if (*supremum(leq, below) != x)
                irreducibles_.push_back(x);
        }
        cells_.assign(irreducibles_.size() * irreducibles_.size(), 0);
    }

    void run(const std::function<bool(const Table&)>& visit)
    {
        visit_ = &visit;
        stop_ = false;
        assign(0);
    }

private:
    const LatticeShape& shape_;
    std::size_t n_;
    std::size_t bot_ = 0;
    Table join_;
    std::vector<std::size_t> irreducibles_;
    std::vector<std::size_t> cells_;
    const std::function<bool(const Table&)>* visit_ = nullptr;
    bool stop_ = false;

    void assign(std::size_t cell)
    {
        if (stop_)
            return;
        const std::size_t k = irreducibles_.size();
        if (cell == k * k) {
            emit();
            return;
        }
        const std::size_t i = cell / k;
        const std::size_t j = cell % k;
        for (std::size_t v = 0; v < n_ && !stop_; ++v) {
            bool ok = true;
            // Monotone in both arguments on the assigned cells.
            for (std::size_t c = 0; ok && c < cell; ++c) {
                const std::size_t i2 = c / k;
                const std::size_t j2 = c % k;
                const auto& leq = shape_.leq;
                const auto& x = irreducibles_;
                if (leq[x[i2]][x[i]] && leq[x[j2]][x[j]] && !leq[cells_[c]][v])
                    ok = false;
                if (leq[x[i]][x[i2]] && leq[x[j]][x[j2]] && !leq[v][cells_[c]])
                    ok = false;
            }
            if (!ok)
                continue;
            cells_[cell] = v;
            assign(cell + 1);
        }
    }

    void emit()
    {
        const std::size_t k = irreducibles_.size();
        const auto& leq = shape_.leq;
        Table prod(n_, std::vector<std::size_t>(n_, bot_));
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        if (leq[irreducibles_[i]][a] && leq[irreducibles_[j]][b])
                            prod[a][b] = join_[prod[a][b]][cells_[i * k + j]];
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                for (std::size_t c = 0; c < n_; ++c) {
                    if (prod[a][join_[b][c]] != join_[prod[a][b]][prod[a][c]])
                        return;
                    if (prod[join_[b][c]][a] != join_[prod[b][a]][prod[c][a]])
                        return;
                    if (prod[prod[a][b]][c] != prod[a][prod[b][c]])
                        return;
                }
        if (!(*visit_)(prod))
            stop_ = true;
    }
};

std::optional<std::size_t> find_unit(const Table& prod)
{
    const std::size_t n = prod.size();
    for (std::size_t u = 0; u < n; ++u) {
        bool ok = true;
        for (std::size_t a = 0; ok && a < n; ++a)
            ok = prod[u][a] == a && prod[a][u] == a;
        if (ok)
            return u;
    }
    return std::nullopt;
}

}  // namespace

std::vector<LatticeShape> lattice_shapes(std::size_t size)
{
    std::vector<LatticeShape> out;
    if (size == 0)
        return out;
    out.push_back(chain(size));
    if (size == 4)
        out.push_back(make_shape("diamond", {"bot", "a", "b", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
    if (size == 5) {
        out.push_back(make_shape("M3", {"bot", "a", "b", "c", "top"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}));
        out.push_back(make_shape("N5", {"bot", "a", "b", "c", "top"}, {{0, 1}, {1, 2}, {0, 3}, {2, 4}, {3, 4}}));
        out.push_back(
            make_shape("1+diamond", {"bot", "a", "b", "c", "top"}, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}}));
        out.push_back(
            make_shape("diamond+1", {"bot", "a", "b", "c", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}}));
    }
    return out;
}

void for_each_algebra(std::size_t max_size, AlgebraKind kind,
                      const std::function<bool(const FiniteResiduatedAlgebra&)>& visit)
{
    if (max_size > 5)
        throw std::invalid_argument("algebra enumeration supports at most 5 elements");
    for (std::size_t size = 1; size <= max_size; ++size) {
        for (const auto& shape : lattice_shapes(size)) {
            const auto autos = automorphisms(shape.leq);
            bool keep_going = true;
            ProductEnumerator gen(shape);
            gen.run([&](const Table& prod) {
                if (!is_canonical(prod, autos))
                    return true;
                std::optional<std::size_t> unit;
                if (has_unit(kind)) {
                    unit = find_unit(prod);
                    if (!unit)
                        return true;
                }
                FiniteResiduatedAlgebra alg;
                try {
                    alg = FiniteResiduatedAlgebra::from_order_and_product(shape.elements, shape.leq, prod, unit,
                                                                          kind);
                } catch (const std::invalid_argument&) {
                    return true;
                }
                if (!validate(alg).empty())
                    return true;
                keep_going = visit(alg);
                return keep_going;
            });
            if (!keep_going)
                return;
        }
    }
}

std::vector<FiniteResiduatedAlgebra> enumerate_algebras(std::size_t max_size, AlgebraKind kind)
{
    std::vector<FiniteResiduatedAlgebra> out;
    for_each_algebra(max_size, kind, [&](const FiniteResiduatedAlgebra& a) {
        out.push_back(a);
        return true;
    });
    return out;
}

}  // namespace lambek
