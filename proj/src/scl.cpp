#include "lambek/scl.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_set>

namespace lambek {

namespace {

std::uint64_t next_algebra_id()
{
    static std::atomic<std::uint64_t> counter{1};
    return counter++;
}

}  // namespace

SclAlgebra::SclAlgebra(SyntacticMonoid monoid)
    : monoid_(std::move(monoid)), id_(next_algebra_id()), top_(id_, {}, {}), bot_(id_, {}, {})
{
    const std::size_t nb = monoid_.size();
    const std::size_t nc = monoid_.contexts().size();
    extents_.assign(nc, BehaviorSet(nb));
    accepting_.assign(nb, ContextSet(nc));
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t t = 0; t < nb; ++t)
            if (monoid_.context_accepts(c, t)) {
                extents_[c].set(t);
                accepting_[t].set(c);
            }
    BehaviorSet all(nb);
    all.set();
    top_ = closure(all);
    bot_ = closure(empty_set());
    if (auto id = monoid_.identity())
        unit_ = closure(singleton(*id));
}

std::shared_ptr<const SclAlgebra> SclAlgebra::create(const Dfa& lang, WordMode mode)
{
    return std::make_shared<const SclAlgebra>(SyntacticMonoid::build(lang.minimized(), mode));
}

BehaviorSet SclAlgebra::singleton(std::size_t behavior) const
{
    BehaviorSet s = empty_set();
    s.set(behavior);
    return s;
}

BehaviorSet SclAlgebra::behaviors_of(const std::vector<Word>& words) const
{
    BehaviorSet s = empty_set();
    for (const auto& w : words)
        if (auto b = monoid_.behavior_of(w))
            s.set(*b);
    return s;
}

ContextSet SclAlgebra::polar_of(const BehaviorSet& m) const
{
    ContextSet c(context_count());
    c.set();
    for (auto t = m.find_first(); t != BehaviorSet::npos; t = m.find_next(t))
        c &= accepting_[t];
    return c;
}

BehaviorSet SclAlgebra::polar_back(const ContextSet& c) const
{
    BehaviorSet m(behavior_count());
    m.set();
    for (auto i = c.find_first(); i != ContextSet::npos; i = c.find_next(i))
        m &= extents_[i];
    return m;
}

Concept SclAlgebra::closure(const BehaviorSet& m) const
{
    ContextSet c = polar_of(m);
    BehaviorSet closed = polar_back(c);
    return Concept(id_, std::move(closed), std::move(c));
}

bool SclAlgebra::is_closed(const BehaviorSet& m) const
{
    return polar_back(polar_of(m)) == m;
}

Concept SclAlgebra::as_concept(const BehaviorSet& m) const
{
    ContextSet c = polar_of(m);
    if (polar_back(c) != m)
        throw std::logic_error("behavior set is not Galois-closed");
    return Concept(id_, m, std::move(c));
}

const Concept& SclAlgebra::unit() const
{
    if (!unit_)
        throw std::logic_error("the unit {ε}^{▷◁} exists only in epsilon mode");
    return *unit_;
}

void SclAlgebra::check(const Concept& c) const
{
    if (c.algebra_id() != id_)
        throw MixedAlgebraError();
}

Concept SclAlgebra::meet(const Concept& a, const Concept& b) const
{
    check(a);
    check(b);
    // Intersections of closed sets are closed; the polar is the closure of
    // the union of polars, which we recompute directly.
    return as_concept(a.behaviors() & b.behaviors());
}

Concept SclAlgebra::join(const Concept& a, const Concept& b) const
{
    check(a);
    check(b);
    return closure(a.behaviors() | b.behaviors());
}

BehaviorSet SclAlgebra::product_set(const BehaviorSet& a, const BehaviorSet& b) const
{
    BehaviorSet out = empty_set();
    for (auto s = a.find_first(); s != BehaviorSet::npos; s = a.find_next(s))
        for (auto t = b.find_first(); t != BehaviorSet::npos; t = b.find_next(t))
            out.set(monoid_.product(s, t));
    return out;
}

Concept SclAlgebra::prod(const Concept& a, const Concept& b) const
{
    check(a);
    check(b);
    return closure(product_set(a.behaviors(), b.behaviors()));
}

BehaviorSet SclAlgebra::ldiv_set(const BehaviorSet& den, const BehaviorSet& num) const
{
    BehaviorSet out = empty_set();
    for (std::size_t t = 0; t < behavior_count(); ++t) {
        bool ok = true;
        for (auto s = den.find_first(); ok && s != BehaviorSet::npos; s = den.find_next(s))
            ok = num[monoid_.product(s, t)];
        out[t] = ok;
    }
    return out;
}

BehaviorSet SclAlgebra::rdiv_set(const BehaviorSet& num, const BehaviorSet& den) const
{
    BehaviorSet out = empty_set();
    for (std::size_t t = 0; t < behavior_count(); ++t) {
        bool ok = true;
        for (auto s = den.find_first(); ok && s != BehaviorSet::npos; s = den.find_next(s))
            ok = num[monoid_.product(t, s)];
        out[t] = ok;
    }
    return out;
}

Concept SclAlgebra::ldiv(const Concept& den, const Concept& num) const
{
    check(den);
    check(num);
    return as_concept(ldiv_set(den.behaviors(), num.behaviors()));
}

Concept SclAlgebra::rdiv(const Concept& num, const Concept& den) const
{
    check(num);
    check(den);
    return as_concept(rdiv_set(num.behaviors(), den.behaviors()));
}

BehaviorSet SclAlgebra::power_union(const BehaviorSet& a, bool with_identity) const
{
    BehaviorSet acc = a;
    BehaviorSet frontier = a;
    while (frontier.any()) {
        BehaviorSet next = product_set(frontier, a);
        frontier = next - acc;
        acc |= next;
    }
    if (with_identity) {
        if (!monoid_.identity())
            throw std::logic_error("Kleene star needs epsilon mode");
        acc.set(*monoid_.identity());
    }
    return acc;
}

Concept SclAlgebra::plus_iter(const Concept& a) const
{
    check(a);
    return closure(power_union(a.behaviors(), false));
}

Concept SclAlgebra::star_iter(const Concept& a) const
{
    check(a);
    if (mode() != WordMode::Epsilon)
        throw std::logic_error("Kleene star needs epsilon mode");
    return closure(power_union(a.behaviors(), true));
}

bool SclAlgebra::contains_word(const Concept& c, std::span<const std::size_t> word) const
{
    check(c);
    const auto b = monoid_.behavior_of(word);
    return b && c.contains(*b);
}

bool SclAlgebra::replaceable(std::span<const std::size_t> w1, std::span<const std::size_t> w2) const
{
    const auto b1 = monoid_.behavior_of(w1);
    const auto b2 = monoid_.behavior_of(w2);
    if (!b1 || !b2)
        throw std::invalid_argument("replaceability is defined on words of the universe only");
    return accepting_[*b2].is_subset_of(accepting_[*b1]);
}

std::vector<Concept> SclAlgebra::enumerate_concepts(std::size_t cap) const
{
    // Closed sets are exactly the intersections of context extents.
    std::unordered_set<BehaviorSet> distinct(extents_.begin(), extents_.end());
    std::vector<BehaviorSet> gens(distinct.begin(), distinct.end());
    std::sort(gens.begin(), gens.end());

    std::unordered_set<BehaviorSet> seen;
    std::vector<BehaviorSet> sets;
    sets.push_back(top_.behaviors());
    seen.insert(top_.behaviors());
    for (const auto& e : gens) {
        const std::size_t n = sets.size();
        for (std::size_t i = 0; i < n; ++i) {
            BehaviorSet x = sets[i] & e;
            if (seen.insert(x).second) {
                sets.push_back(std::move(x));
                if (sets.size() > cap)
                    throw LatticeTooLarge("more than " + std::to_string(cap) + " concepts");
            }
        }
    }
    std::sort(sets.begin(), sets.end(), [](const BehaviorSet& a, const BehaviorSet& b) {
        const auto ca = a.count();
        const auto cb = b.count();
        return ca != cb ? ca < cb : a < b;
    });
    std::vector<Concept> out;
    out.reserve(sets.size());
    for (auto& s : sets)
        out.push_back(closure(s));
    return out;
}

bool SclAlgebra::is_local_zero(const Concept& z) const
{
    check(z);
    if (!is_closed(z.behaviors()))
        return false;
    return prod(z, z) == z && prod(top_, z) == z && prod(z, top_) == z;
}

bool SclAlgebra::is_local_zero_exhaustive(const Concept& z, std::size_t cap) const
{
    check(z);
    for (const auto& m : enumerate_concepts(cap)) {
        if (!z.subset_of(m))
            continue;
        if (!(prod(m, z) == z) || !(prod(z, m) == z))
            return false;
    }
    return true;
}

std::vector<Word> SclAlgebra::witnesses(const Concept& c) const
{
    check(c);
    std::vector<Word> out;
    for (auto t = c.behaviors().find_first(); t != BehaviorSet::npos; t = c.behaviors().find_next(t))
        out.push_back(monoid_.element(t).witness);
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

UpperCone::UpperCone(std::shared_ptr<const SclAlgebra> algebra, Concept floor)
    : algebra_(std::move(algebra)), floor_(std::move(floor))
{
    if (floor_.algebra_id() != algebra_->id())
        throw MixedAlgebraError();
    if (!algebra_->is_local_zero(floor_))
        throw std::invalid_argument("upper cone floor is not a local zero");
}

std::vector<Concept> UpperCone::enumerate_concepts(std::size_t cap) const
{
    std::vector<Concept> out;
    for (auto& c : algebra_->enumerate_concepts(cap))
        if (contains(c))
            out.push_back(std::move(c));
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Word> all_words(std::size_t k, std::size_t min_len, std::size_t max_len)
{
    std::vector<Word> out;
    std::vector<Word> layer{Word{}};
    for (std::size_t len = 0; len <= max_len; ++len) {
        if (len >= min_len)
            out.insert(out.end(), layer.begin(), layer.end());
        if (len == max_len || k == 0)
            break;
        std::vector<Word> next;
        next.reserve(layer.size() * k);
        for (const auto& w : layer)
            for (std::size_t a = 0; a < k; ++a) {
                Word x = w;
                x.push_back(a);
                next.push_back(std::move(x));
            }
        layer = std::move(next);
    }
    return out;
}

std::set<Word> oracle_closure(const Dfa& lang, const std::vector<Word>& m, std::size_t word_len_bound,
                              std::size_t ctx_len_bound, WordMode mode)
{
    const std::size_t k = lang.alphabet().size();
    const auto short_words = all_words(k, 0, ctx_len_bound);

    // Contexts (x, y) with |x| + |y| ≤ bound that accept every word of m.
    struct Ctx {
        std::size_t after_x;
        const Word* y;
    };
    std::vector<Ctx> polar;
    for (const auto& x : short_words) {
        const std::size_t qx = lang.run(lang.start(), x);
        for (const auto& y : short_words) {
            if (x.size() + y.size() > ctx_len_bound)
                continue;
            bool ok = true;
            for (const auto& w : m) {
                if (!lang.is_accepting(lang.run(lang.run(qx, w), y))) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                polar.push_back({qx, &y});
        }
    }

    std::set<Word> out;
    const std::size_t min_len = mode == WordMode::Positive ? 1 : 0;
    for (const auto& v : all_words(k, min_len, word_len_bound)) {
        bool ok = true;
        for (const auto& c : polar) {
            if (!lang.is_accepting(lang.run(lang.run(c.after_x, v), *c.y))) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.insert(v);
    }
    return out;
}

}  // namespace lambek
