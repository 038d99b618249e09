#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "lambek/langkit.hpp"

namespace lambek {

/// Subset of a monoid's behaviors (bit i = behavior i).
using BehaviorSet = boost::dynamic_bitset<>;
/// Subset of a monoid's realized contexts.
using ContextSet = boost::dynamic_bitset<>;

class SclAlgebra;

/// A closed language, stored as the union of its behavior classes together
/// with its (closed) set of contexts.
class Concept {
public:
    const BehaviorSet& behaviors() const { return behaviors_; }
    const ContextSet& polar() const { return polar_; }
    std::uint64_t algebra_id() const { return algebra_id_; }
    std::size_t count() const { return behaviors_.count(); }

    bool subset_of(const Concept& other) const { return behaviors_.is_subset_of(other.behaviors_); }
    bool contains(std::size_t behavior) const { return behaviors_[behavior]; }

    friend bool operator==(const Concept& a, const Concept& b)
    {
        return a.algebra_id_ == b.algebra_id_ && a.behaviors_ == b.behaviors_;
    }
    friend bool operator<(const Concept& a, const Concept& b) { return a.behaviors_ < b.behaviors_; }

private:
    friend class SclAlgebra;
    Concept(std::uint64_t id, BehaviorSet b, ContextSet c)
        : behaviors_(std::move(b)), polar_(std::move(c)), algebra_id_(id)
    {
    }

    BehaviorSet behaviors_;
    ContextSet polar_;
    std::uint64_t algebra_id_ = 0;
};

class MixedAlgebraError : public std::logic_error {
public:
    MixedAlgebraError() : std::logic_error("concepts belong to different SCL algebras") {}
};

class LatticeTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The syntactic concept lattice of a regular designated language, exact.
///
/// In positive mode the universe of words is Σ⁺ and there is no unit; in
/// epsilon mode ε is a word and {ε}^{▷◁} is the unit.
class SclAlgebra {
public:
    explicit SclAlgebra(SyntacticMonoid monoid);
    static std::shared_ptr<const SclAlgebra> create(const Dfa& lang, WordMode mode);

    const SyntacticMonoid& monoid() const { return monoid_; }
    WordMode mode() const { return monoid_.mode(); }
    std::uint64_t id() const { return id_; }
    std::size_t behavior_count() const { return monoid_.size(); }
    std::size_t context_count() const { return monoid_.contexts().size(); }

    BehaviorSet empty_set() const { return BehaviorSet(behavior_count()); }
    BehaviorSet singleton(std::size_t behavior) const;
    /// Behaviors of the given words; ε is dropped in positive mode.
    BehaviorSet behaviors_of(const std::vector<Word>& words) const;

    ContextSet polar_of(const BehaviorSet& m) const;
    BehaviorSet polar_back(const ContextSet& c) const;
    Concept closure(const BehaviorSet& m) const;
    /// Wraps `m` as a concept; throws std::logic_error if it is not closed.
    Concept as_concept(const BehaviorSet& m) const;
    bool is_closed(const BehaviorSet& m) const;

    const Concept& top() const { return top_; }
    const Concept& bot_closure() const { return bot_; }
    /// {ε}^{▷◁}; throws std::logic_error in positive mode.
    const Concept& unit() const;

    Concept meet(const Concept& a, const Concept& b) const;
    Concept join(const Concept& a, const Concept& b) const;
    Concept prod(const Concept& a, const Concept& b) const;
    /// den \ num.
    Concept ldiv(const Concept& den, const Concept& num) const;
    /// num / den.
    Concept rdiv(const Concept& num, const Concept& den) const;
    Concept plus_iter(const Concept& a) const;
    Concept star_iter(const Concept& a) const;

    BehaviorSet product_set(const BehaviorSet& a, const BehaviorSet& b) const;
    /// ⋃_{n≥1} aⁿ, or ⋃_{n≥0} aⁿ with `with_identity` (epsilon mode only).
    BehaviorSet power_union(const BehaviorSet& a, bool with_identity) const;
    BehaviorSet ldiv_set(const BehaviorSet& den, const BehaviorSet& num) const;
    BehaviorSet rdiv_set(const BehaviorSet& num, const BehaviorSet& den) const;

    bool contains_word(const Concept& c, std::span<const std::size_t> word) const;
    /// w1 ≤_L w2: every context accepting w2 accepts w1.
    bool replaceable(std::span<const std::size_t> w1, std::span<const std::size_t> w2) const;
    const ContextSet& accepting_contexts(std::size_t behavior) const { return accepting_[behavior]; }
    const BehaviorSet& extent(std::size_t context) const { return extents_[context]; }

    /// All closed languages, ordered by size then bit pattern.
    std::vector<Concept> enumerate_concepts(std::size_t cap = 20000) const;

    /// Z absorbs products with every closed superset. Decided exactly via
    /// prod(Z,Z) = prod(top,Z) = prod(Z,top) = Z, using monotonicity.
    bool is_local_zero(const Concept& z) const;
    /// Same question answered by enumerating every closed M ⊇ Z.
    bool is_local_zero_exhaustive(const Concept& z, std::size_t cap = 20000) const;

    /// Shortest witness word of each behavior class in `c`.
    std::vector<Word> witnesses(const Concept& c) const;

private:
    SyntacticMonoid monoid_;
    std::uint64_t id_;
    std::vector<BehaviorSet> extents_;
    std::vector<ContextSet> accepting_;
    Concept top_;
    Concept bot_;
    std::optional<Concept> unit_;

    void check(const Concept& c) const;
};

/// Upper cone ↑Z over a local zero Z: same operations, Z as bottom.
class UpperCone {
public:
    UpperCone(std::shared_ptr<const SclAlgebra> algebra, Concept floor);

    const SclAlgebra& algebra() const { return *algebra_; }
    const std::shared_ptr<const SclAlgebra>& algebra_ptr() const { return algebra_; }
    const Concept& bot() const { return floor_; }
    const Concept& top() const { return algebra_->top(); }
    bool contains(const Concept& c) const { return floor_.subset_of(c); }
    std::vector<Concept> enumerate_concepts(std::size_t cap = 20000) const;

private:
    std::shared_ptr<const SclAlgebra> algebra_;
    Concept floor_;
};

/// Closure of an explicit word set by direct double quantification over
/// words of length ≤ word_len_bound and contexts (x, y) with |x|+|y| ≤
/// ctx_len_bound. Independent of the behavior machinery.
std::set<Word> oracle_closure(const Dfa& lang, const std::vector<Word>& m, std::size_t word_len_bound,
                              std::size_t ctx_len_bound, WordMode mode);

/// All words over an alphabet of size k with min_len ≤ length ≤ max_len, in
/// length-lexicographic order.
std::vector<Word> all_words(std::size_t k, std::size_t min_len, std::size_t max_len);

}  // namespace lambek
