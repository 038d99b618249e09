#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

/// SRBL / RBL: residuated bounded lattice over a semigroup / monoid.
/// ωPAL / ωAL: the same with *-continuous positive / Kleene iteration.
enum class AlgebraKind { SRBL, RBL, OmegaPAL, OmegaAL };

std::string to_string(AlgebraKind kind);
AlgebraKind parse_algebra_kind(std::string_view text);
bool has_unit(AlgebraKind kind);
bool has_iteration(AlgebraKind kind);

using Table = std::vector<std::vector<std::size_t>>;

/// A finite residuated structure given by tables over element indices.
struct FiniteResiduatedAlgebra {
    std::vector<std::string> elements;
    std::vector<std::vector<bool>> leq;
    Table prod, ldiv, rdiv, meet, join;
    std::size_t top = 0;
    std::size_t bot = 0;
    std::optional<std::size_t> unit;
    /// a⁺ = sup{aⁿ | n ≥ 1}; present for the iterative kinds.
    std::optional<std::vector<std::size_t>> plus;
    /// a* = sup{aⁿ | n ≥ 0}; present for ωAL.
    std::optional<std::vector<std::size_t>> star;
    AlgebraKind kind = AlgebraKind::SRBL;

    std::size_t size() const { return elements.size(); }
    bool le(std::size_t a, std::size_t b) const { return leq[a][b]; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    /// Fills meet/join/top/bot from leq, residuals as pointwise maxima and
    /// iteration tables by power iteration, for whatever is missing.
    /// Throws std::invalid_argument if a required supremum/maximum is absent.
    static FiniteResiduatedAlgebra from_order_and_product(std::vector<std::string> elements,
                                                          std::vector<std::vector<bool>> leq, Table prod,
                                                          std::optional<std::size_t> unit, AlgebraKind kind);

    static FiniteResiduatedAlgebra from_json(const nlohmann::json& j);
    static FiniteResiduatedAlgebra read_file(const std::string& path);
    nlohmann::json to_json() const;
};

struct Violation {
    std::string axiom;
    std::string witness;
};

/// Every failing axiom instance appropriate to the algebra's kind (empty iff valid).
std::vector<Violation> validate(const FiniteResiduatedAlgebra& alg);

using AlgebraInterpretation = std::map<std::string, std::size_t>;

class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::size_t evaluate_formula(const FiniteResiduatedAlgebra& alg, const AlgebraInterpretation& interp,
                             const Formula& f);
/// α(A₁)·…·α(Aₙ) ⪯ α(B); an empty antecedent means 1 ⪯ α(B).
bool evaluate_sequent(const FiniteResiduatedAlgebra& alg, const AlgebraInterpretation& interp, const Sequent& s);

/// Supremum of {aⁿ | n ≥ from} by power iteration (from ∈ {0, 1}).
std::optional<std::size_t> power_supremum(const FiniteResiduatedAlgebra& alg, std::size_t a, std::size_t from);

/// Bounded lattices used as reducts: chains, the diamond, and (size 5) the
/// five 5-element lattices.
struct LatticeShape {
    std::string name;
    std::vector<std::string> elements;
    std::vector<std::vector<bool>> leq;
};

std::vector<LatticeShape> lattice_shapes(std::size_t size);

/// All valid algebras of `kind` with at most `max_size` elements over the
/// known lattice shapes, up to isomorphism, in a deterministic order. The
/// callback returns false to stop early.
void for_each_algebra(std::size_t max_size, AlgebraKind kind,
                      const std::function<bool(const FiniteResiduatedAlgebra&)>& visit);
std::vector<FiniteResiduatedAlgebra> enumerate_algebras(std::size_t max_size, AlgebraKind kind);

}  // namespace lambek
