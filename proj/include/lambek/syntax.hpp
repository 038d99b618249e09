#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lambek {

/// Lambek's non-emptiness restriction on (restricted) or off (unrestricted).
enum class Mode { Restricted, Unrestricted };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

enum class Connective { Var, Top, Bot, One, LDiv, RDiv, Prod, Meet, Join, Plus, Star };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula tree.
///
/// Binary nodes keep the operands in written order: `A\B` is LDiv(A, B) and
/// `B/A` is RDiv(B, A), so for both divisions the denominator is `den()`.
class Formula {
public:
    static FormulaPtr var(std::string name);
    static FormulaPtr top();
    static FormulaPtr bot();
    static FormulaPtr one();
    static FormulaPtr ldiv(FormulaPtr den, FormulaPtr num);
    static FormulaPtr rdiv(FormulaPtr num, FormulaPtr den);
    static FormulaPtr prod(FormulaPtr left, FormulaPtr right);
    static FormulaPtr meet(FormulaPtr left, FormulaPtr right);
    static FormulaPtr join(FormulaPtr left, FormulaPtr right);
    static FormulaPtr plus(FormulaPtr body);
    static FormulaPtr star(FormulaPtr body);

    Connective kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const FormulaPtr& left() const { return left_; }
    const FormulaPtr& right() const { return right_; }
    const FormulaPtr& body() const { return left_; }
    const FormulaPtr& den() const { return kind_ == Connective::LDiv ? left_ : right_; }
    const FormulaPtr& num() const { return kind_ == Connective::LDiv ? right_ : left_; }

    /// Number of nodes.
    std::size_t size() const { return size_; }
    std::size_t hash() const { return hash_; }
    bool is_binary() const;
    bool is_iteration() const { return kind_ == Connective::Plus || kind_ == Connective::Star; }

    /// True if One or StarIter occurs anywhere in the tree.
    bool uses_unit_or_star() const { return unit_or_star_; }

    friend bool operator==(const Formula& a, const Formula& b);

    Formula(Connective kind, std::string name, FormulaPtr left, FormulaPtr right);

private:
    Connective kind_;
    std::string name_;
    FormulaPtr left_;
    FormulaPtr right_;
    std::size_t size_ = 1;
    std::size_t hash_ = 0;
    bool unit_or_star_ = false;
};

bool same_formula(const FormulaPtr& a, const FormulaPtr& b);

struct Sequent {
    std::vector<FormulaPtr> antecedent;
    FormulaPtr succedent;

    friend bool operator==(const Sequent& a, const Sequent& b);
};

using HypothesisSet = std::vector<Sequent>;

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& message, std::size_t position);
    std::size_t position() const { return position_; }
    /// The message without the position prefix.
    const std::string& message() const { return message_; }

private:
    std::size_t position_;
    std::string message_;
};

/// Raised when a formula or sequent is not allowed under Lambek's restriction.
class ModeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FormulaPtr parse_formula(std::string_view text, Mode mode);
Sequent parse_sequent(std::string_view text, Mode mode);

/// One sequent per line; `#` starts a comment; blank lines are skipped.
HypothesisSet parse_hypotheses(std::string_view text, Mode mode);
HypothesisSet read_hypothesis_file(const std::string& path, Mode mode);

std::string print_formula(const Formula& f);
std::string print_formula(const FormulaPtr& f);
std::string print_sequent(const Sequent& s);

/// Throws ModeError if `f` (or `s`) is not admissible in `mode`.
void check_mode(const Formula& f, Mode mode);
void check_mode(const Sequent& s, Mode mode);

/// Variables in order of first occurrence.
std::vector<std::string> variables_of(const Formula& f);
std::vector<std::string> variables_of(const Sequent& s);
std::vector<std::string> variables_of(const HypothesisSet& hyps, const Sequent& goal);

/// All distinct subformulas, including `f` itself.
void collect_subformulas(const FormulaPtr& f, std::vector<FormulaPtr>& out);

}  // namespace lambek
