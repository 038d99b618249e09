#include "lambek/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

namespace lambek {

std::string to_string(Mode mode)
{
    return mode == Mode::Restricted ? "restricted" : "unrestricted";
}

Mode parse_mode(std::string_view text)
{
    if (text == "restricted")
        return Mode::Restricted;
    if (text == "unrestricted")
        return Mode::Unrestricted;
    throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected restricted|unrestricted)");
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v)
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula::Formula(Connective kind, std::string name, FormulaPtr left, FormulaPtr right)
    : kind_(kind), name_(std::move(name)), left_(std::move(left)), right_(std::move(right))
{
    hash_ = mix(static_cast<std::size_t>(kind_) + 1, std::hash<std::string>{}(name_));
    unit_or_star_ = kind_ == Connective::One || kind_ == Connective::Star;
    for (const auto* child : {&left_, &right_}) {
        if (*child) {
            size_ += (*child)->size_;
            hash_ = mix(hash_, (*child)->hash_);
            unit_or_star_ = unit_or_star_ || (*child)->unit_or_star_;
        }
    }
}

bool Formula::is_binary() const
{
    switch (kind_) {
    case Connective::LDiv:
    case Connective::RDiv:
    case Connective::Prod:
    case Connective::Meet:
    case Connective::Join:
        return true;
    default:
        return false;
    }
}

FormulaPtr Formula::var(std::string name)
{
    return std::make_shared<const Formula>(Connective::Var, std::move(name), nullptr, nullptr);
}

FormulaPtr Formula::top()
{
    static const FormulaPtr f = std::make_shared<const Formula>(Connective::Top, "", nullptr, nullptr);
    return f;
}

FormulaPtr Formula::bot()
{
    static const FormulaPtr f = std::make_shared<const Formula>(Connective::Bot, "", nullptr, nullptr);
    return f;
}

FormulaPtr Formula::one()
{
    static const FormulaPtr f = std::make_shared<const Formula>(Connective::One, "", nullptr, nullptr);
    return f;
}

FormulaPtr Formula::ldiv(FormulaPtr den, FormulaPtr num)
{
    return std::make_shared<const Formula>(Connective::LDiv, "", std::move(den), std::move(num));
}

FormulaPtr Formula::rdiv(FormulaPtr num, FormulaPtr den)
{
    return std::make_shared<const Formula>(Connective::RDiv, "", std::move(num), std::move(den));
}

FormulaPtr Formula::prod(FormulaPtr left, FormulaPtr right)
{
    return std::make_shared<const Formula>(Connective::Prod, "", std::move(left), std::move(right));
}

FormulaPtr Formula::meet(FormulaPtr left, FormulaPtr right)
{
    return std::make_shared<const Formula>(Connective::Meet, "", std::move(left), std::move(right));
}

FormulaPtr Formula::join(FormulaPtr left, FormulaPtr right)
{
    return std::make_shared<const Formula>(Connective::Join, "", std::move(left), std::move(right));
}

FormulaPtr Formula::plus(FormulaPtr body)
{
    return std::make_shared<const Formula>(Connective::Plus, "", std::move(body), nullptr);
}

FormulaPtr Formula::star(FormulaPtr body)
{
    return std::make_shared<const Formula>(Connective::Star, "", std::move(body), nullptr);
}

bool operator==(const Formula& a, const Formula& b)
{
    if (&a == &b)
        return true;
    if (a.kind_ != b.kind_ || a.hash_ != b.hash_ || a.size_ != b.size_ || a.name_ != b.name_)
        return false;
    return same_formula(a.left_, b.left_) && same_formula(a.right_, b.right_);
}

bool same_formula(const FormulaPtr& a, const FormulaPtr& b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

bool operator==(const Sequent& a, const Sequent& b)
{
    if (a.antecedent.size() != b.antecedent.size() || !same_formula(a.succedent, b.succedent))
        return false;
    for (std::size_t i = 0; i < a.antecedent.size(); ++i)
        if (!same_formula(a.antecedent[i], b.antecedent[i]))
            return false;
    return true;
}

SyntaxError::SyntaxError(const std::string& message, std::size_t position)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": " + message),
      position_(position),
      message_(message)
{
}

// ---------------------------------------------------------------------------
// Parser
//
//   join    := meet ('|' meet)*
//   meet    := prod ('&' prod)*
//   prod    := div ('.' div)*
//   div     := postfix (('\' | '/') postfix)?      -- no chains
//   postfix := atom ('^+' | '^*')*
//   atom    := ident | 'top' | 'bot' | 'one' | '(' join ')'

namespace {

class Parser {
public:
    Parser(std::string_view text, Mode mode) : text_(text), mode_(mode) {}

    FormulaPtr parse_all()
    {
        auto f = parse_join();
        skip_ws();
        if (pos_ != text_.size())
            throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return f;
    }

private:
    std::string_view text_;
    Mode mode_;
    std::size_t pos_ = 0;

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    FormulaPtr parse_join()
    {
        auto f = parse_meet();
        while (peek('|')) {
            ++pos_;
            f = Formula::join(f, parse_meet());
        }
        return f;
    }

    FormulaPtr parse_meet()
    {
        auto f = parse_prod();
        while (peek('&')) {
            ++pos_;
            f = Formula::meet(f, parse_prod());
        }
        return f;
    }

    FormulaPtr parse_prod()
    {
        auto f = parse_div();
        while (peek('.')) {
            ++pos_;
            f = Formula::prod(f, parse_div());
        }
        return f;
    }

    FormulaPtr parse_div()
    {
        auto f = parse_postfix();
        if (peek('\\') || peek('/')) {
            const char op = text_[pos_++];
            auto g = parse_postfix();
            if (peek('\\') || peek('/'))
                throw SyntaxError("division chains need parentheses", pos_);
            f = op == '\\' ? Formula::ldiv(f, g) : Formula::rdiv(f, g);
        }
        return f;
    }

    FormulaPtr parse_postfix()
    {
        auto f = parse_atom();
        while (peek('^')) {
            const std::size_t at = pos_++;
            if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '*'))
                throw SyntaxError("expected '+' or '*' after '^'", at);
            if (text_[pos_] == '+') {
                f = Formula::plus(f);
            } else {
                if (mode_ == Mode::Restricted)
                    throw ModeError("Kleene star '^*' is not allowed in restricted mode (position " +
                                    std::to_string(at) + ")");
                f = Formula::star(f);
            }
            ++pos_;
        }
        return f;
    }

    FormulaPtr parse_atom()
    {
        skip_ws();
        if (pos_ >= text_.size())
            throw SyntaxError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto f = parse_join();
            if (!peek(')'))
                throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return f;
        }
        if (std::islower(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string id(text_.substr(start, pos_ - start));
            if (id == "top")
                return Formula::top();
            if (id == "bot")
                return Formula::bot();
            if (id == "one") {
                if (mode_ == Mode::Restricted)
                    throw ModeError("unit constant 'one' is not allowed in restricted mode (position " +
                                    std::to_string(start) + ")");
                return Formula::one();
            }
            return Formula::var(id);
        }
        throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
    }
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

}  // namespace

FormulaPtr parse_formula(std::string_view text, Mode mode)
{
    return Parser(text, mode).parse_all();
}

Sequent parse_sequent(std::string_view text, Mode mode)
{
    const auto arrow = text.find("=>");
    if (arrow == std::string_view::npos)
        throw SyntaxError("expected '=>'", text.size());
    if (text.find("=>", arrow + 2) != std::string_view::npos)
        throw SyntaxError("more than one '=>'", text.find("=>", arrow + 2));

    Sequent s;
    const auto lhs = text.substr(0, arrow);
    if (!trim(lhs).empty()) {
        std::size_t begin = 0;
        while (true) {
            const auto comma = lhs.find(',', begin);
            const auto piece = lhs.substr(begin, comma == std::string_view::npos ? lhs.size() - begin : comma - begin);
            if (trim(piece).empty())
                throw SyntaxError("empty formula in antecedent", begin);
            try {
                s.antecedent.push_back(parse_formula(piece, mode));
            } catch (const SyntaxError& e) {
                throw SyntaxError(e.message(), begin + e.position());
            }
            if (comma == std::string_view::npos)
                break;
            begin = comma + 1;
        }
    }
    try {
        s.succedent = parse_formula(text.substr(arrow + 2), mode);
    } catch (const SyntaxError& e) {
        throw SyntaxError(e.message(), arrow + 2 + e.position());
    }
    if (mode == Mode::Restricted && s.antecedent.empty())
        throw ModeError("empty antecedent is not allowed in restricted mode");
    return s;
}

HypothesisSet parse_hypotheses(std::string_view text, Mode mode)
{
    HypothesisSet out;
    std::size_t line_no = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const auto nl = text.find('\n', begin);
        auto line = text.substr(begin, nl == std::string_view::npos ? text.size() - begin : nl - begin);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) {
            try {
                out.push_back(parse_sequent(line, mode));
            } catch (const SyntaxError& e) {
                throw SyntaxError("line " + std::to_string(line_no) + ": " + e.message(), e.position());
            } catch (const ModeError& e) {
                throw ModeError("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        if (nl == std::string_view::npos)
            break;
        begin = nl + 1;
    }
    return out;
}

HypothesisSet read_hypothesis_file(const std::string& path, Mode mode)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open hypothesis file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_hypotheses(buf.str(), mode);
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Binding strength; a child printed below its required level gets parentheses.
int level(const Formula& f)
{
    switch (f.kind()) {
    case Connective::Join:
        return 1;
    case Connective::Meet:
        return 2;
    case Connective::Prod:
        return 3;
    case Connective::LDiv:
    case Connective::RDiv:
        return 4;
    case Connective::Plus:
    case Connective::Star:
        return 5;
    default:
        return 6;
    }
}

void print_into(const Formula& f, int min_level, std::string& out)
{
    const bool parens = level(f) < min_level;
    if (parens)
        out += '(';
    switch (f.kind()) {
    case Connective::Var:
        out += f.name();
        break;
    case Connective::Top:
        out += "top";
        break;
    case Connective::Bot:
        out += "bot";
        break;
    case Connective::One:
        out += "one";
        break;
    case Connective::Join:
        print_into(*f.left(), 1, out);
        out += '|';
        print_into(*f.right(), 2, out);
        break;
    case Connective::Meet:
        print_into(*f.left(), 2, out);
        out += '&';
        print_into(*f.right(), 3, out);
        break;
    case Connective::Prod:
        print_into(*f.left(), 3, out);
        out += '.';
        print_into(*f.right(), 4, out);
        break;
    case Connective::LDiv:
    case Connective::RDiv:
        print_into(*f.left(), 5, out);
        out += f.kind() == Connective::LDiv ? '\\' : '/';
        print_into(*f.right(), 5, out);
        break;
    case Connective::Plus:
    case Connective::Star:
        print_into(*f.body(), 5, out);
        out += f.kind() == Connective::Plus ? "^+" : "^*";
        break;
    }
    if (parens)
        out += ')';
}

}  // namespace

std::string print_formula(const Formula& f)
{
    std::string out;
    print_into(f, 0, out);
    return out;
}

std::string print_formula(const FormulaPtr& f)
{
    return print_formula(*f);
}

std::string print_sequent(const Sequent& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
        if (i)
            out += ", ";
        out += print_formula(*s.antecedent[i]);
    }
    out += out.empty() ? "=> " : " => ";
    out += print_formula(*s.succedent);
    return out;
}

void check_mode(const Formula& f, Mode mode)
{
    if (mode == Mode::Restricted && f.uses_unit_or_star())
        throw ModeError("formula '" + print_formula(f) + "' uses 'one' or '^*', not allowed in restricted mode");
}

void check_mode(const Sequent& s, Mode mode)
{
    if (mode == Mode::Restricted && s.antecedent.empty())
        throw ModeError("empty antecedent is not allowed in restricted mode");
    for (const auto& a : s.antecedent)
        check_mode(*a, mode);
    check_mode(*s.succedent, mode);
}

namespace {

void collect_vars(const Formula& f, std::vector<std::string>& out)
{
    if (f.kind() == Connective::Var) {
        if (std::find(out.begin(), out.end(), f.name()) == out.end())
            out.push_back(f.name());
        return;
    }
    if (f.left())
        collect_vars(*f.left(), out);
    if (f.right())
        collect_vars(*f.right(), out);
}

}  // namespace

std::vector<std::string> variables_of(const Formula& f)
{
    std::vector<std::string> out;
    collect_vars(f, out);
    return out;
}

std::vector<std::string> variables_of(const Sequent& s)
{
    std::vector<std::string> out;
    for (const auto& a : s.antecedent)
        collect_vars(*a, out);
    collect_vars(*s.succedent, out);
    return out;
}

std::vector<std::string> variables_of(const HypothesisSet& hyps, const Sequent& goal)
{
    std::vector<std::string> out;
    for (const auto& h : hyps) {
        for (const auto& a : h.antecedent)
            collect_vars(*a, out);
        collect_vars(*h.succedent, out);
    }
    for (const auto& a : goal.antecedent)
        collect_vars(*a, out);
    collect_vars(*goal.succedent, out);
    return out;
}

void collect_subformulas(const FormulaPtr& f, std::vector<FormulaPtr>& out)
{
    for (const auto& g : out)
        if (same_formula(g, f))
            return;
    out.push_back(f);
    if (f->left())
        collect_subformulas(f->left(), out);
    if (f->right())
        collect_subformulas(f->right(), out);
}

}  // namespace lambek
