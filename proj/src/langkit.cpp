#include "lambek/langkit.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace lambek {

std::string to_string(WordMode mode)
{
    return mode == WordMode::Positive ? "positive" : "epsilon";
}

WordMode parse_word_mode(std::string_view text)
{
    if (text == "positive")
        return WordMode::Positive;
    if (text == "epsilon")
        return WordMode::Epsilon;
    throw std::invalid_argument("unknown word mode '" + std::string(text) + "' (expected positive|epsilon)");
}

Dfa::Dfa(std::vector<Symbol> alphabet, std::size_t states, std::size_t start, std::vector<bool> accepting,
         std::vector<std::vector<std::size_t>> delta)
    : alphabet_(std::move(alphabet)), start_(start), accepting_(std::move(accepting)), delta_(std::move(delta))
{
    if (states == 0)
        throw std::invalid_argument("DFA needs at least one state");
    if (accepting_.size() != states)
        throw std::invalid_argument("DFA accepting vector has wrong length");
    if (start_ >= states)
        throw std::invalid_argument("DFA start state out of range");
    if (delta_.size() != states)
        throw std::invalid_argument("DFA transition table is not total: expected " + std::to_string(states) + " rows");
    for (std::size_t q = 0; q < states; ++q) {
        if (delta_[q].size() != alphabet_.size())
            throw std::invalid_argument("DFA transition table is not total at state " + std::to_string(q));
        for (auto t : delta_[q])
            if (t >= states)
                throw std::invalid_argument("DFA transition target out of range at state " + std::to_string(q));
    }
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if (alphabet_[i].empty())
            throw std::invalid_argument("DFA symbols must be non-empty");
        for (std::size_t j = 0; j < i; ++j)
            if (alphabet_[i] == alphabet_[j])
                throw std::invalid_argument("duplicate DFA symbol '" + alphabet_[i] + "'");
    }
}

std::size_t Dfa::run(std::size_t q, std::span<const std::size_t> word) const
{
    for (auto a : word)
        q = delta_[q][a];
    return q;
}

bool Dfa::accepts(std::span<const std::size_t> word) const
{
    return accepting_[run(start_, word)];
}

std::optional<std::size_t> Dfa::symbol_index(std::string_view name) const
{
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        if (alphabet_[i] == name)
            return i;
    return std::nullopt;
}

Dfa Dfa::minimized() const
{
    const std::size_t k = alphabet_.size();

    // Reachable states in BFS order.
    std::vector<std::size_t> order;
    std::vector<std::size_t> seen(state_count(), std::numeric_limits<std::size_t>::max());
    order.push_back(start_);
    seen[start_] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t a = 0; a < k; ++a) {
            const auto t = delta_[order[i]][a];
            if (seen[t] == std::numeric_limits<std::size_t>::max()) {
                seen[t] = order.size();
                order.push_back(t);
            }
        }

    // Moore refinement over reachable states.
    const std::size_t n = order.size();
    std::vector<std::size_t> cls(n);
    for (std::size_t i = 0; i < n; ++i)
        cls[i] = accepting_[order[i]] ? 1 : 0;
    std::size_t count = 0;
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> sig;
        std::vector<std::size_t> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> key{cls[i]};
            for (std::size_t a = 0; a < k; ++a)
                key.push_back(cls[seen[delta_[order[i]][a]]]);
            next[i] = sig.emplace(std::move(key), sig.size()).first->second;
        }
        const bool stable = sig.size() == count;
        count = sig.size();
        cls = std::move(next);
        if (stable)
            break;
    }

    // Renumber classes in BFS order from the start.
    std::vector<std::size_t> rename(count, std::numeric_limits<std::size_t>::max());
    std::vector<std::size_t> rep;
    std::deque<std::size_t> queue{0};
    rename[cls[0]] = 0;
    rep.push_back(0);
    while (!queue.empty()) {
        const auto i = queue.front();
        queue.pop_front();
        for (std::size_t a = 0; a < k; ++a) {
            const auto j = seen[delta_[order[i]][a]];
            if (rename[cls[j]] == std::numeric_limits<std::size_t>::max()) {
                rename[cls[j]] = rep.size();
                rep.push_back(j);
                queue.push_back(j);
            }
        }
    }
    std::vector<bool> acc(count);
    std::vector<std::vector<std::size_t>> delta(count, std::vector<std::size_t>(k));
    for (std::size_t c = 0; c < count; ++c) {
        const auto i = rep[c];
        acc[c] = accepting_[order[i]];
        for (std::size_t a = 0; a < k; ++a)
            delta[c][a] = rename[cls[seen[delta_[order[i]][a]]]];
    }
    return Dfa(alphabet_, count, 0, std::move(acc), std::move(delta));
}

nlohmann::json Dfa::to_json() const
{
    nlohmann::json j;
    j["alphabet"] = alphabet_;
    j["states"] = state_count();
    j["start"] = start_;
    std::vector<std::size_t> acc;
    for (std::size_t q = 0; q < state_count(); ++q)
        if (accepting_[q])
            acc.push_back(q);
    j["accept"] = acc;
    j["delta"] = delta_;
    return j;
}

Dfa Dfa::from_json(const nlohmann::json& j)
{
    try {
        const auto alphabet = j.at("alphabet").get<std::vector<Symbol>>();
        const auto states = j.at("states").get<std::size_t>();
        const auto start = j.at("start").get<std::size_t>();
        std::vector<bool> acc(states, false);
        for (auto q : j.at("accept").get<std::vector<std::size_t>>()) {
            if (q >= states)
                throw std::invalid_argument("accepting state " + std::to_string(q) + " out of range");
            acc[q] = true;
        }
        auto delta = j.at("delta").get<std::vector<std::vector<std::size_t>>>();
        return Dfa(alphabet, states, start, std::move(acc), std::move(delta));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed DFA JSON: ") + e.what());
    }
}

Dfa Dfa::read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open DFA file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed DFA JSON in '" + path + "': " + e.what());
    }
    return from_json(j);
}

Word parse_word(const std::vector<Symbol>& alphabet, std::string_view text)
{
    auto lookup = [&](std::string_view s) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < alphabet.size(); ++i)
            if (alphabet[i] == s)
                return i;
        return std::nullopt;
    };
    Word w;
    if (text.find(' ') != std::string_view::npos) {
        std::size_t pos = 0;
        while (pos < text.size()) {
            while (pos < text.size() && text[pos] == ' ')
                ++pos;
            if (pos >= text.size())
                break;
            auto end = text.find(' ', pos);
            if (end == std::string_view::npos)
                end = text.size();
            const auto tok = text.substr(pos, end - pos);
            const auto idx = lookup(tok);
            if (!idx)
                throw std::invalid_argument("symbol '" + std::string(tok) + "' is not in the alphabet");
            w.push_back(*idx);
            pos = end;
        }
        return w;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < alphabet.size(); ++i)
            if (text.substr(pos).starts_with(alphabet[i]) &&
                (!best || alphabet[i].size() > alphabet[*best].size()))
                best = i;
        if (!best)
            throw std::invalid_argument("no alphabet symbol matches at position " + std::to_string(pos) + " of '" +
                                        std::string(text) + "'");
        w.push_back(*best);
        pos += alphabet[*best].size();
    }
    return w;
}

std::string format_word(const std::vector<Symbol>& alphabet, std::span<const std::size_t> word)
{
    if (word.empty())
        return "ε";
    bool single = std::all_of(alphabet.begin(), alphabet.end(), [](const Symbol& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i && !single)
            out += ' ';
        out += alphabet[word[i]];
    }
    return out;
}

Dfa dfa_for_word_set(const std::vector<Word>& words, const std::vector<Symbol>& alphabet)
{
    const std::size_t k = alphabet.size();
    // State 0 is the sink, state 1 the trie root.
    std::vector<std::vector<std::size_t>> delta{std::vector<std::size_t>(k, 0), std::vector<std::size_t>(k, 0)};
    std::vector<bool> acc{false, false};
    for (const auto& w : words) {
        std::size_t q = 1;
        for (auto a : w) {
            if (a >= k)
                throw std::invalid_argument("word symbol " + std::to_string(a) + " outside alphabet");
            if (delta[q][a] == 0) {
                delta[q][a] = delta.size();
                delta.emplace_back(k, 0);
                acc.push_back(false);
            }
            q = delta[q][a];
        }
        acc[q] = true;
    }
    const auto n = delta.size();
    return Dfa(alphabet, n, 1, std::move(acc), std::move(delta)).minimized();
}

Dfa dfa_universal(const std::vector<Symbol>& alphabet, bool with_empty)
{
    const std::size_t k = alphabet.size();
    std::vector<std::vector<std::size_t>> delta{std::vector<std::size_t>(k, 1), std::vector<std::size_t>(k, 1)};
    return Dfa(alphabet, 2, 0, {with_empty, true}, std::move(delta)).minimized();
}

Dfa dfa_template_uavb(const std::vector<Symbol>& alphabet, const Symbol& a, const Symbol& b)
{
    std::optional<std::size_t> ia, ib;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (alphabet[i] == a)
            ia = i;
        if (alphabet[i] == b)
            ib = i;
    }
    if (!ia || !ib)
        throw std::invalid_argument("uavb template needs letters '" + a + "' and '" + b + "' in the alphabet");
    // 0: no a yet; 1: seen a, not ending in b; 2: seen a and ends in b.
    std::vector<std::vector<std::size_t>> delta(3, std::vector<std::size_t>(alphabet.size()));
    for (std::size_t s = 0; s < alphabet.size(); ++s) {
        delta[0][s] = s == *ia ? 1 : 0;
        delta[1][s] = s == *ia ? 1 : (s == *ib ? 2 : 1);
        delta[2][s] = s == *ia ? 1 : (s == *ib ? 2 : 1);
    }
    return Dfa(alphabet, 3, 0, {false, false, true}, std::move(delta)).minimized();
}

// ---------------------------------------------------------------------------

namespace {

struct FuncHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept
    {
        std::size_t h = v.size();
        for (auto x : v)
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace

SyntacticMonoid SyntacticMonoid::build(const Dfa& minimal, WordMode mode)
{
    SyntacticMonoid m(minimal);
    m.mode_ = mode;
    const Dfa& dfa = m.dfa_;
    const std::size_t n = dfa.state_count();
    const std::size_t k = dfa.alphabet().size();

    std::unordered_map<std::vector<std::uint32_t>, std::size_t, FuncHash> index;
    auto intern = [&](std::vector<std::uint32_t> func, Word witness) {
        auto [it, fresh] = index.emplace(func, m.elements_.size());
        if (fresh)
            m.elements_.push_back({std::move(func), std::move(witness)});
        return it->second;
    };

    if (mode == WordMode::Epsilon) {
        std::vector<std::uint32_t> id(n);
        for (std::size_t q = 0; q < n; ++q)
            id[q] = static_cast<std::uint32_t>(q);
        m.identity_ = intern(std::move(id), {});
    }
    std::vector<std::vector<std::uint32_t>> letter_funcs(k, std::vector<std::uint32_t>(n));
    m.letters_.resize(k);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t q = 0; q < n; ++q)
            letter_funcs[a][q] = static_cast<std::uint32_t>(dfa.next(q, a));
        m.letters_[a] = intern(letter_funcs[a], Word{a});
    }
    // Breadth-first closure under right multiplication by letters; witnesses
    // are therefore shortest (and length-lexicographically least).
    for (std::size_t i = 0; i < m.elements_.size(); ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            std::vector<std::uint32_t> f(n);
            for (std::size_t q = 0; q < n; ++q)
                f[q] = letter_funcs[a][m.elements_[i].func[q]];
            if (!index.contains(f)) {
                Word w = m.elements_[i].witness;
                w.push_back(a);
                intern(std::move(f), std::move(w));
            }
        }
    }
    // In ε-mode the identity is realized by ε; the letters realize the rest.

    const std::size_t size = m.elements_.size();
    m.table_.resize(size * size);
    std::vector<std::uint32_t> f(n);
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
            for (std::size_t q = 0; q < n; ++q)
                f[q] = m.elements_[b].func[m.elements_[a].func[q]];
            m.table_[a * size + b] = static_cast<std::uint32_t>(index.at(f));
        }

    // Entry states reachable from the start, with shortest left witnesses.
    std::vector<std::optional<Word>> entry_witness(n);
    std::deque<std::size_t> queue{dfa.start()};
    entry_witness[dfa.start()] = Word{};
    std::vector<std::size_t> entries{dfa.start()};
    while (!queue.empty()) {
        const auto q = queue.front();
        queue.pop_front();
        for (std::size_t a = 0; a < k; ++a) {
            const auto t = dfa.next(q, a);
            if (!entry_witness[t]) {
                Word w = *entry_witness[q];
                w.push_back(a);
                entry_witness[t] = std::move(w);
                entries.push_back(t);
                queue.push_back(t);
            }
        }
    }
    // Exit sets: states from which y reaches acceptance, closed under
    // pre-composition with letters.
    std::vector<std::pair<StateSet, Word>> exits;
    std::unordered_map<StateSet, std::size_t> exit_index;
    StateSet final_set(n);
    for (std::size_t q = 0; q < n; ++q)
        final_set[q] = dfa.is_accepting(q);
    exit_index.emplace(final_set, 0);
    exits.emplace_back(final_set, Word{});
    for (std::size_t i = 0; i < exits.size(); ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            StateSet pre(n);
            for (std::size_t q = 0; q < n; ++q)
                pre[q] = exits[i].first[dfa.next(q, a)];
            if (!exit_index.contains(pre)) {
                Word y{a};
                y.insert(y.end(), exits[i].second.begin(), exits[i].second.end());
                exit_index.emplace(pre, exits.size());
                exits.emplace_back(std::move(pre), std::move(y));
            }
        }
    }
    for (auto e : entries)
        for (const auto& [set, y] : exits)
            m.contexts_.push_back({e, set, *entry_witness[e], y});
    return m;
}

std::optional<std::size_t> SyntacticMonoid::behavior_of(std::span<const std::size_t> word) const
{
    if (word.empty())
        return identity_;
    std::size_t b = *letters_[word[0]];
    for (std::size_t i = 1; i < word.size(); ++i)
        b = product(b, *letters_[word[i]]);
    return b;
}

std::optional<std::size_t> SyntacticMonoid::find(const std::vector<std::uint32_t>& func) const
{
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i].func == func)
            return i;
    return std::nullopt;
}

bool SyntacticMonoid::context_accepts(std::size_t ctx, std::size_t behavior) const
{
    const auto& c = contexts_[ctx];
    return c.exit_set[elements_[behavior].func[c.entry]];
}

// ---------------------------------------------------------------------------

Word pentus_encode(std::span<const std::size_t> word)
{
    Word out;
    for (auto a : word) {
        out.push_back(0);
        out.insert(out.end(), a + 1, 1);
        out.push_back(0);
    }
    return out;
}

std::optional<Word> pentus_decode(std::span<const std::size_t> encoded, std::size_t alphabet_size)
{
    Word out;
    std::size_t i = 0;
    while (i < encoded.size()) {
        if (encoded[i] != 0)
            return std::nullopt;
        ++i;
        std::size_t fs = 0;
        while (i < encoded.size() && encoded[i] == 1) {
            ++fs;
            ++i;
        }
        if (fs == 0 || i >= encoded.size() || encoded[i] != 0 || fs > alphabet_size)
            return std::nullopt;
        ++i;
        out.push_back(fs - 1);
    }
    return out;
}

Dfa pentus_encode_lang(const Dfa& lang)
{
    // For every original state q: nodes (q, j) after reading e f^j, j = 0..k;
    // reading e from (q, j) with j >= 1 moves to δ(q, a_j). State 0 is a sink.
    const std::size_t n = lang.state_count();
    const std::size_t k = lang.alphabet().size();
    const std::size_t per = k + 1;
    auto orig = [&](std::size_t q) { return 1 + q * (per + 1); };
    auto mid = [&](std::size_t q, std::size_t j) { return 1 + q * (per + 1) + 1 + j; };
    const std::size_t total = 1 + n * (per + 1);
    std::vector<std::vector<std::size_t>> delta(total, std::vector<std::size_t>(2, 0));
    std::vector<bool> acc(total, false);
    for (std::size_t q = 0; q < n; ++q) {
        acc[orig(q)] = lang.is_accepting(q);
        delta[orig(q)][0] = mid(q, 0);
        for (std::size_t j = 0; j <= k; ++j) {
            delta[mid(q, j)][1] = j < k ? mid(q, j + 1) : 0;
            delta[mid(q, j)][0] = j >= 1 ? orig(lang.next(q, j - 1)) : 0;
        }
    }
    return Dfa(pentus_alphabet(), total, orig(lang.start()), std::move(acc), std::move(delta)).minimized();
}

}  // namespace lambek
