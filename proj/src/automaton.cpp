#include "asg/automaton.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace asg {

namespace {

void check_identifier(const std::string& name, const char* kind) {
    if (name.empty())
        throw InputError(std::string(kind) + " identifier must not be empty");
}

std::string join_names(const std::vector<std::string>& names, const std::vector<int>& idx) {
    std::string out;
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i > 0)
            out += kIdSeparator;
        out += names[idx[i]];
    }
    return out;
}

} // namespace

SAutomaton::SAutomaton(std::vector<std::string> states, std::vector<std::string> letters,
                       std::vector<Arrow> delta)
    : states_(std::move(states)), letters_(std::move(letters)), delta_(std::move(delta)) {
    if (states_.empty())
        throw InputError("automaton needs at least one state");
    if (letters_.empty())
        throw InputError("automaton needs at least one letter");
    std::set<std::string> seen;
    for (const auto& s : states_) {
        check_identifier(s, "state");
        if (!seen.insert(s).second)
            throw InputError("duplicate state identifier '" + s + "'");
    }
    for (const auto& a : letters_) {
        check_identifier(a, "letter");
        if (!seen.insert(a).second)
            throw InputError("letter identifier '" + a + "' is not distinct from the states");
    }
    if (delta_.size() != states_.size() * letters_.size())
        throw InputError("transition table has the wrong size");
    for (const auto& arrow : delta_) {
        if (arrow.out < 0 || arrow.out >= letter_count())
            throw InputError("transition references an unknown output letter");
        if (arrow.next < 0 || arrow.next >= state_count())
            throw InputError("transition references an unknown successor state");
    }
}

int SAutomaton::state_index(std::string_view name) const {
    for (size_t i = 0; i < states_.size(); ++i)
        if (states_[i] == name)
            return static_cast<int>(i);
    return -1;
}

int SAutomaton::letter_index(std::string_view name) const {
    for (size_t i = 0; i < letters_.size(); ++i)
        if (letters_[i] == name)
            return static_cast<int>(i);
    return -1;
}

int SAutomaton::require_state(std::string_view name) const {
    int i = state_index(name);
    if (i < 0)
        throw InputError("unknown state '" + std::string(name) + "'");
    return i;
}

int SAutomaton::require_letter(std::string_view name) const {
    int i = letter_index(name);
    if (i < 0)
        throw InputError("unknown letter '" + std::string(name) + "'");
    return i;
}

bool SAutomaton::same_letters(const SAutomaton& other) const {
    return letters_ == other.letters_;
}

void SAutomaton::check_state_word(const StateWord& p) const {
    for (int s : p)
        if (s < 0 || s >= state_count())
            throw InputError("state word references an unknown state");
}

void SAutomaton::check_letter_word(const LetterWord& u) const {
    for (int a : u)
        if (a < 0 || a >= letter_count())
            throw InputError("letter word references an unknown letter");
}

std::pair<LetterWord, int> run(const SAutomaton& T, int state, const LetterWord& u) {
    LetterWord out;
    out.reserve(u.size());
    int cur = state;
    for (int a : u) {
        const auto& arrow = T.step(cur, a);
        out.push_back(arrow.out);
        cur = arrow.next;
    }
    return {std::move(out), cur};
}

LetterWord act(const SAutomaton& T, const StateWord& p, const LetterWord& u) {
    T.check_state_word(p);
    T.check_letter_word(u);
    LetterWord cur = u;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        cur = run(T, *it, cur).first;
    return cur;
}

StateWord dual_act(const SAutomaton& T, const StateWord& p, const LetterWord& u) {
    T.check_state_word(p);
    T.check_letter_word(u);
    StateWord result(p.size(), 0);
    LetterWord cur = u;
    for (size_t i = p.size(); i-- > 0;) {
        auto [out, end] = run(T, p[i], cur);
        result[i] = end;
        cur = std::move(out);
    }
    return result;
}

SAutomaton compose(const SAutomaton& T2, const SAutomaton& T1) {
    if (!T2.same_letters(T1))
        throw InputError("composition requires identical alphabets");
    const int n1 = T1.state_count();
    const int n2 = T2.state_count();
    const int na = T1.letter_count();
    std::vector<std::string> states;
    states.reserve(static_cast<size_t>(n1) * n2);
    for (int p2 = 0; p2 < n2; ++p2)
        for (int p1 = 0; p1 < n1; ++p1)
            states.push_back(T2.state_name(p2) + kIdSeparator + T1.state_name(p1));
    std::vector<SAutomaton::Arrow> delta(states.size() * na);
    for (int p2 = 0; p2 < n2; ++p2)
        for (int p1 = 0; p1 < n1; ++p1)
            for (int a = 0; a < na; ++a) {
                const auto& first = T1.step(p1, a);
                const auto& second = T2.step(p2, first.out);
                delta[(static_cast<size_t>(p2) * n1 + p1) * na + a] = {
                    second.out, second.next * n1 + first.next};
            }
    return SAutomaton(std::move(states), T1.letter_names(), std::move(delta));
}

SAutomaton power(const SAutomaton& T, int k) {
    if (k < 1)
        throw InputError("power exponent must be at least 1");
    if (k == 1)
        return T;
    SAutomaton acc = T;
    for (int i = 1; i < k; ++i)
        acc = compose(T, acc);
    return acc;
}

SAutomaton union_automata(const SAutomaton& T1, const SAutomaton& T2) {
    std::set<std::string> l1(T1.letter_names().begin(), T1.letter_names().end());
    std::set<std::string> l2(T2.letter_names().begin(), T2.letter_names().end());
    if (l1 != l2)
        throw InputError("union requires identical alphabets");

    std::vector<std::string> states = T1.state_names();
    std::set<std::string> used(states.begin(), states.end());
    for (const auto& name : T2.state_names()) {
        std::string candidate = name;
        while (used.count(candidate))
            candidate += '\'';
        used.insert(candidate);
        states.push_back(candidate);
    }

    // T2's letters are remapped by name onto T1's letter order.
    const int na = T1.letter_count();
    const int n1 = T1.state_count();
    std::vector<int> to_t1(na); // T2 letter index -> T1 letter index
    for (int a2 = 0; a2 < na; ++a2)
        to_t1[a2] = T1.require_letter(T2.letter_name(a2));

    std::vector<SAutomaton::Arrow> delta(states.size() * na);
    for (int s = 0; s < n1; ++s)
        for (int a = 0; a < na; ++a)
            delta[static_cast<size_t>(s) * na + a] = T1.step(s, a);
    for (int s = 0; s < T2.state_count(); ++s)
        for (int a2 = 0; a2 < na; ++a2) {
            const auto& arrow = T2.step(s, a2);
            delta[static_cast<size_t>(n1 + s) * na + to_t1[a2]] = {to_t1[arrow.out],
                                                                   n1 + arrow.next};
        }
    return SAutomaton(std::move(states), T1.letter_names(), std::move(delta));
}

SAutomaton dual_automaton(const SAutomaton& T) {
    const int n = T.state_count();
    const int na = T.letter_count();
    // states of the dual are the letters of T and vice versa
    std::vector<SAutomaton::Arrow> delta(static_cast<size_t>(na) * n);
    for (int a = 0; a < na; ++a)
        for (int p = 0; p < n; ++p) {
            const auto& arrow = T.step(p, a);
            delta[static_cast<size_t>(a) * n + p] = {arrow.next, arrow.out};
        }
    return SAutomaton(T.letter_names(), T.state_names(), std::move(delta));
}

std::pair<SAutomaton, std::vector<int>> minimize(const SAutomaton& T) {
    const int n = T.state_count();
    const int na = T.letter_count();

    // initial partition: by output row
    std::vector<int> block(n);
    {
        std::map<std::vector<int>, int> index;
        for (int s = 0; s < n; ++s) {
            std::vector<int> row(na);
            for (int a = 0; a < na; ++a)
                row[a] = T.step(s, a).out;
            auto [it, inserted] = index.emplace(std::move(row), static_cast<int>(index.size()));
            block[s] = it->second;
        }
    }

    for (;;) {
        std::map<std::pair<int, std::vector<int>>, int> index;
        std::vector<int> next_block(n);
        for (int s = 0; s < n; ++s) {
            std::vector<int> sig(na);
            for (int a = 0; a < na; ++a)
                sig[a] = block[T.step(s, a).next];
            auto key = std::make_pair(block[s], std::move(sig));
            auto [it, inserted] = index.emplace(std::move(key), static_cast<int>(index.size()));
            next_block[s] = it->second;
        }
        if (next_block == block)
            break;
        block = std::move(next_block);
    }

    // renumber blocks by first-declared member; that member names the block
    std::vector<int> renum(n, -1);
    std::vector<int> rep;
    for (int s = 0; s < n; ++s)
        if (renum[block[s]] < 0) {
            renum[block[s]] = static_cast<int>(rep.size());
            rep.push_back(s);
        }
    std::vector<int> mapping(n);
    for (int s = 0; s < n; ++s)
        mapping[s] = renum[block[s]];

    std::vector<std::string> states;
    states.reserve(rep.size());
    for (int r : rep)
        states.push_back(T.state_name(r));
    std::vector<SAutomaton::Arrow> delta(rep.size() * na);
    for (size_t b = 0; b < rep.size(); ++b)
        for (int a = 0; a < na; ++a) {
            const auto& arrow = T.step(rep[b], a);
            delta[b * na + a] = {arrow.out, mapping[arrow.next]};
        }
    return {SAutomaton(std::move(states), T.letter_names(), std::move(delta)), mapping};
}

bool equal_actions(const SAutomaton& T, const StateWord& p, const StateWord& q) {
    T.check_state_word(p);
    T.check_state_word(q);
    if (p.empty() != q.empty())
        throw InputError("equal_actions requires both words empty or both nonempty");
    if (p.empty())
        return true;

    const int na = T.letter_count();
    std::set<std::pair<StateWord, StateWord>> seen;
    std::vector<std::pair<StateWord, StateWord>> queue{{p, q}};
    seen.insert(queue.front());
    constexpr size_t kPairCap = 1u << 22;
    while (!queue.empty()) {
        auto [wp, wq] = std::move(queue.back());
        queue.pop_back();
        for (int a = 0; a < na; ++a) {
            LetterWord letter{a};
            LetterWord op = act(T, wp, letter);
            LetterWord oq = act(T, wq, letter);
            if (op != oq)
                return false;
            auto next = std::make_pair(dual_act(T, wp, letter), dual_act(T, wq, letter));
            if (seen.insert(next).second) {
                if (seen.size() > kPairCap)
                    throw ResourceError("equal_actions pair search exceeded its cap");
                queue.push_back(std::move(next));
            }
        }
    }
    return true;
}

namespace {

std::vector<std::string> tokenize_line(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    return tokens;
}

} // namespace

SAutomaton parse_automaton(const std::string& text) {
    std::vector<std::string> states;
    std::vector<std::string> letters;
    struct RawTransition {
        std::string src, in, out, dst;
        int line;
    };
    std::vector<RawTransition> raw;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.erase(pos);
        auto tokens = tokenize_line(line);
        if (tokens.empty())
            continue;
        if (tokens[0] == "alphabet:") {
            if (!letters.empty())
                throw InputError("line " + std::to_string(lineno) + ": duplicate alphabet line");
            letters.assign(tokens.begin() + 1, tokens.end());
        } else if (tokens[0] == "states:") {
            if (!states.empty())
                throw InputError("line " + std::to_string(lineno) + ": duplicate states line");
            states.assign(tokens.begin() + 1, tokens.end());
        } else if (tokens.size() == 5 && tokens[2] == "->") {
            raw.push_back({tokens[0], tokens[1], tokens[3], tokens[4], lineno});
        } else {
            throw InputError("line " + std::to_string(lineno) + ": expected 'p a -> b q'");
        }
    }
    if (states.empty())
        throw InputError("missing states: line");
    if (letters.empty())
        throw InputError("missing alphabet: line");
    for (const auto& name : states)
        if (name.find(kIdSeparator) != std::string::npos)
            throw InputError("state identifier '" + name + "' contains the reserved character ','");
    for (const auto& name : letters)
        if (name.find(kIdSeparator) != std::string::npos)
            throw InputError("letter identifier '" + name +
                             "' contains the reserved character ','");

    // build a throwaway automaton shell for name lookups
    auto find = [](const std::vector<std::string>& v, const std::string& name) {
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] == name)
                return static_cast<int>(i);
        return -1;
    };

    const int na = static_cast<int>(letters.size());
    std::vector<SAutomaton::Arrow> delta(states.size() * letters.size(), {-1, -1});
    for (const auto& t : raw) {
        int src = find(states, t.src);
        if (src < 0)
            throw InputError("line " + std::to_string(t.line) + ": unknown state '" + t.src + "'");
        int a = find(letters, t.in);
        if (a < 0)
            throw InputError("line " + std::to_string(t.line) + ": unknown letter '" + t.in + "'");
        int b = find(letters, t.out);
        if (b < 0)
            throw InputError("line " + std::to_string(t.line) + ": unknown letter '" + t.out + "'");
        int dst = find(states, t.dst);
        if (dst < 0)
            throw InputError("line " + std::to_string(t.line) + ": unknown state '" + t.dst + "'");
        auto& slot = delta[static_cast<size_t>(src) * na + a];
        if (slot.next >= 0)
            throw InputError("line " + std::to_string(t.line) + ": duplicate transition for (" +
                             t.src + ", " + t.in + ")");
        slot = {b, dst};
    }
    for (size_t s = 0; s < states.size(); ++s)
        for (int a = 0; a < na; ++a)
            if (delta[s * na + a].next < 0)
                throw InputError("incomplete automaton: no transition for (" + states[s] + ", " +
                                 letters[a] + ")");
    return SAutomaton(std::move(states), std::move(letters), std::move(delta));
}

std::string serialize_automaton(const SAutomaton& T) {
    std::ostringstream out;
    out << "alphabet:";
    for (const auto& a : T.letter_names())
        out << ' ' << a;
    out << "\nstates:";
    for (const auto& s : T.state_names())
        out << ' ' << s;
    out << '\n';
    for (int s = 0; s < T.state_count(); ++s)
        for (int a = 0; a < T.letter_count(); ++a) {
            const auto& arrow = T.step(s, a);
            out << T.state_name(s) << ' ' << T.letter_name(a) << " -> "
                << T.letter_name(arrow.out) << ' ' << T.state_name(arrow.next) << '\n';
        }
    return out.str();
}

std::string automaton_to_dot(const SAutomaton& T, const std::string& name) {
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n  rankdir=LR;\n";
    for (int s = 0; s < T.state_count(); ++s)
        out << "  n" << s << " [label=\"" << T.state_name(s) << "\"];\n";
    for (int s = 0; s < T.state_count(); ++s)
        for (int a = 0; a < T.letter_count(); ++a) {
            const auto& arrow = T.step(s, a);
            out << "  n" << s << " -> n" << arrow.next << " [label=\"" << T.letter_name(a) << "/"
                << T.letter_name(arrow.out) << "\"];\n";
        }
    out << "}\n";
    return out.str();
}

namespace {

std::vector<int> split_word(const std::vector<std::string>& names, std::string_view text,
                            const char* kind) {
    std::vector<int> word;
    size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == '.' || text[pos] == ' ') {
            ++pos;
            continue;
        }
        int best = -1;
        size_t best_len = 0;
        for (size_t i = 0; i < names.size(); ++i) {
            const auto& n = names[i];
            if (n.size() > best_len && text.substr(pos, n.size()) == n) {
                best = static_cast<int>(i);
                best_len = n.size();
            }
        }
        if (best < 0)
            throw InputError("cannot read a " + std::string(kind) + " name at '" +
                             std::string(text.substr(pos)) + "'");
        word.push_back(best);
        pos += best_len;
    }
    return word;
}

} // namespace

StateWord parse_state_word(const SAutomaton& T, std::string_view text) {
    return split_word(T.state_names(), text, "state");
}

LetterWord parse_letter_word(const SAutomaton& T, std::string_view text) {
    return split_word(T.letter_names(), text, "letter");
}

std::string state_word_to_string(const SAutomaton& T, const StateWord& p) {
    std::string out;
    for (int s : p)
        out += T.state_name(s);
    return out;
}

std::string letter_word_to_string(const SAutomaton& T, const LetterWord& u) {
    std::string out;
    for (int a : u)
        out += T.letter_name(a);
    return out;
}

} // namespace asg
