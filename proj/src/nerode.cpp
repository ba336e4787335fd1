#include "asg/nerode.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace asg {

namespace {

// ---------------------------------------------------------------------------
// NFA with epsilon transitions, subset construction, Moore minimization.

struct Nfa {
    int nletters = 0;
    int nstates = 0;
    std::vector<std::vector<std::pair<int, int>>> edges; // per state: (letter or -1, target)
    std::vector<int> initial;
    std::vector<bool> accepting;

    int add_state() {
        edges.emplace_back();
        accepting.push_back(false);
        return nstates++;
    }
    void add_edge(int s, int letter, int t) { edges[s].emplace_back(letter, t); }
};

std::vector<int> eps_closure(const Nfa& nfa, std::vector<int> set) {
    std::vector<bool> in(nfa.nstates, false);
    for (int s : set)
        in[s] = true;
    std::vector<int> stack = set;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (auto [letter, t] : nfa.edges[s])
            if (letter < 0 && !in[t]) {
                in[t] = true;
                set.push_back(t);
                stack.push_back(t);
            }
    }
    std::sort(set.begin(), set.end());
    return set;
}

struct Dfa {
    int nletters = 0;
    int nstates = 0;
    int initial = 0;
    std::vector<int> next;
    std::vector<bool> accepting;
};

Dfa determinize(const Nfa& nfa) {
    Dfa dfa;
    dfa.nletters = nfa.nletters;
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> sets;
    auto intern = [&](std::vector<int> set) {
        auto [it, inserted] = index.emplace(std::move(set), static_cast<int>(sets.size()));
        if (inserted) {
            sets.push_back(it->first);
            if (sets.size() > kSubsetConstructionCap)
                throw ResourceError("subset construction exceeded " +
                                    std::to_string(kSubsetConstructionCap) + " states");
        }
        return it->second;
    };
    dfa.initial = intern(eps_closure(nfa, nfa.initial));
    for (size_t head = 0; head < sets.size(); ++head) {
        std::vector<int> current = sets[head];
        for (int a = 0; a < nfa.nletters; ++a) {
            std::set<int> targets;
            for (int s : current)
                for (auto [letter, t] : nfa.edges[s])
                    if (letter == a)
                        targets.insert(t);
            int id = intern(eps_closure(nfa, std::vector<int>(targets.begin(), targets.end())));
            dfa.next.resize(sets.size() * nfa.nletters, -1);
            dfa.next[head * nfa.nletters + a] = id;
        }
    }
    dfa.nstates = static_cast<int>(sets.size());
    dfa.next.resize(static_cast<size_t>(dfa.nstates) * nfa.nletters, -1);
    dfa.accepting.assign(dfa.nstates, false);
    for (int i = 0; i < dfa.nstates; ++i)
        for (int s : sets[i])
            if (nfa.accepting[s])
                dfa.accepting[i] = true;
    return dfa;
}

Dfa minimize_dfa(const Dfa& dfa) {
    const int n = dfa.nstates;
    const int na = dfa.nletters;
    std::vector<int> block(n);
    for (int s = 0; s < n; ++s)
        block[s] = dfa.accepting[s] ? 1 : 0;
    for (;;) {
        std::map<std::pair<int, std::vector<int>>, int> index;
        std::vector<int> next_block(n);
        for (int s = 0; s < n; ++s) {
            std::vector<int> sig(na);
            for (int a = 0; a < na; ++a)
                sig[a] = block[dfa.next[static_cast<size_t>(s) * na + a]];
            auto [it, ins] = index.emplace(std::make_pair(block[s], std::move(sig)),
                                           static_cast<int>(index.size()));
            next_block[s] = it->second;
        }
        if (next_block == block)
            break;
        block = std::move(next_block);
    }
    // renumber blocks: initial's block first, then BFS discovery order
    int nblocks = *std::max_element(block.begin(), block.end()) + 1;
    std::vector<int> renum(nblocks, -1);
    std::vector<int> rep;
    std::vector<int> queue{dfa.initial};
    renum[block[dfa.initial]] = 0;
    rep.push_back(dfa.initial);
    for (size_t head = 0; head < queue.size(); ++head)
        for (int a = 0; a < na; ++a) {
            int t = dfa.next[static_cast<size_t>(queue[head]) * na + a];
            if (renum[block[t]] < 0) {
                renum[block[t]] = static_cast<int>(rep.size());
                rep.push_back(t);
                queue.push_back(t);
            }
        }
    Dfa out;
    out.nletters = na;
    out.nstates = static_cast<int>(rep.size());
    out.initial = 0;
    out.next.resize(static_cast<size_t>(out.nstates) * na);
    out.accepting.resize(out.nstates);
    for (int b = 0; b < out.nstates; ++b) {
        out.accepting[b] = dfa.accepting[rep[b]];
        for (int a = 0; a < na; ++a)
            out.next[static_cast<size_t>(b) * na + a] =
                renum[block[dfa.next[static_cast<size_t>(rep[b]) * na + a]]];
    }
    return out;
}

NerodeDfa to_nerode(const SAutomaton& T, const Dfa& dfa) {
    NerodeDfa d;
    d.alphabet = T.state_names();
    d.nclasses = dfa.nstates;
    d.initial = dfa.initial;
    d.next = dfa.next;
    d.accepting = dfa.accepting;
    return d;
}

// ---------------------------------------------------------------------------
// Regex parsing (atoms are state names; '|', '*', '(', ')', implicit concat).

struct RegexNode {
    enum Kind { Atom, Concat, Alt, Star, Epsilon } kind;
    int letter = -1;
    std::unique_ptr<RegexNode> left, right;
};

struct RegexParser {
    const SAutomaton& T;
    std::vector<std::string> tokens; // state names and punctuation
    size_t pos = 0;

    explicit RegexParser(const SAutomaton& T, std::string_view text) : T(T) {
        size_t i = 0;
        while (i < text.size()) {
            char c = text[i];
            if (c == ' ' || c == '\t') {
                ++i;
                continue;
            }
            if (c == '|' || c == '*' || c == '(' || c == ')') {
                tokens.emplace_back(1, c);
                ++i;
                continue;
            }
            // longest state name match
            int best = -1;
            size_t best_len = 0;
            for (const auto& name : T.state_names())
                if (name.size() > best_len && text.substr(i, name.size()) == name) {
                    best = 1;
                    best_len = name.size();
                }
            if (best < 0)
                throw InputError("regex: cannot read a state name at '" +
                                 std::string(text.substr(i)) + "'");
            tokens.emplace_back(text.substr(i, best_len));
            i += best_len;
        }
    }

    bool at_atom_start() const {
        if (pos >= tokens.size())
            return false;
        const auto& t = tokens[pos];
        return t != "|" && t != "*" && t != ")";
    }

    std::unique_ptr<RegexNode> parse_alt() {
        auto node = parse_concat();
        while (pos < tokens.size() && tokens[pos] == "|") {
            ++pos;
            auto rhs = parse_concat();
            auto alt = std::make_unique<RegexNode>();
            alt->kind = RegexNode::Alt;
            alt->left = std::move(node);
            alt->right = std::move(rhs);
            node = std::move(alt);
        }
        return node;
    }

    std::unique_ptr<RegexNode> parse_concat() {
        std::unique_ptr<RegexNode> node;
        while (at_atom_start()) {
            auto factor = parse_factor();
            if (!node) {
                node = std::move(factor);
            } else {
                auto cat = std::make_unique<RegexNode>();
                cat->kind = RegexNode::Concat;
                cat->left = std::move(node);
                cat->right = std::move(factor);
                node = std::move(cat);
            }
        }
        if (!node) {
            node = std::make_unique<RegexNode>();
            node->kind = RegexNode::Epsilon;
        }
        return node;
    }

    std::unique_ptr<RegexNode> parse_factor() {
        auto node = parse_atom();
        while (pos < tokens.size() && tokens[pos] == "*") {
            ++pos;
            auto star = std::make_unique<RegexNode>();
            star->kind = RegexNode::Star;
            star->left = std::move(node);
            node = std::move(star);
        }
        return node;
    }

    std::unique_ptr<RegexNode> parse_atom() {
        if (pos >= tokens.size())
            throw InputError("regex: unexpected end of input");
        if (tokens[pos] == "(") {
            ++pos;
            auto node = parse_alt();
            if (pos >= tokens.size() || tokens[pos] != ")")
                throw InputError("regex: missing ')'");
            ++pos;
            return node;
        }
        int letter = T.state_index(tokens[pos]);
        if (letter < 0)
            throw InputError("regex: unknown state '" + tokens[pos] + "'");
        ++pos;
        auto node = std::make_unique<RegexNode>();
        node->kind = RegexNode::Atom;
        node->letter = letter;
        return node;
    }
};

// Thompson construction; returns (entry, exit).
std::pair<int, int> thompson(Nfa& nfa, const RegexNode& node) {
    switch (node.kind) {
    case RegexNode::Atom: {
        int a = nfa.add_state();
        int b = nfa.add_state();
        nfa.add_edge(a, node.letter, b);
        return {a, b};
    }
    case RegexNode::Epsilon: {
        int a = nfa.add_state();
        return {a, a};
    }
    case RegexNode::Concat: {
        auto [a1, b1] = thompson(nfa, *node.left);
        auto [a2, b2] = thompson(nfa, *node.right);
        nfa.add_edge(b1, -1, a2);
        return {a1, b2};
    }
    case RegexNode::Alt: {
        auto [a1, b1] = thompson(nfa, *node.left);
        auto [a2, b2] = thompson(nfa, *node.right);
        int a = nfa.add_state();
        int b = nfa.add_state();
        nfa.add_edge(a, -1, a1);
        nfa.add_edge(a, -1, a2);
        nfa.add_edge(b1, -1, b);
        nfa.add_edge(b2, -1, b);
        return {a, b};
    }
    case RegexNode::Star: {
        auto [a1, b1] = thompson(nfa, *node.left);
        int a = nfa.add_state();
        nfa.add_edge(a, -1, a1);
        nfa.add_edge(b1, -1, a);
        return {a, a};
    }
    }
    throw InputError("regex: bad node");
}

} // namespace

NerodeDfa nerode_from_regex(const SAutomaton& T, std::string_view regex) {
    // trim
    while (!regex.empty() && (regex.front() == ' ' || regex.front() == '\t'))
        regex.remove_prefix(1);
    while (!regex.empty() && (regex.back() == ' ' || regex.back() == '\t'))
        regex.remove_suffix(1);
    if (regex == "Q*" || regex.empty())
        return nerode_all_words(T);

    RegexParser parser(T, regex);
    auto tree = parser.parse_alt();
    if (parser.pos != parser.tokens.size())
        throw InputError("regex: trailing input starting at '" + parser.tokens[parser.pos] + "'");

    Nfa nfa;
    nfa.nletters = T.state_count();
    auto [entry, exit] = thompson(nfa, *tree);
    nfa.initial = {entry};
    nfa.accepting[exit] = true;
    return to_nerode(T, minimize_dfa(determinize(nfa)));
}

NerodeDfa nerode_from_acceptor_text(const SAutomaton& T, const std::string& text) {
    std::vector<std::string> classes;
    std::vector<std::string> initials, acceptings;
    struct Raw {
        std::string src, letter, dst;
        int line;
    };
    std::vector<Raw> raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.erase(pos);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok)
            tokens.push_back(tok);
        if (tokens.empty())
            continue;
        if (tokens[0] == "states:")
            classes.assign(tokens.begin() + 1, tokens.end());
        else if (tokens[0] == "initial:")
            initials.assign(tokens.begin() + 1, tokens.end());
        else if (tokens[0] == "accepting:")
            acceptings.assign(tokens.begin() + 1, tokens.end());
        else if (tokens.size() == 4 && tokens[2] == "->")
            raw.push_back({tokens[0], tokens[1], tokens[3], lineno});
        else
            throw InputError("acceptor line " + std::to_string(lineno) +
                             ": expected 'c letter -> d'");
    }
    if (classes.empty())
        throw InputError("acceptor: missing states: line");
    if (initials.empty())
        throw InputError("acceptor: missing initial: line");

    auto find_class = [&](const std::string& name, int ln) {
        for (size_t i = 0; i < classes.size(); ++i)
            if (classes[i] == name)
                return static_cast<int>(i);
        throw InputError("acceptor line " + std::to_string(ln) + ": unknown state '" + name + "'");
    };

    Nfa nfa;
    nfa.nletters = T.state_count();
    for (size_t i = 0; i < classes.size(); ++i)
        nfa.add_state();
    for (const auto& name : initials)
        nfa.initial.push_back(find_class(name, 0));
    for (const auto& name : acceptings)
        nfa.accepting[find_class(name, 0)] = true;
    for (const auto& t : raw)
        nfa.add_edge(find_class(t.src, t.line), T.require_state(t.letter), find_class(t.dst, t.line));
    return to_nerode(T, minimize_dfa(determinize(nfa)));
}

NerodeDfa nerode_all_words(const SAutomaton& T) {
    NerodeDfa d;
    d.alphabet = T.state_names();
    d.nclasses = 1;
    d.initial = 0;
    d.next.assign(T.state_count(), 0);
    d.accepting = {true};
    return d;
}

NerodeDfa nerode_star_of(const SAutomaton& T, const std::vector<int>& generator_states) {
    Nfa nfa;
    nfa.nletters = T.state_count();
    int s = nfa.add_state();
    nfa.initial = {s};
    nfa.accepting[s] = true;
    for (int g : generator_states) {
        if (g < 0 || g >= T.state_count())
            throw InputError("generator state out of range");
        nfa.add_edge(s, g, s);
    }
    return to_nerode(T, minimize_dfa(determinize(nfa)));
}

bool nerode_accepts(const NerodeDfa& D, const StateWord& r) {
    int c = D.initial;
    for (int letter : r) {
        if (letter < 0 || letter >= D.letter_count())
            throw InputError("word references an unknown state letter");
        c = D.step(c, letter);
    }
    return D.accepting[c];
}

std::optional<StateWord> suffix_closure_violation(const NerodeDfa& D) {
    const int n = D.nclasses;
    const int na = D.letter_count();

    // useful = accessible and co-accessible classes
    std::vector<bool> accessible(n, false);
    {
        std::vector<int> stack{D.initial};
        accessible[D.initial] = true;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int a = 0; a < na; ++a)
                if (!accessible[D.step(c, a)]) {
                    accessible[D.step(c, a)] = true;
                    stack.push_back(D.step(c, a));
                }
        }
    }
    std::vector<bool> coaccessible(n, false);
    {
        std::vector<std::vector<int>> rev(n);
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < na; ++a)
                rev[D.step(c, a)].push_back(c);
        std::vector<int> stack;
        for (int c = 0; c < n; ++c)
            if (D.accepting[c]) {
                coaccessible[c] = true;
                stack.push_back(c);
            }
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int p : rev[c])
                if (!coaccessible[p]) {
                    coaccessible[p] = true;
                    stack.push_back(p);
                }
        }
    }

    // BFS over (suffix-NFA state, D state) pairs; the suffix NFA is D with
    // every useful state initial. A pair (accepting, non-accepting) witnesses
    // a word of Suf(R) \ R.
    std::set<std::pair<int, int>> seen;
    struct Item {
        int s, c;
        StateWord word;
    };
    std::vector<Item> queue;
    for (int s = 0; s < n; ++s)
        if (accessible[s] && coaccessible[s] && seen.emplace(s, D.initial).second)
            queue.push_back({s, D.initial, {}});
    for (size_t head = 0; head < queue.size(); ++head) {
        auto item = queue[head];
        if (D.accepting[item.s] && !D.accepting[item.c])
            return item.word;
        for (int a = 0; a < na; ++a) {
            int s2 = D.step(item.s, a);
            int c2 = D.step(item.c, a);
            if (seen.emplace(s2, c2).second) {
                StateWord w = item.word;
                w.push_back(a);
                queue.push_back({s2, c2, std::move(w)});
            }
        }
    }
    return std::nullopt;
}

bool is_suffix_closed(const NerodeDfa& D) {
    return !suffix_closure_violation(D).has_value();
}

InputClassDfa input_class_dfa(const NerodeDfa& D) {
    // reverse D, determinize, minimize: the resulting DFA, fed with the
    // temporally read input letters, tracks membership of the left-growing
    // state word in R
    Nfa nfa;
    nfa.nletters = D.letter_count();
    for (int i = 0; i < D.nclasses; ++i)
        nfa.add_state();
    for (int c = 0; c < D.nclasses; ++c) {
        if (D.accepting[c])
            nfa.initial.push_back(c);
        for (int a = 0; a < nfa.nletters; ++a)
            nfa.add_edge(D.step(c, a), a, c); // reversed edge
    }
    nfa.accepting[D.initial] = true;
    Dfa dfa = minimize_dfa(determinize(nfa));
    InputClassDfa out;
    out.nclasses = dfa.nstates;
    out.initial = dfa.initial;
    out.nletters = dfa.nletters;
    out.next = dfa.next;
    out.accepting = dfa.accepting;
    return out;
}

} // namespace asg
