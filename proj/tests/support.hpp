#pragma once

// Shared helpers for the test suites: bundled-file loading, random automata,
// and small independent oracles (reference action recursion, brute-force
// orbit and activity counts, NFA simulation).

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "asg/activity.hpp"
#include "asg/automaton.hpp"
#include "asg/nerode.hpp"
#include "asg/semigroup.hpp"

namespace asgtest {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline asg::SAutomaton load_bundled(const std::string& name) {
    return asg::parse_automaton(read_file(std::string(ASG_DATA_DIR) + "/" + name));
}

inline asg::SAutomaton random_automaton(std::mt19937& rng, int nstates, int nletters) {
    std::vector<std::string> states, letters;
    for (int i = 0; i < nstates; ++i)
        states.push_back("s" + std::to_string(i));
    for (int i = 0; i < nletters; ++i)
        letters.push_back(std::to_string(i));
    std::vector<asg::SAutomaton::Arrow> delta;
    std::uniform_int_distribution<int> pick_letter(0, nletters - 1);
    std::uniform_int_distribution<int> pick_state(0, nstates - 1);
    for (int s = 0; s < nstates; ++s)
        for (int a = 0; a < nletters; ++a)
            delta.push_back({pick_letter(rng), pick_state(rng)});
    return asg::SAutomaton(states, letters, delta);
}

inline std::vector<asg::LetterWord> all_letter_words(int nletters, int len) {
    std::vector<asg::LetterWord> out;
    if (len == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> idx(len, 0);
    for (;;) {
        out.emplace_back(idx.begin(), idx.end());
        int pos = len - 1;
        while (pos >= 0 && ++idx[pos] == nletters)
            idx[pos--] = 0;
        if (pos < 0)
            break;
    }
    return out;
}

inline std::vector<asg::StateWord> all_state_words(int nstates, int len) {
    return all_letter_words(nstates, len);
}

// Reference implementation of the action recurrences, straight from the
// definitions (q p o u = q o (p o u), q p . u = [q . (p o u)](p . u)).
inline asg::LetterWord reference_act(const asg::SAutomaton& T, const asg::StateWord& p,
                                     const asg::LetterWord& u) {
    if (p.empty())
        return u;
    asg::StateWord head(p.begin(), p.end() - 1);
    int last = p.back();
    asg::LetterWord step;
    int cur = last;
    for (int a : u) {
        step.push_back(T.step(cur, a).out);
        cur = T.step(cur, a).next;
    }
    return reference_act(T, head, step);
}

inline asg::StateWord reference_dual_act(const asg::SAutomaton& T, const asg::StateWord& p,
                                         const asg::LetterWord& u) {
    if (p.empty())
        return {};
    asg::StateWord head(p.begin(), p.end() - 1);
    int last = p.back();
    asg::LetterWord out;
    int cur = last;
    for (int a : u) {
        out.push_back(T.step(cur, a).out);
        cur = T.step(cur, a).next;
    }
    asg::StateWord result = reference_dual_act(T, head, out);
    result.push_back(cur);
    return result;
}

// Brute-force |A_p(n)| with the normal-form membership convention (a state
// sequence lies in "S+" iff all its letters are s_states).
inline size_t brute_active_count(const asg::SaturatedAutomaton& SA, const asg::StateWord& p,
                                 int n) {
    std::set<asg::LetterWord> active;
    for (const auto& u : all_letter_words(SA.automaton.letter_count(), n)) {
        asg::StateWord residual = asg::dual_act(SA.automaton, p, u);
        bool all_s = true;
        for (int s : residual)
            all_s = all_s && SA.in_s(s);
        if (!all_s)
            active.insert(asg::act(SA.automaton, p, u));
    }
    return active.size();
}

// Brute-force R-orbit: images of all r in R up to the length where the size
// stabilizes twice.
inline std::set<asg::LetterWord> brute_r_orbit(const asg::SAutomaton& T, const asg::LetterWord& w,
                                               const asg::NerodeDfa& D, int max_len = 12) {
    std::set<asg::LetterWord> orbit;
    int stable = 0;
    for (int len = 0; len <= max_len && stable < 2; ++len) {
        size_t before = orbit.size();
        for (const auto& r : all_state_words(T.state_count(), len))
            if (asg::nerode_accepts(D, r))
                orbit.insert(asg::act(T, r, w));
        stable = (orbit.size() == before && len > 0) ? stable + 1 : 0;
    }
    return orbit;
}

// Exact R-orbit by closure over configurations (x o w, c -> delta*(c, x))
// where x runs over processed suffixes; r is in R iff its map sends the
// initial class to an accepting one. Exhausts all run lengths.
inline std::set<asg::LetterWord> brute_r_orbit_exact(const asg::SAutomaton& T,
                                                     const asg::LetterWord& w,
                                                     const asg::NerodeDfa& D) {
    using Config = std::pair<asg::LetterWord, std::vector<int>>;
    std::vector<int> identity(D.nclasses);
    for (int c = 0; c < D.nclasses; ++c)
        identity[c] = c;
    std::set<Config> seen;
    std::vector<Config> queue{{w, identity}};
    seen.insert(queue.front());
    std::set<asg::LetterWord> orbit;
    while (!queue.empty()) {
        auto [word, map] = std::move(queue.back());
        queue.pop_back();
        if (D.accepting[map[D.initial]])
            orbit.insert(word);
        for (int p = 0; p < T.state_count(); ++p) {
            Config next;
            next.first = asg::act(T, {p}, word);
            next.second.resize(D.nclasses);
            for (int c = 0; c < D.nclasses; ++c)
                next.second[c] = map[D.step(c, p)]; // prepend p to the suffix
            if (seen.insert(next).second)
                queue.push_back(std::move(next));
        }
    }
    return orbit;
}

// Subset simulation of a WordNfa.
inline bool nfa_accepts(const asg::WordNfa& nfa, const asg::LetterWord& word) {
    std::set<int> current(nfa.initial.begin(), nfa.initial.end());
    for (int a : word) {
        std::set<int> next;
        for (int s : current)
            for (int t : nfa.next[s][a])
                next.insert(t);
        current = std::move(next);
    }
    for (int s : current)
        if (nfa.accepting[s])
            return true;
    return false;
}

inline std::set<asg::LetterWord> nfa_words_of_length(const asg::WordNfa& nfa, int n) {
    std::set<asg::LetterWord> out;
    for (const auto& u : all_letter_words(nfa.letter_count(), n))
        if (nfa_accepts(nfa, u))
            out.insert(u);
    return out;
}

} // namespace asgtest
