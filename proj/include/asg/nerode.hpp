#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asg/automaton.hpp"

namespace asg {

inline constexpr size_t kSubsetConstructionCap = 1u << 20;

/// Minimal complete DFA over the states of a subject automaton; the states
/// of the DFA are the Myhill-Nerode classes of R.
struct NerodeDfa {
    std::vector<std::string> alphabet; ///< state names of the subject automaton
    int nclasses = 0;
    int initial = 0;
    std::vector<int> next; ///< next[c * alphabet.size() + letter]
    std::vector<bool> accepting;

    int letter_count() const { return static_cast<int>(alphabet.size()); }
    int step(int c, int letter) const {
        return next[static_cast<size_t>(c) * alphabet.size() + letter];
    }
};

/// Regex syntax: state names as atoms, implicit concatenation, '|', '*',
/// parentheses; the keyword Q* denotes the full language.
NerodeDfa nerode_from_regex(const SAutomaton& T, std::string_view regex);

/// Explicit acceptor text: "states:", "initial:", "accepting:" lines plus
/// "c q -> d" transition lines; may be nondeterministic or partial.
NerodeDfa nerode_from_acceptor_text(const SAutomaton& T, const std::string& text);

NerodeDfa nerode_all_words(const SAutomaton& T);

/// Minimal DFA of (g_1 | ... | g_k)* for single-state generators.
NerodeDfa nerode_star_of(const SAutomaton& T, const std::vector<int>& generator_states);

bool nerode_accepts(const NerodeDfa& D, const StateWord& r);

/// Shortest word of Suf(R) \ R, if any (lexicographic tie-break).
std::optional<StateWord> suffix_closure_violation(const NerodeDfa& D);

bool is_suffix_closed(const NerodeDfa& D);

/// Deterministic tracker for membership of a word that grows on the left.
/// Feeding letters p_1, p_2, ..., p_k (the temporal order of an orbital run)
/// reaches an accepting class iff the state word p_k ... p_1 is in R.
struct InputClassDfa {
    int nclasses = 0;
    int initial = 0;
    int nletters = 0;
    std::vector<int> next;
    std::vector<bool> accepting;

    int step(int c, int letter) const {
        return next[static_cast<size_t>(c) * nletters + letter];
    }
};

InputClassDfa input_class_dfa(const NerodeDfa& D);

} // namespace asg
