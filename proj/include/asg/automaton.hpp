#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asg/errors.hpp"

namespace asg {

/// Sequence of state indices. The rightmost entry acts first:
/// for p = q_k ... q_1 we have p(u) = q_k(...(q_1(u))).
using StateWord = std::vector<int>;

/// Sequence of letter indices.
using LetterWord = std::vector<int>;

/// Separator used in identifiers of constructed states (power/composition
/// tuples). Parsed identifiers may not contain it.
inline constexpr char kIdSeparator = ',';

/// A complete deterministic letter-to-letter transducer (Q, Sigma, delta).
/// Exactly one transition per (state, input letter).
class SAutomaton {
public:
    struct Arrow {
        int out;  ///< output letter
        int next; ///< successor state
    };

    SAutomaton() = default;

    /// Validating constructor. `delta[s * letters.size() + a]` holds the
    /// transition of state s on input letter a.
    SAutomaton(std::vector<std::string> states, std::vector<std::string> letters,
               std::vector<Arrow> delta);

    int state_count() const { return static_cast<int>(states_.size()); }
    int letter_count() const { return static_cast<int>(letters_.size()); }

    const std::vector<std::string>& state_names() const { return states_; }
    const std::vector<std::string>& letter_names() const { return letters_; }

    const std::string& state_name(int s) const { return states_.at(s); }
    const std::string& letter_name(int a) const { return letters_.at(a); }

    const Arrow& step(int state, int letter) const {
        return delta_[static_cast<size_t>(state) * letters_.size() + letter];
    }

    /// Index lookup by name; -1 when absent.
    int state_index(std::string_view name) const;
    int letter_index(std::string_view name) const;

    /// Index lookup by name; throws InputError when absent.
    int require_state(std::string_view name) const;
    int require_letter(std::string_view name) const;

    bool same_letters(const SAutomaton& other) const;

    void check_state_word(const StateWord& p) const;
    void check_letter_word(const LetterWord& u) const;

private:
    std::vector<std::string> states_;
    std::vector<std::string> letters_;
    std::vector<Arrow> delta_;
};

/// Run of a single state on a word: returns (output word, end state).
std::pair<LetterWord, int> run(const SAutomaton& T, int state, const LetterWord& u);

/// Left action p o u. |result| = |u|; the empty word acts as identity.
LetterWord act(const SAutomaton& T, const StateWord& p, const LetterWord& u);

/// Dual right action p . u: the sequence of end states, |result| = |p|.
StateWord dual_act(const SAutomaton& T, const StateWord& p, const LetterWord& u);

/// k-fold composition of T with itself; states are k-tuples named by joining
/// component names with kIdSeparator (leftmost component most significant).
SAutomaton power(const SAutomaton& T, int k);

/// Composition: state q2q1 acts as "first q1, then q2". Alphabets must agree.
SAutomaton compose(const SAutomaton& T2, const SAutomaton& T1);

/// Disjoint union. Colliding state names of T2 are primed until free.
SAutomaton union_automata(const SAutomaton& T1, const SAutomaton& T2);

/// Dual automaton: states and letters swap roles,
/// a --p/q--> b  whenever  p --a/b--> q.
SAutomaton dual_automaton(const SAutomaton& T);

/// Minimization by partition refinement on (output letter, successor block)
/// signatures. Returns the quotient automaton (states named after the
/// first-declared member of each block) and the old-state -> new-state map.
std::pair<SAutomaton, std::vector<int>> minimize(const SAutomaton& T);

/// p =_T q: equality of the induced actions on all finite words, decided by
/// BFS over reachable pairs of tuple states.
bool equal_actions(const SAutomaton& T, const StateWord& p, const StateWord& q);

/// Text format: "alphabet:"/"states:" lines and one "p a -> b q" line per
/// transition; '#' starts a comment.
SAutomaton parse_automaton(const std::string& text);
std::string serialize_automaton(const SAutomaton& T);
std::string automaton_to_dot(const SAutomaton& T, const std::string& name = "automaton");

/// Splits a word literal over declared names (longest match; '.' may be used
/// as an explicit separator). Throws InputError if the string cannot be split.
StateWord parse_state_word(const SAutomaton& T, std::string_view text);
LetterWord parse_letter_word(const SAutomaton& T, std::string_view text);

std::string state_word_to_string(const SAutomaton& T, const StateWord& p);
std::string letter_word_to_string(const SAutomaton& T, const LetterWord& u);

} // namespace asg
