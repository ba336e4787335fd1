#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "asg/activity.hpp"
#include "asg/orbits.hpp"

namespace asg {

/// Nondeterministic finite relation acceptor for the expansion relation E_w.
/// Words are read rightmost letter first (the emission order of orbital
/// runs); a pair (p, q) is accepted when initial runs on p and q end in
/// states related by F.
struct Nfra {
    struct StateInfo {
        int word;      ///< index into `words`
        int element;   ///< -1 for the epsilon tag, else element index of S+/=_T
        int in_class;  ///< class when the current word was entered
        int out_class; ///< guessed class after the S+ block (= in_class for tag epsilon)
    };

    std::vector<std::string> alphabet; ///< state names of the saturated automaton
    int nstates = 0;
    int initial = 0;
    std::vector<std::vector<std::vector<int>>> next; ///< next[state][letter] = sorted targets
    std::set<std::pair<int, int>> acceptance;        ///< F
    std::vector<StateInfo> info;
    std::vector<LetterWord> words;                ///< A(|w|) with w first
    std::vector<std::vector<int>> witness;        ///< W: per state, sorted orbit-word ids
    std::vector<LetterWord> witness_words;        ///< orbit-word id -> word
    int class_count = 0;                          ///< classes of the input-tracking DFA

    int letter_count() const { return static_cast<int>(alphabet.size()); }
};

/// Words of A(n), enumerated from the automaton-level active acceptor.
std::vector<LetterWord> active_words_of_length(const SaturatedAutomaton& SA, int n);

/// The acceptor A_w of Definition "expansion relation acceptor": states are
/// (u, tag, C, D) over u in A(|w|) u {w}, S+ blocks walk the Cayley table of
/// the saturation, and transitions with non-S output letters follow the
/// product T o w x R.
Nfra build_nfra(const SaturatedAutomaton& SA, const LetterWord& w, const NerodeDfa& D);

bool nfra_accepts(const Nfra& A, const StateWord& p, const StateWord& q);

/// Canonical byte sequence: equal iff the two acceptors are isomorphic as
/// edge-labeled graphs with a marked initial state and the acceptance
/// relation (state payloads are discarded). Color refinement with
/// individualization backtracking.
std::string nfra_canonical(const Nfra& A);

std::string nfra_to_dot(const SaturatedAutomaton& SA, const Nfra& A);

/// Exact oracle for E_w on pairs of words up to the given length: fixpoint
/// enumeration of the product machine paired with normal forms of run
/// outputs (normal-form length never decreases along a run, so the state
/// space is finite).
struct ExpansionOracle {
    std::set<std::pair<StateWord, StateWord>> nf_pairs; ///< pairs of normal forms
    int maxlen = 0;

    bool contains(const SaturatedAutomaton& SA, const StateWord& p, const StateWord& q) const;
};

ExpansionOracle expansion_oracle(const SaturatedAutomaton& SA, const LetterWord& w,
                                 const NerodeDfa& D, int maxlen);

/// All pairs (p1, p2) with 1 <= |p1|, |p2| <= maxlen in E_w.
std::set<std::pair<StateWord, StateWord>>
expansion_relation_bruteforce(const SaturatedAutomaton& SA, const LetterWord& w,
                              const NerodeDfa& D, int maxlen);

} // namespace asg
