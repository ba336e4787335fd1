#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asg/nerode.hpp"

namespace asg {

inline constexpr size_t kOrbitCap = 1u << 22;

/// The orbital transducer T o w: states are the orbit words Q* o w over the
/// input alphabet Q; reading p from u outputs p.u and moves to p o u.
struct OrbitalTransducer {
    struct Edge {
        int out;    ///< emitted state letter p.u
        int target; ///< orbit-word index of p o u
    };
    std::vector<LetterWord> words; ///< index 0 is the root w
    std::map<LetterWord, int> index;
    int nletters = 0; ///< = state count of the underlying automaton
    std::vector<Edge> edges;

    int size() const { return static_cast<int>(words.size()); }
    const Edge& step(int word, int p) const {
        return edges[static_cast<size_t>(word) * nletters + p];
    }
};

OrbitalTransducer orbital_transducer(const SAutomaton& T, const LetterWord& w,
                                     size_t cap = kOrbitCap);

/// Reachable part of T o w x R. The class component advances by the input
/// letter of each step and is realized by the input-tracking class DFA, so a
/// state (u, C) is accepting-classed iff some r in R with r o w = u reaches it.
struct ProductMachine {
    struct Edge {
        int out;    ///< emitted state letter
        int target; ///< product-state index
    };
    OrbitalTransducer orbit;
    InputClassDfa classes;
    std::vector<std::pair<int, int>> states; ///< (orbit word index, class)
    std::map<std::pair<int, int>, int> index;
    int root = 0;
    int nletters = 0;
    std::vector<Edge> edges;

    int size() const { return static_cast<int>(states.size()); }
    const Edge& step(int state, int p) const {
        return edges[static_cast<size_t>(state) * nletters + p];
    }
    bool class_accepting(int state) const { return classes.accepting[states[state].second]; }
};

ProductMachine product_with_R(const SAutomaton& T, const LetterWord& w, const NerodeDfa& D,
                              size_t cap = kOrbitCap);

/// |R o w|: the number of distinct orbit words reachable with an accepting
/// class component.
size_t r_orbit_size(const SAutomaton& T, const LetterWord& w, const NerodeDfa& D);

/// x R-expands w iff |R o w| < |R o wx|.
bool expands(const SAutomaton& T, const LetterWord& w, const LetterWord& x, const NerodeDfa& D);

/// Shortest x with |x| <= maxlen expanding w; lexicographically least among
/// the shortest; nullopt when none exists within the bound.
std::optional<LetterWord> find_expander(const SAutomaton& T, const LetterWord& w,
                                        const NerodeDfa& D, int maxlen);

std::string orbital_transducer_to_dot(const SAutomaton& T, const OrbitalTransducer& O);
std::string product_machine_to_dot(const SAutomaton& T, const ProductMachine& PM);

} // namespace asg
