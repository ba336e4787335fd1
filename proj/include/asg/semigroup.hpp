#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "asg/automaton.hpp"

namespace asg {

inline constexpr size_t kDefaultSubsemigroupCap = 10000;

/// A finite semigroup given by a multiplication table over element indices.
/// Elements carry canonical representative words (shortest, then
/// lexicographic by generator index).
struct FiniteSemigroup {
    std::vector<StateWord> elements;            ///< canonical representative words
    std::vector<std::vector<int>> table;        ///< table[i][j] = index of elements[i]elements[j]
    std::vector<std::pair<StateWord, int>> generator_map; ///< generator word -> element index
    std::vector<std::vector<int>> derivations;  ///< per element, a word over generator indices

    size_t size() const { return elements.size(); }
    bool is_associative() const;

    /// Builds a semigroup from a raw table, deriving elements reachable from
    /// the given generators. Mostly useful for tests.
    static FiniteSemigroup from_table(const std::vector<std::vector<int>>& table,
                                      const std::vector<int>& generators);
};

/// S is closed iff the dual action cannot leave S; single letters suffice.
bool is_closed(const SAutomaton& T, const std::vector<int>& subset);

/// Cayley-graph BFS of the subsemigroup generated by the given states, with
/// equality decided by equal_actions. nullopt when more than `cap` elements
/// exist.
std::optional<FiniteSemigroup> enumerate_subsemigroup(const SAutomaton& T,
                                                      const std::vector<int>& subset, size_t cap);

/// Like enumerate_subsemigroup but with arbitrary nonempty words as
/// generators (used for subsemigroup finiteness with word generators).
std::optional<FiniteSemigroup> enumerate_generated(const SAutomaton& T,
                                                   const std::vector<StateWord>& generators,
                                                   size_t cap);

/// Result of the saturation preprocessing: the automaton is replaced by a
/// minimized union of powers so that every product of S-states equals
/// exactly one dedicated state.
struct SaturatedAutomaton {
    SAutomaton automaton;
    std::vector<int> s_states;   ///< s_states[i] is the state of element i of S+/=_T
    std::vector<int> origin_map; ///< original state -> state of `automaton`
    std::vector<std::vector<int>> s_table; ///< element multiplication, s_i s_j = s_{table[i][j]}
    std::vector<int> s_index;    ///< state -> element index, -1 outside s_states

    bool in_s(int state) const { return s_index[state] >= 0; }
    /// Element index of the concatenation s_i s_j.
    int mult(int i, int j) const { return s_table[i][j]; }
};

SaturatedAutomaton saturate(const SAutomaton& T, const std::vector<int>& subset,
                            size_t cap = kDefaultSubsemigroupCap);

/// Free-product normal form: every maximal block of s_states letters is
/// replaced by the single state of its product.
StateWord normal_form(const SaturatedAutomaton& SA, const StateWord& p);

/// p and q are equivalent up to reductions within S+ blocks.
bool approx_equiv(const SaturatedAutomaton& SA, const StateWord& p, const StateWord& q);

/// All nonempty closed subsets (by closure of every seed for |Q| <= 16,
/// else singleton seeds only) with their subsemigroup enumeration.
std::vector<std::pair<std::vector<int>, std::optional<FiniteSemigroup>>>
discover_closed_subsets(const SAutomaton& T, size_t cap = kDefaultSubsemigroupCap);

/// Isomorphism of finite semigroups by backtracking over generator images.
bool iso_finite_semigroups(const FiniteSemigroup& A, const FiniteSemigroup& B);

} // namespace asg
