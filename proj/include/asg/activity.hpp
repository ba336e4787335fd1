#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asg/semigroup.hpp"

namespace asg {

/// Acceptor for sets of output words; transitions are labeled by the output
/// letters of the underlying transducer runs.
struct WordNfa {
    std::vector<std::string> alphabet;
    int nstates = 0;
    std::vector<std::vector<std::vector<int>>> next; ///< next[state][letter] = sorted targets
    std::vector<int> initial;
    std::vector<bool> accepting;

    int letter_count() const { return static_cast<int>(alphabet.size()); }
};

enum class GrowthKind { Finite, Polynomial, Exponential };

struct GrowthReport {
    GrowthKind klass = GrowthKind::Finite;
    int degree = 0; ///< meaningful for Polynomial only
    bool bounded = false;
    std::optional<unsigned long long> sup_count; ///< present iff bounded
};

/// Acceptor of A_p = { p o u : p . u not in S+ } with p viewed as a single
/// state of the |p|-th power; S+ membership is the normal-form test (all
/// letters in s_states).
WordNfa active_word_acceptor(const SaturatedAutomaton& SA, const StateWord& p);

/// Acceptor of A = union of A_q over all single states q.
WordNfa automaton_active_acceptor(const SaturatedAutomaton& SA);

/// Growth classification of the accepted language: finite, polynomial of an
/// exact degree, or exponential. sup_count is the supremum of per-length
/// counts when these are bounded.
GrowthReport growth_class(const WordNfa& nfa);

/// Per-length count of the accepted language, by determinization.
unsigned long long accepted_count_of_length(const WordNfa& nfa, int n);

/// |A(n)| by exhaustive enumeration of all inputs of length n.
unsigned long long count_active(const SaturatedAutomaton& SA, int n, int max_n = 12);

bool is_bounded_activity(const SaturatedAutomaton& SA);

} // namespace asg
