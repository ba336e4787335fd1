#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asg/expansion.hpp"

namespace asg {

inline constexpr size_t kBuchiStateCap = 100000;
inline constexpr size_t kMonoidCap = 200000;

/// Edge-accepting Buchi acceptor. Deterministic instances have exactly one
/// transition per (state, letter).
struct BuchiAcceptor {
    struct Edge {
        int src;
        int letter;
        int dst;
        bool accepting;
    };
    std::vector<std::string> alphabet;
    int nstates = 0;
    int initial = 0;
    std::vector<Edge> edges; ///< sorted by (src, letter, dst)
    bool deterministic = false;
    std::vector<LetterWord> representatives; ///< for orbit acceptors: per-state witness word

    int letter_count() const { return static_cast<int>(alphabet.size()); }
};

struct UltimatelyPeriodicWord {
    LetterWord stem;
    LetterWord loop; ///< nonempty
};

/// Deterministic Buchi acceptor for { alpha : |R o alpha| = infinite }.
/// States are canonical forms of the expansion-relation acceptors A_w,
/// deduplicated by nfra_canonical; a transition read at w is accepting iff
/// |R o w| < |R o wa|. Requires bounded activity.
BuchiAcceptor build_orbit_buchi(const SaturatedAutomaton& SA, const NerodeDfa& D,
                                size_t state_cap = kBuchiStateCap);

/// Lasso search: an accepting transition inside a reachable cycle yields the
/// witness (shortest stem, then shortest loop, then lexicographic).
std::optional<UltimatelyPeriodicWord> buchi_nonempty(const BuchiAcceptor& B);

/// Complement of a deterministic complete edge-Buchi acceptor: copy 1
/// mirrors B without accepting edges, nondeterministic jumps move along
/// non-accepting edges into copy 2, which contains only non-accepting edges
/// of B, all marked accepting.
BuchiAcceptor complement_det_buchi(const BuchiAcceptor& B);

/// Some u with u^omega accepted, if any; shortest then lexicographically
/// least, found by enumerating the flagged transition monoid.
std::optional<LetterWord> periodic_word_in_buchi(const BuchiAcceptor& B,
                                                 size_t monoid_cap = kMonoidCap);

/// Membership of u v^omega, by the flagged-matrix monoid of v.
bool buchi_accepts_ultimately_periodic(const BuchiAcceptor& B, const LetterWord& stem,
                                       const LetterWord& loop);

std::string buchi_to_dot(const BuchiAcceptor& B);

enum class Verdict { Finite, Infinite };

struct DecisionResult {
    Verdict verdict;
    std::optional<UltimatelyPeriodicWord> witness; ///< present iff Infinite
    std::optional<size_t> order;                   ///< present iff Finite and enumerable
};

/// Theorem-level decision: is the image of R in S(T) finite? R must be
/// suffix-closed and the activity bounded; violations raise
/// PreconditionError naming the broken hypothesis.
DecisionResult decide_r_finiteness(const SaturatedAutomaton& SA, const NerodeDfa& D,
                                   size_t order_cap = kDefaultSubsemigroupCap);

/// Finiteness of S(T) itself (R = Q*).
DecisionResult decide_finiteness(const SaturatedAutomaton& SA,
                                 size_t order_cap = kDefaultSubsemigroupCap);

/// Finiteness of the subsemigroup generated by the given words: generators
/// are lifted to single states of a union of powers, the automaton is
/// re-saturated and R = (lifted generators)* is suffix-closed by
/// construction.
DecisionResult decide_subsemigroup_finiteness(const SAutomaton& T, const std::vector<int>& subset,
                                              const std::vector<StateWord>& generators,
                                              size_t cap = kDefaultSubsemigroupCap);

struct TorsionReport {
    bool has_torsion_element;
    bool has_element_without_torsion;
    bool torsion_free;
};

/// Torsion questions for the dual semigroup S(dual T), answered via periodic
/// words in the orbit acceptor of T and its complement.
TorsionReport dual_torsion_checks(const SaturatedAutomaton& SA);

/// Order of the image of R in the generated semigroup; nullopt if the
/// enumeration exceeds the cap.
std::optional<size_t> enumerate_image_order(const SAutomaton& T, const NerodeDfa& D, size_t cap);

} // namespace asg
