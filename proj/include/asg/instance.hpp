#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asg/decision.hpp"

namespace asg {

/// A fully resolved problem: automaton, closed subset S, R specification.
struct ProblemInstance {
    SAutomaton automaton;
    std::optional<std::vector<int>> s_subset; ///< resolved state indices
    std::string r_spec = "Q*";                ///< regex, or "@" + acceptor text marker
    std::string r_acceptor_text;              ///< explicit acceptor when r_spec == "@"
    size_t subsemigroup_cap = kDefaultSubsemigroupCap;
};

/// Parses the automaton text plus subset/R specifications ("{e,z}" or
/// "e,z"; R as regex, "Q*", or explicit acceptor text).
ProblemInstance parse_instance(const std::string& automaton_text, const std::string& s_spec = "",
                               const std::string& r_spec = "Q*",
                               const std::string& r_acceptor_text = "");

std::vector<int> parse_subset(const SAutomaton& T, const std::string& spec);

NerodeDfa resolve_r(const ProblemInstance& instance, const SAutomaton& subject,
                    const std::vector<int>& origin_map);

struct Command {
    std::string name;              ///< activity, orbit, finite, sub-finite, torsion, buchi, witness
    std::string word;              ///< for orbit
    std::vector<std::string> gens; ///< for sub-finite
    std::string dot_path;          ///< for buchi / orbit
    bool human = false;
};

struct CommandResult {
    std::string output; ///< report text, newline-terminated
    int exit_code;      ///< 0 decided, 2 precondition failed, 3 resource limit
    std::string dot;    ///< DOT payload when the command produces one
};

/// Dispatches a command against an instance. Output is byte-deterministic
/// for identical inputs; errors are reported in-band with the documented
/// exit codes.
CommandResult run_command(const ProblemInstance& instance, const Command& command);

} // namespace asg
