// Command-line front end: decides finiteness, subsemigroup finiteness and
// dual torsion questions for complete S-automata of bounded S-activity.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "asg/instance.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw asg::InputError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct CommonOptions {
    std::string automaton_path;
    std::string s_spec;
    std::string r_spec = "Q*";
    size_t cap = asg::kDefaultSubsemigroupCap;
    bool human = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_s = true, bool with_r = true) {
    cmd->add_option("automaton", opts.automaton_path, "automaton file")->required();
    if (with_s)
        cmd->add_option("--S", opts.s_spec, "closed subset, e.g. '{e,z}' or 'e,z'");
    if (with_r)
        cmd->add_option("--R", opts.r_spec,
                        "regular language over the states: 'Q*', a regex, or @acceptor-file");
    cmd->add_option("--cap", opts.cap, "subsemigroup enumeration cap");
    cmd->add_flag("--human", opts.human, "human-readable report instead of JSON");
}

int execute(const CommonOptions& opts, asg::Command command, const std::string& dot_path) {
    std::string r_spec = opts.r_spec;
    std::string r_acceptor;
    if (!r_spec.empty() && r_spec.front() == '@') {
        r_acceptor = read_file(r_spec.substr(1));
        r_spec = "@";
    }
    asg::ProblemInstance instance =
        asg::parse_instance(read_file(opts.automaton_path), opts.s_spec, r_spec, r_acceptor);
    instance.subsemigroup_cap = opts.cap;
    command.human = opts.human;
    command.dot_path = dot_path;

    asg::CommandResult result = asg::run_command(instance, command);
    if (!dot_path.empty() && !result.dot.empty()) {
        std::ofstream out(dot_path, std::ios::binary);
        if (!out)
            throw asg::InputError("cannot write '" + dot_path + "'");
        out << result.dot;
    }
    std::cout << result.output;
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decision procedures for automaton semigroups of bounded S-activity"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string word;
    std::vector<std::string> gens;
    std::string dot_path;

    auto* activity = app.add_subcommand("activity", "growth class of the S-activity");
    add_common(activity, opts, true, false);

    auto* orbit = app.add_subcommand("orbit", "R-orbit size of a word");
    add_common(orbit, opts, false, true);
    orbit->add_option("--word", word, "input word over the alphabet")->required();
    orbit->add_option("--dot", dot_path, "write the product machine as DOT");

    auto* finite = app.add_subcommand("finite", "is the image of R in S(T) finite?");
    add_common(finite, opts);

    auto* sub = app.add_subcommand("sub-finite", "is the subsemigroup generated by words finite?");
    add_common(sub, opts, true, false);
    sub->add_option("--gens", gens, "generator words, e.g. q,qq")->required()->delimiter(',');

    auto* torsion = app.add_subcommand("torsion", "torsion questions for the dual semigroup");
    add_common(torsion, opts, true, false);

    auto* buchi = app.add_subcommand("buchi", "build the orbit Buchi acceptor");
    add_common(buchi, opts);
    buchi->add_option("--dot", dot_path, "write the acceptor as DOT");

    auto* witness = app.add_subcommand("witness", "ultimately periodic witness, if infinite");
    add_common(witness, opts);

    auto* dot = app.add_subcommand("dot", "write the automaton as DOT");
    dot->add_option("automaton", opts.automaton_path, "automaton file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (dot->parsed()) {
            std::cout << asg::automaton_to_dot(asg::parse_automaton(read_file(opts.automaton_path)));
            return 0;
        }
        asg::Command command;
        if (activity->parsed())
            command.name = "activity";
        else if (orbit->parsed())
            command.name = "orbit";
        else if (finite->parsed())
            command.name = "finite";
        else if (sub->parsed())
            command.name = "sub-finite";
        else if (torsion->parsed())
            command.name = "torsion";
        else if (buchi->parsed())
            command.name = "buchi";
        else if (witness->parsed())
            command.name = "witness";
        command.word = word;
        command.gens = gens;
        return execute(opts, command, dot_path);
    } catch (const asg::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
