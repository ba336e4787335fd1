#include "asg/instance.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace asg {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "asg/1";

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

} // namespace

std::vector<int> parse_subset(const SAutomaton& T, const std::string& spec) {
    std::string body = trim(spec);
    if (!body.empty() && body.front() == 'S') { // allow "S = {e,z}"
        size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw InputError("subset: expected 'S = {...}'");
        body = trim(body.substr(eq + 1));
    }
    if (!body.empty() && body.front() == '{') {
        if (body.back() != '}')
            throw InputError("subset: missing '}'");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<int> subset;
    std::string token;
    std::istringstream in(body);
    while (std::getline(in, token, ',')) {
        token = trim(token);
        if (token.empty())
            continue;
        int s = T.require_state(token);
        if (std::find(subset.begin(), subset.end(), s) == subset.end())
            subset.push_back(s);
    }
    if (subset.empty())
        throw InputError("subset: no states given");
    std::sort(subset.begin(), subset.end());
    return subset;
}

ProblemInstance parse_instance(const std::string& automaton_text, const std::string& s_spec,
                               const std::string& r_spec, const std::string& r_acceptor_text) {
    ProblemInstance instance;
    instance.automaton = parse_automaton(automaton_text);
    if (!trim(s_spec).empty())
        instance.s_subset = parse_subset(instance.automaton, s_spec);
    instance.r_spec = trim(r_spec).empty() ? "Q*" : trim(r_spec);
    instance.r_acceptor_text = r_acceptor_text;
    return instance;
}

NerodeDfa resolve_r(const ProblemInstance& instance, const SAutomaton& subject,
                    const std::vector<int>& origin_map) {
    if (instance.r_spec == "@")
        return nerode_from_acceptor_text(subject, instance.r_acceptor_text);
    if (instance.r_spec == "Q*")
        return nerode_all_words(subject);
    // regex over original state names: rewrite atoms to subject names
    const SAutomaton& original = instance.automaton;
    std::string rewritten;
    std::string_view text = instance.r_spec;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '|' || c == '*' || c == '(' || c == ')') {
            rewritten += c;
            ++i;
            continue;
        }
        int best = -1;
        size_t best_len = 0;
        for (int s = 0; s < original.state_count(); ++s) {
            const auto& name = original.state_name(s);
            if (name.size() > best_len && text.substr(i, name.size()) == name) {
                best = s;
                best_len = name.size();
            }
        }
        if (best < 0)
            throw InputError("R regex: cannot read a state name at '" +
                             std::string(text.substr(i)) + "'");
        rewritten += subject.state_name(origin_map[best]);
        i += best_len;
    }
    return nerode_from_regex(subject, rewritten);
}

namespace {

std::string json_line(const ordered_json& j) { return j.dump() + "\n"; }

ordered_json witness_json(const SAutomaton& T, const UltimatelyPeriodicWord& w) {
    return ordered_json{{"stem", letter_word_to_string(T, w.stem)},
                        {"loop", letter_word_to_string(T, w.loop)}};
}

ordered_json growth_json(const GrowthReport& report) {
    ordered_json j;
    j["schema"] = kSchema;
    switch (report.klass) {
    case GrowthKind::Finite:
        j["class"] = "finite";
        break;
    case GrowthKind::Polynomial:
        j["class"] = "polynomial";
        j["degree"] = report.degree;
        break;
    case GrowthKind::Exponential:
        j["class"] = "exponential";
        break;
    }
    j["bounded"] = report.bounded;
    if (report.sup_count)
        j["sup"] = *report.sup_count;
    return j;
}

ordered_json verdict_json(const SAutomaton& T, const DecisionResult& result) {
    ordered_json j;
    j["schema"] = kSchema;
    if (result.verdict == Verdict::Infinite) {
        j["verdict"] = "infinite";
        j["witness"] = witness_json(T, *result.witness);
    } else {
        j["verdict"] = "finite";
        if (result.order)
            j["order"] = *result.order;
    }
    return j;
}

std::string human_verdict(const SAutomaton& T, const DecisionResult& result) {
    std::ostringstream out;
    if (result.verdict == Verdict::Infinite) {
        out << "infinite; witness " << letter_word_to_string(T, result.witness->stem) << "("
            << letter_word_to_string(T, result.witness->loop) << ")^w\n";
    } else {
        out << "finite";
        if (result.order)
            out << "; order " << *result.order;
        out << "\n";
    }
    return out.str();
}

const std::vector<int>& require_subset(const ProblemInstance& instance) {
    if (!instance.s_subset)
        throw InputError("this command needs the closed subset S (--S)");
    return *instance.s_subset;
}

CommandResult dispatch(const ProblemInstance& instance, const Command& command) {
    const SAutomaton& T = instance.automaton;
    CommandResult result{"", 0, ""};

    if (command.name == "activity") {
        SaturatedAutomaton sa = saturate(T, require_subset(instance), instance.subsemigroup_cap);
        GrowthReport report = growth_class(automaton_active_acceptor(sa));
        if (command.human) {
            std::ostringstream out;
            out << (report.klass == GrowthKind::Finite        ? "finite"
                    : report.klass == GrowthKind::Polynomial ? "polynomial degree " +
                                                                   std::to_string(report.degree)
                                                              : "exponential")
                << (report.bounded ? ", bounded" : ", unbounded");
            if (report.sup_count)
                out << ", sup " << *report.sup_count;
            out << "\n";
            result.output = out.str();
        } else {
            result.output = json_line(growth_json(report));
        }
        return result;
    }

    if (command.name == "orbit") {
        LetterWord w = parse_letter_word(T, command.word);
        std::vector<int> identity_map(T.state_count());
        for (int s = 0; s < T.state_count(); ++s)
            identity_map[s] = s;
        NerodeDfa d = resolve_r(instance, T, identity_map);
        size_t size = r_orbit_size(T, w, d);
        if (!command.dot_path.empty())
            result.dot = product_machine_to_dot(T, product_with_R(T, w, d));
        if (command.human)
            result.output = "orbit size " + std::to_string(size) + "\n";
        else
            result.output = json_line(ordered_json{
                {"schema", kSchema}, {"word", letter_word_to_string(T, w)}, {"orbit_size", size}});
        return result;
    }

    // the remaining commands run on the saturated automaton
    SaturatedAutomaton sa = saturate(T, require_subset(instance), instance.subsemigroup_cap);

    if (command.name == "finite" || command.name == "witness") {
        NerodeDfa d = resolve_r(instance, sa.automaton, sa.origin_map);
        DecisionResult decision = decide_r_finiteness(sa, d, instance.subsemigroup_cap);
        result.output = command.human ? human_verdict(sa.automaton, decision)
                                      : json_line(verdict_json(sa.automaton, decision));
        return result;
    }

    if (command.name == "sub-finite") {
        if (command.gens.empty())
            throw InputError("sub-finite needs --gens");
        std::vector<StateWord> gens;
        gens.reserve(command.gens.size());
        for (const auto& text : command.gens)
            gens.push_back(parse_state_word(T, text));
        DecisionResult decision = decide_subsemigroup_finiteness(
            T, require_subset(instance), gens, instance.subsemigroup_cap);
        result.output = command.human ? human_verdict(T, decision)
                                      : json_line(verdict_json(T, decision));
        return result;
    }

    if (command.name == "torsion") {
        TorsionReport report = dual_torsion_checks(sa);
        if (command.human) {
            std::ostringstream out;
            out << "has_torsion_element: " << (report.has_torsion_element ? "yes" : "no")
                << "\nhas_element_without_torsion: "
                << (report.has_element_without_torsion ? "yes" : "no")
                << "\ntorsion_free: " << (report.torsion_free ? "yes" : "no") << "\n";
            result.output = out.str();
        } else {
            result.output = json_line(
                ordered_json{{"schema", kSchema},
                             {"has_torsion_element", report.has_torsion_element},
                             {"has_element_without_torsion", report.has_element_without_torsion},
                             {"torsion_free", report.torsion_free}});
        }
        return result;
    }

    if (command.name == "buchi") {
        NerodeDfa d = resolve_r(instance, sa.automaton, sa.origin_map);
        BuchiAcceptor b = build_orbit_buchi(sa, d);
        size_t accepting = 0;
        for (const auto& e : b.edges)
            accepting += e.accepting ? 1 : 0;
        result.dot = buchi_to_dot(b);
        if (command.human)
            result.output = "buchi acceptor: " + std::to_string(b.nstates) + " states, " +
                            std::to_string(accepting) + " accepting transitions\n";
        else
            result.output =
                json_line(ordered_json{{"schema", kSchema},
                                       {"states", b.nstates},
                                       {"transitions", b.edges.size()},
                                       {"accepting_transitions", accepting}});
        return result;
    }

    throw InputError("unknown command '" + command.name + "'");
}

} // namespace

CommandResult run_command(const ProblemInstance& instance, const Command& command) {
    try {
        return dispatch(instance, command);
    } catch (const PreconditionError& e) {
        ordered_json j{{"schema", kSchema}, {"error", "precondition"}, {"detail", e.what()}};
        return {json_line(j), 2, ""};
    } catch (const ResourceError& e) {
        ordered_json j{{"schema", kSchema}, {"error", "resource"}, {"detail", e.what()}};
        return {json_line(j), 3, ""};
    }
}

} // namespace asg
