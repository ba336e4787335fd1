#include "asg/activity.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "asg/nerode.hpp"

namespace asg {

namespace {

bool all_in_s(const SaturatedAutomaton& SA, const StateWord& w) {
    for (int s : w)
        if (!SA.in_s(s))
            return false;
    return true;
}

} // namespace

WordNfa active_word_acceptor(const SaturatedAutomaton& SA, const StateWord& p) {
    if (p.empty())
        throw InputError("active_word_acceptor requires a nonempty state word");
    const SAutomaton& T = SA.automaton;
    T.check_state_word(p);
    const int na = T.letter_count();

    WordNfa nfa;
    nfa.alphabet = T.letter_names();

    // reachable tuple states of the |p|-th power
    std::map<StateWord, int> index;
    std::vector<StateWord> tuples;
    auto intern = [&](const StateWord& w) {
        auto [it, inserted] = index.emplace(w, static_cast<int>(tuples.size()));
        if (inserted) {
            tuples.push_back(w);
            nfa.next.emplace_back(na);
            nfa.accepting.push_back(!all_in_s(SA, w));
        }
        return it->second;
    };
    nfa.initial.push_back(intern(p));
    for (size_t head = 0; head < tuples.size(); ++head) {
        StateWord current = tuples[head];
        for (int a = 0; a < na; ++a) {
            LetterWord letter{a};
            int out = act(T, current, letter)[0];
            int target = intern(dual_act(T, current, letter));
            auto& targets = nfa.next[head][out];
            if (!std::binary_search(targets.begin(), targets.end(), target))
                targets.insert(std::upper_bound(targets.begin(), targets.end(), target), target);
        }
    }
    nfa.nstates = static_cast<int>(tuples.size());
    return nfa;
}

WordNfa automaton_active_acceptor(const SaturatedAutomaton& SA) {
    const SAutomaton& T = SA.automaton;
    const int na = T.letter_count();
    WordNfa nfa;
    nfa.alphabet = T.letter_names();
    nfa.nstates = T.state_count();
    nfa.next.assign(nfa.nstates, std::vector<std::vector<int>>(na));
    for (int s = 0; s < nfa.nstates; ++s) {
        nfa.initial.push_back(s);
        nfa.accepting.push_back(!SA.in_s(s));
        for (int a = 0; a < na; ++a) {
            const auto& arrow = T.step(s, a);
            auto& targets = nfa.next[s][arrow.out];
            if (!std::binary_search(targets.begin(), targets.end(), arrow.next))
                targets.insert(std::upper_bound(targets.begin(), targets.end(), arrow.next),
                               arrow.next);
        }
    }
    return nfa;
}

namespace {

struct TrimmedDfa {
    int nletters = 0;
    int nstates = 0; // 0 means the language is empty
    int initial = -1;
    std::vector<int> next; // -1 for edges leaving the useful part
    std::vector<bool> accepting;
};

TrimmedDfa determinize_and_trim(const WordNfa& nfa) {
    const int na = nfa.letter_count();
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> sets;
    std::vector<int> next;
    std::vector<bool> accepting;
    auto intern = [&](std::vector<int> set) {
        auto [it, inserted] = index.emplace(std::move(set), static_cast<int>(sets.size()));
        if (inserted) {
            sets.push_back(it->first);
            if (sets.size() > kSubsetConstructionCap)
                throw ResourceError("subset construction exceeded " +
                                    std::to_string(kSubsetConstructionCap) + " states");
        }
        return it->second;
    };
    std::vector<int> init = nfa.initial;
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    int initial = intern(init);
    for (size_t head = 0; head < sets.size(); ++head) {
        std::vector<int> current = sets[head];
        next.resize((head + 1) * na, -1);
        for (int a = 0; a < na; ++a) {
            std::set<int> targets;
            for (int s : current)
                for (int t : nfa.next[s][a])
                    targets.insert(t);
            next[head * na + a] = intern(std::vector<int>(targets.begin(), targets.end()));
        }
    }
    next.resize(sets.size() * na, -1);
    accepting.assign(sets.size(), false);
    for (size_t i = 0; i < sets.size(); ++i)
        for (int s : sets[i])
            if (nfa.accepting[s])
                accepting[i] = true;

    // trim to accessible-and-co-accessible states
    const int n = static_cast<int>(sets.size());
    std::vector<bool> useful(n, false);
    {
        std::vector<std::vector<int>> rev(n);
        for (int s = 0; s < n; ++s)
            for (int a = 0; a < na; ++a)
                rev[next[static_cast<size_t>(s) * na + a]].push_back(s);
        std::vector<int> stack;
        for (int s = 0; s < n; ++s)
            if (accepting[s]) {
                useful[s] = true;
                stack.push_back(s);
            }
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            for (int p : rev[s])
                if (!useful[p]) {
                    useful[p] = true;
                    stack.push_back(p);
                }
        }
    }

    TrimmedDfa out;
    out.nletters = na;
    if (!useful[initial])
        return out; // empty language
    std::vector<int> renum(n, -1);
    std::vector<int> keep;
    for (int s = 0; s < n; ++s)
        if (useful[s]) {
            renum[s] = static_cast<int>(keep.size());
            keep.push_back(s);
        }
    out.nstates = static_cast<int>(keep.size());
    out.initial = renum[initial];
    out.next.assign(static_cast<size_t>(out.nstates) * na, -1);
    out.accepting.resize(out.nstates);
    for (int i = 0; i < out.nstates; ++i) {
        out.accepting[i] = accepting[keep[i]];
        for (int a = 0; a < na; ++a) {
            int t = next[static_cast<size_t>(keep[i]) * na + a];
            out.next[static_cast<size_t>(i) * na + a] = (t >= 0 && useful[t]) ? renum[t] : -1;
        }
    }
    return out;
}

struct SccInfo {
    std::vector<int> comp;       // state -> component id (reverse topological)
    int ncomps = 0;
    std::vector<bool> cyclic;    // component has a cycle
    std::vector<bool> branching; // some member has >= 2 edges inside the component
};

SccInfo tarjan_scc(const TrimmedDfa& dfa) {
    SccInfo info;
    const int n = dfa.nstates;
    info.comp.assign(n, -1);
    std::vector<int> low(n), num(n, -1), stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0;

    // iterative Tarjan
    struct Frame {
        int state;
        int edge;
    };
    for (int root = 0; root < n; ++root) {
        if (num[root] >= 0)
            continue;
        std::vector<Frame> frames{{root, 0}};
        num[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& frame = frames.back();
            if (frame.edge < dfa.nletters) {
                int a = frame.edge++;
                int t = dfa.next[static_cast<size_t>(frame.state) * dfa.nletters + a];
                if (t < 0)
                    continue;
                if (num[t] < 0) {
                    num[t] = low[t] = counter++;
                    stack.push_back(t);
                    on_stack[t] = true;
                    frames.push_back({t, 0});
                } else if (on_stack[t]) {
                    low[frame.state] = std::min(low[frame.state], num[t]);
                }
            } else {
                int s = frame.state;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().state] = std::min(low[frames.back().state], low[s]);
                if (low[s] == num[s]) {
                    int id = info.ncomps++;
                    for (;;) {
                        int t = stack.back();
                        stack.pop_back();
                        on_stack[t] = false;
                        info.comp[t] = id;
                        if (t == s)
                            break;
                    }
                }
            }
        }
    }

    info.cyclic.assign(info.ncomps, false);
    info.branching.assign(info.ncomps, false);
    std::vector<int> inside_degree(n, 0);
    for (int s = 0; s < n; ++s)
        for (int a = 0; a < dfa.nletters; ++a) {
            int t = dfa.next[static_cast<size_t>(s) * dfa.nletters + a];
            if (t >= 0 && info.comp[t] == info.comp[s]) {
                info.cyclic[info.comp[s]] = true;
                if (++inside_degree[s] >= 2)
                    info.branching[info.comp[s]] = true;
            }
        }
    return info;
}

} // namespace

GrowthReport growth_class(const WordNfa& nfa) {
    TrimmedDfa dfa = determinize_and_trim(nfa);
    GrowthReport report;
    if (dfa.nstates == 0) {
        report.klass = GrowthKind::Finite;
        report.bounded = true;
        report.sup_count = 0;
        return report;
    }

    SccInfo scc = tarjan_scc(dfa);
    bool any_cycle = false;
    for (int c = 0; c < scc.ncomps; ++c) {
        if (scc.branching[c]) {
            report.klass = GrowthKind::Exponential;
            report.bounded = false;
            return report;
        }
        any_cycle = any_cycle || scc.cyclic[c];
    }

    if (!any_cycle) {
        report.klass = GrowthKind::Finite;
    } else {
        // longest chain of cyclic components over the condensation; Tarjan
        // component ids are already in reverse topological order
        std::vector<int> chain(scc.ncomps, 0);
        for (int c = 0; c < scc.ncomps; ++c)
            chain[c] = scc.cyclic[c] ? 1 : 0;
        for (int c = 0; c < scc.ncomps; ++c) { // targets have smaller ids
            for (int s = 0; s < dfa.nstates; ++s) {
                if (scc.comp[s] != c)
                    continue;
                for (int a = 0; a < dfa.nletters; ++a) {
                    int t = dfa.next[static_cast<size_t>(s) * dfa.nletters + a];
                    if (t >= 0 && scc.comp[t] != c)
                        chain[c] = std::max(chain[c], chain[scc.comp[t]] + (scc.cyclic[c] ? 1 : 0));
                }
            }
        }
        int longest = 0;
        for (int c = 0; c < scc.ncomps; ++c)
            longest = std::max(longest, chain[c]);
        report.klass = GrowthKind::Polynomial;
        report.degree = longest - 1;
    }
    report.bounded =
        report.klass == GrowthKind::Finite ||
        (report.klass == GrowthKind::Polynomial && report.degree == 0);

    if (report.bounded) {
        // iterate the per-state path-count vector until it repeats
        std::vector<unsigned long long> counts(dfa.nstates, 0);
        counts[dfa.initial] = 1;
        unsigned long long sup = 0;
        std::map<std::vector<unsigned long long>, int> seen;
        for (;;) {
            unsigned long long gamma = 0;
            for (int s = 0; s < dfa.nstates; ++s)
                if (dfa.accepting[s])
                    gamma += counts[s];
            sup = std::max(sup, gamma);
            if (!seen.emplace(counts, 0).second)
                break;
            std::vector<unsigned long long> next_counts(dfa.nstates, 0);
            for (int s = 0; s < dfa.nstates; ++s)
                for (int a = 0; a < dfa.nletters; ++a) {
                    int t = dfa.next[static_cast<size_t>(s) * dfa.nletters + a];
                    if (t >= 0)
                        next_counts[t] += counts[s];
                }
            counts = std::move(next_counts);
        }
        report.sup_count = sup;
    }
    return report;
}

unsigned long long accepted_count_of_length(const WordNfa& nfa, int n) {
    TrimmedDfa dfa = determinize_and_trim(nfa);
    if (dfa.nstates == 0)
        return 0;
    std::vector<unsigned long long> counts(dfa.nstates, 0);
    counts[dfa.initial] = 1;
    for (int i = 0; i < n; ++i) {
        std::vector<unsigned long long> next_counts(dfa.nstates, 0);
        for (int s = 0; s < dfa.nstates; ++s)
            for (int a = 0; a < dfa.nletters; ++a) {
                int t = dfa.next[static_cast<size_t>(s) * dfa.nletters + a];
                if (t >= 0)
                    next_counts[t] += counts[s];
            }
        counts = std::move(next_counts);
    }
    unsigned long long gamma = 0;
    for (int s = 0; s < dfa.nstates; ++s)
        if (dfa.accepting[s])
            gamma += counts[s];
    return gamma;
}

unsigned long long count_active(const SaturatedAutomaton& SA, int n, int max_n) {
    if (n < 0 || n > max_n)
        throw InputError("count_active length exceeds the brute-force limit");
    const SAutomaton& T = SA.automaton;
    const int na = T.letter_count();
    std::set<LetterWord> active;
    LetterWord u(n, 0);
    std::vector<int> idx(n, 0);
    for (;;) {
        u.assign(idx.begin(), idx.end());
        for (int q = 0; q < T.state_count(); ++q) {
            auto [out, end] = run(T, q, u);
            if (!SA.in_s(end))
                active.insert(out);
        }
        int pos = n - 1;
        while (pos >= 0 && ++idx[pos] == na)
            idx[pos--] = 0;
        if (pos < 0)
            break;
    }
    return active.size();
}

bool is_bounded_activity(const SaturatedAutomaton& SA) {
    return growth_class(automaton_active_acceptor(SA)).bounded;
}

} // namespace asg
