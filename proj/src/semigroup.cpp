#include "asg/semigroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace asg {

bool FiniteSemigroup::is_associative() const {
    const size_t n = size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    return false;
    return true;
}

FiniteSemigroup FiniteSemigroup::from_table(const std::vector<std::vector<int>>& table,
                                            const std::vector<int>& generators) {
    FiniteSemigroup sg;
    const int n = static_cast<int>(table.size());
    sg.table = table;
    sg.elements.resize(n);
    sg.derivations.assign(n, {});
    std::vector<bool> seen(n, false);
    std::vector<int> queue;
    for (size_t gi = 0; gi < generators.size(); ++gi) {
        int g = generators[gi];
        sg.generator_map.emplace_back(StateWord{g}, g);
        if (!seen[g]) {
            seen[g] = true;
            sg.elements[g] = {g};
            sg.derivations[g] = {static_cast<int>(gi)};
            queue.push_back(g);
        }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        int x = queue[head];
        for (size_t gi = 0; gi < generators.size(); ++gi) {
            int y = table[x][generators[gi]];
            if (!seen[y]) {
                seen[y] = true;
                sg.elements[y] = sg.elements[x];
                sg.elements[y].push_back(generators[gi]);
                sg.derivations[y] = sg.derivations[x];
                sg.derivations[y].push_back(static_cast<int>(gi));
                queue.push_back(y);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i])
            throw InputError("semigroup table has elements unreachable from the generators");
    return sg;
}

bool is_closed(const SAutomaton& T, const std::vector<int>& subset) {
    std::vector<bool> in(T.state_count(), false);
    for (int s : subset) {
        if (s < 0 || s >= T.state_count())
            throw InputError("subset references an unknown state");
        in[s] = true;
    }
    for (int s : subset)
        for (int a = 0; a < T.letter_count(); ++a)
            if (!in[T.step(s, a).next])
                return false;
    return true;
}

namespace {

/// Cheap prefilter for =_T: outputs on all words up to length 3.
std::vector<int> action_signature(const SAutomaton& T, const StateWord& w) {
    std::vector<int> sig;
    const int na = T.letter_count();
    LetterWord u;
    // enumerate words of length 1..3 in lexicographic order
    for (int len = 1; len <= 3; ++len) {
        std::vector<int> idx(len, 0);
        for (;;) {
            u.assign(idx.begin(), idx.end());
            LetterWord out = act(T, w, u);
            sig.insert(sig.end(), out.begin(), out.end());
            int pos = len - 1;
            while (pos >= 0 && ++idx[pos] == na)
                idx[pos--] = 0;
            if (pos < 0)
                break;
        }
    }
    return sig;
}

std::optional<FiniteSemigroup> enumerate_impl(const SAutomaton& T,
                                              const std::vector<StateWord>& generators,
                                              size_t cap) {
    if (cap == 0)
        throw InputError("subsemigroup cap must be positive");
    if (generators.empty())
        throw InputError("generator set must be nonempty");
    for (const auto& g : generators) {
        if (g.empty())
            throw InputError("generator words must be nonempty");
        T.check_state_word(g);
    }

    FiniteSemigroup sg;
    std::map<std::vector<int>, std::vector<int>> by_signature; // signature -> element indices

    auto classify = [&](const StateWord& w) -> int {
        auto sig = action_signature(T, w);
        auto it = by_signature.find(sig);
        if (it != by_signature.end())
            for (int idx : it->second)
                if (equal_actions(T, sg.elements[idx], w))
                    return idx;
        return -1;
    };
    auto insert_new = [&](const StateWord& w, const std::vector<int>& derivation) -> int {
        int idx = static_cast<int>(sg.elements.size());
        sg.elements.push_back(w);
        sg.derivations.push_back(derivation);
        by_signature[action_signature(T, w)].push_back(idx);
        return idx;
    };

    // BFS by product length, ties by generator-index order: the first word
    // reaching a class becomes its canonical representative.
    std::vector<int> frontier;
    for (size_t gi = 0; gi < generators.size(); ++gi) {
        int idx = classify(generators[gi]);
        if (idx < 0) {
            idx = insert_new(generators[gi], {static_cast<int>(gi)});
            frontier.push_back(idx);
        }
        sg.generator_map.emplace_back(generators[gi], idx);
    }

    std::vector<std::vector<int>> right_mult; // [element][generator] -> element
    right_mult.resize(sg.elements.size());
    for (size_t head = 0; head < static_cast<size_t>(frontier.size()); ++head) {
        int cur = frontier[head];
        right_mult.resize(std::max(right_mult.size(), sg.elements.size()));
        right_mult[cur].assign(generators.size(), -1);
        for (size_t gi = 0; gi < generators.size(); ++gi) {
            StateWord w = sg.elements[cur];
            w.insert(w.end(), generators[gi].begin(), generators[gi].end());
            int idx = classify(w);
            if (idx < 0) {
                if (sg.elements.size() >= cap)
                    return std::nullopt; // more than cap elements exist
                std::vector<int> derivation = sg.derivations[cur];
                derivation.push_back(static_cast<int>(gi));
                idx = insert_new(w, derivation);
                frontier.push_back(idx);
            }
            right_mult[cur][gi] = idx;
        }
    }
    right_mult.resize(sg.elements.size());

    // full table by folding right multiplication over derivations
    const size_t n = sg.elements.size();
    sg.table.assign(n, std::vector<int>(n, -1));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            int acc = static_cast<int>(i);
            for (int gi : sg.derivations[j])
                acc = right_mult[acc][gi];
            sg.table[i][j] = acc;
        }
    return sg;
}

} // namespace

std::optional<FiniteSemigroup> enumerate_subsemigroup(const SAutomaton& T,
                                                      const std::vector<int>& subset, size_t cap) {
    std::vector<StateWord> gens;
    gens.reserve(subset.size());
    for (int s : subset)
        gens.push_back({s});
    return enumerate_impl(T, gens, cap);
}

std::optional<FiniteSemigroup> enumerate_generated(const SAutomaton& T,
                                                   const std::vector<StateWord>& generators,
                                                   size_t cap) {
    return enumerate_impl(T, generators, cap);
}

SaturatedAutomaton saturate(const SAutomaton& T, const std::vector<int>& subset, size_t cap) {
    if (subset.empty())
        throw InputError("S must be nonempty");
    if (!is_closed(T, subset))
        throw PreconditionError("S is not closed under the dual action");
    auto sg = enumerate_subsemigroup(T, subset, cap);
    if (!sg)
        throw PreconditionError("the subsemigroup generated by S exceeds the cap of " +
                                std::to_string(cap) + " elements");

    // union of T with one power per representative length > 1
    std::set<int> lengths;
    for (const auto& rep : sg->elements)
        if (rep.size() > 1)
            lengths.insert(static_cast<int>(rep.size()));
    SAutomaton u = T;
    std::vector<int> offsets; // state offset of each power block, aligned with `lengths`
    std::vector<int> ks;
    for (int k : lengths) {
        offsets.push_back(u.state_count());
        ks.push_back(k);
        u = union_automata(u, power(T, k));
    }

    auto [minimized, mapping] = minimize(u);

    SaturatedAutomaton sa;
    sa.automaton = std::move(minimized);
    sa.origin_map.resize(T.state_count());
    for (int s = 0; s < T.state_count(); ++s)
        sa.origin_map[s] = mapping[s];

    // a representative word over T-states addresses a tuple state of T^|rep|
    auto rep_state_in_union = [&](const StateWord& rep) -> int {
        if (rep.size() == 1)
            return rep[0];
        int block = 0;
        while (ks[block] != static_cast<int>(rep.size()))
            ++block;
        long long idx = 0;
        for (int s : rep)
            idx = idx * T.state_count() + s;
        return offsets[block] + static_cast<int>(idx);
    };

    sa.s_states.reserve(sg->size());
    for (const auto& rep : sg->elements)
        sa.s_states.push_back(mapping[rep_state_in_union(rep)]);
    sa.s_table = sg->table;
    sa.s_index.assign(sa.automaton.state_count(), -1);
    for (size_t i = 0; i < sa.s_states.size(); ++i)
        sa.s_index[sa.s_states[i]] = static_cast<int>(i);
    return sa;
}

StateWord normal_form(const SaturatedAutomaton& SA, const StateWord& p) {
    SA.automaton.check_state_word(p);
    StateWord out;
    size_t i = 0;
    while (i < p.size()) {
        if (!SA.in_s(p[i])) {
            out.push_back(p[i++]);
            continue;
        }
        int el = SA.s_index[p[i++]];
        while (i < p.size() && SA.in_s(p[i]))
            el = SA.mult(el, SA.s_index[p[i++]]);
        out.push_back(SA.s_states[el]);
    }
    return out;
}

bool approx_equiv(const SaturatedAutomaton& SA, const StateWord& p, const StateWord& q) {
    return normal_form(SA, p) == normal_form(SA, q);
}

std::vector<std::pair<std::vector<int>, std::optional<FiniteSemigroup>>>
discover_closed_subsets(const SAutomaton& T, size_t cap) {
    const int n = T.state_count();
    auto closure = [&](unsigned long long seed) {
        std::vector<bool> in(n, false);
        std::vector<int> stack;
        for (int s = 0; s < n; ++s)
            if (seed & (1ull << s)) {
                in[s] = true;
                stack.push_back(s);
            }
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            for (int a = 0; a < T.letter_count(); ++a) {
                int t = T.step(s, a).next;
                if (!in[t]) {
                    in[t] = true;
                    stack.push_back(t);
                }
            }
        }
        std::vector<int> subset;
        for (int s = 0; s < n; ++s)
            if (in[s])
                subset.push_back(s);
        return subset;
    };

    std::set<std::vector<int>> found;
    if (n <= 16) {
        for (unsigned long long seed = 1; seed < (1ull << n); ++seed)
            found.insert(closure(seed));
    } else {
        for (int s = 0; s < n; ++s)
            found.insert(closure(1ull << s));
    }

    std::vector<std::vector<int>> ordered(found.begin(), found.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });

    std::vector<std::pair<std::vector<int>, std::optional<FiniteSemigroup>>> out;
    out.reserve(ordered.size());
    for (auto& subset : ordered) {
        auto sg = enumerate_subsemigroup(T, subset, cap);
        out.emplace_back(std::move(subset), std::move(sg));
    }
    return out;
}

bool iso_finite_semigroups(const FiniteSemigroup& A, const FiniteSemigroup& B) {
    const size_t n = A.size();
    if (n != B.size())
        return false;

    std::vector<int> agens;
    for (const auto& [word, idx] : A.generator_map)
        agens.push_back(idx);
    // dedup generator element indices, keep order
    {
        std::vector<int> uniq;
        for (int g : agens)
            if (std::find(uniq.begin(), uniq.end(), g) == uniq.end())
                uniq.push_back(g);
        agens = std::move(uniq);
    }
    // remap derivations to the deduped generator list
    std::vector<int> gen_of_original;
    for (const auto& [word, idx] : A.generator_map)
        gen_of_original.push_back(
            static_cast<int>(std::find(agens.begin(), agens.end(), idx) - agens.begin()));

    const size_t m = agens.size();
    std::vector<size_t> choice(m, 0);
    for (;;) {
        // candidate images for the generators
        std::vector<int> phi(n, -1);
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) {
            int img = -1;
            for (size_t d = 0; d < A.derivations[i].size(); ++d) {
                int g = static_cast<int>(choice[gen_of_original[A.derivations[i][d]]]);
                img = (d == 0) ? g : B.table[img][g];
            }
            if (img < 0) {
                ok = false; // element without derivation cannot occur
                break;
            }
            phi[i] = img;
        }
        if (ok) {
            std::vector<bool> hit(n, false);
            for (size_t i = 0; i < n && ok; ++i) {
                if (hit[phi[i]])
                    ok = false;
                hit[phi[i]] = true;
            }
            for (size_t i = 0; i < n && ok; ++i)
                for (size_t j = 0; j < n && ok; ++j)
                    if (phi[A.table[i][j]] != B.table[phi[i]][phi[j]])
                        ok = false;
            if (ok)
                return true;
        }
        size_t pos = 0;
        while (pos < m && ++choice[pos] == n)
            choice[pos++] = 0;
        if (pos == m)
            break;
    }
    return false;
}

} // namespace asg
