#include "asg/decision.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace asg {

BuchiAcceptor build_orbit_buchi(const SaturatedAutomaton& SA, const NerodeDfa& D,
                                size_t state_cap) {
    const SAutomaton& T = SA.automaton;
    GrowthReport growth = growth_class(automaton_active_acceptor(SA));
    if (!growth.bounded)
        throw PreconditionError("the automaton does not have bounded S-activity");
    const unsigned long long K = *growth.sup_count;
    const size_t s_size = SA.s_states.size();

    BuchiAcceptor b;
    b.alphabet = T.letter_names();
    b.deterministic = true;

    std::map<std::string, int> canon_index;
    std::vector<size_t> orbit_size_of; // per state, |R o rep|

    auto intern = [&](const LetterWord& w) {
        Nfra nfra = build_nfra(SA, w, D);
        // uniform size bound of the construction
        const size_t n_used = static_cast<size_t>(nfra.class_count);
        if (static_cast<size_t>(nfra.nstates) > (K + 1) * n_used * (s_size * n_used + 1))
            throw std::logic_error("expansion acceptor exceeded its uniform size bound");
        std::string canon = nfra_canonical(nfra);
        auto [it, inserted] = canon_index.emplace(std::move(canon), b.nstates);
        if (inserted) {
            if (static_cast<size_t>(b.nstates) >= state_cap)
                throw ResourceError("orbit acceptor exceeded " + std::to_string(state_cap) +
                                    " states");
            ++b.nstates;
            b.representatives.push_back(w);
            orbit_size_of.push_back(r_orbit_size(T, w, D));
        }
        return it->second;
    };

    b.initial = intern({});
    for (int src = 0; src < b.nstates; ++src) {
        LetterWord w = b.representatives[src];
        for (int a = 0; a < T.letter_count(); ++a) {
            LetterWord wa = w;
            wa.push_back(a);
            size_t grown = r_orbit_size(T, wa, D);
            int dst = intern(wa);
            b.edges.push_back({src, a, dst, orbit_size_of[src] < grown});
        }
    }
    std::sort(b.edges.begin(), b.edges.end(), [](const auto& x, const auto& y) {
        return std::tie(x.src, x.letter, x.dst) < std::tie(y.src, y.letter, y.dst);
    });
    return b;
}

namespace {

std::vector<std::vector<std::pair<int, const BuchiAcceptor::Edge*>>>
adjacency(const BuchiAcceptor& b) {
    std::vector<std::vector<std::pair<int, const BuchiAcceptor::Edge*>>> adj(b.nstates);
    for (const auto& e : b.edges)
        adj[e.src].emplace_back(e.dst, &e);
    return adj;
}

/// Shortest-lex path words from `from` to every state (BFS, letters ascending).
std::vector<std::optional<LetterWord>> shortest_words(const BuchiAcceptor& b, int from) {
    auto adj = adjacency(b);
    std::vector<std::optional<LetterWord>> word(b.nstates);
    std::vector<int> queue{from};
    word[from] = LetterWord{};
    for (size_t head = 0; head < queue.size(); ++head) {
        int s = queue[head];
        for (auto [t, e] : adj[s])
            if (!word[t]) {
                LetterWord w = *word[s];
                w.push_back(e->letter);
                word[t] = std::move(w);
                queue.push_back(t);
            }
    }
    return word;
}

std::vector<int> scc_of(const BuchiAcceptor& b) {
    // iterative Tarjan over the edge list
    auto adj = adjacency(b);
    std::vector<int> comp(b.nstates, -1), low(b.nstates), num(b.nstates, -1), stack;
    std::vector<bool> on_stack(b.nstates, false);
    int counter = 0, ncomp = 0;
    struct Frame {
        int state;
        size_t edge;
    };
    for (int root = 0; root < b.nstates; ++root) {
        if (num[root] >= 0)
            continue;
        std::vector<Frame> frames{{root, 0}};
        num[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& frame = frames.back();
            if (frame.edge < adj[frame.state].size()) {
                int t = adj[frame.state][frame.edge++].first;
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
                    int id = ncomp++;
                    for (;;) {
                        int t = stack.back();
                        stack.pop_back();
                        on_stack[t] = false;
                        comp[t] = id;
                        if (t == s)
                            break;
                    }
                }
            }
        }
    }
    return comp;
}

bool word_pair_less(const UltimatelyPeriodicWord& a, const UltimatelyPeriodicWord& b) {
    if (a.stem.size() != b.stem.size())
        return a.stem.size() < b.stem.size();
    if (a.loop.size() != b.loop.size())
        return a.loop.size() < b.loop.size();
    if (a.stem != b.stem)
        return a.stem < b.stem;
    return a.loop < b.loop;
}

} // namespace

std::optional<UltimatelyPeriodicWord> buchi_nonempty(const BuchiAcceptor& B) {
    auto comp = scc_of(B);
    auto stems = shortest_words(B, B.initial);
    std::optional<UltimatelyPeriodicWord> best;
    for (const auto& e : B.edges) {
        if (!e.accepting || comp[e.src] != comp[e.dst])
            continue;
        if (!stems[e.src])
            continue;
        auto back = shortest_words(B, e.dst);
        if (!back[e.src])
            continue;
        UltimatelyPeriodicWord candidate;
        candidate.stem = *stems[e.src];
        candidate.loop = {e.letter};
        candidate.loop.insert(candidate.loop.end(), back[e.src]->begin(), back[e.src]->end());
        if (!best || word_pair_less(candidate, *best))
            best = std::move(candidate);
    }
    return best;
}

BuchiAcceptor complement_det_buchi(const BuchiAcceptor& B) {
    if (!B.deterministic)
        throw InputError("complement requires a deterministic acceptor");
    // completeness check
    {
        std::set<std::pair<int, int>> seen;
        for (const auto& e : B.edges)
            seen.emplace(e.src, e.letter);
        if (seen.size() != static_cast<size_t>(B.nstates) * B.letter_count())
            throw InputError("complement requires a complete acceptor");
    }
    BuchiAcceptor c;
    c.alphabet = B.alphabet;
    c.nstates = 2 * B.nstates;
    c.initial = B.initial;
    c.deterministic = false;
    for (const auto& e : B.edges) {
        c.edges.push_back({e.src, e.letter, e.dst, false}); // copy 1 mirrors B
        if (!e.accepting) {
            c.edges.push_back({e.src, e.letter, B.nstates + e.dst, false}); // jump
            c.edges.push_back({B.nstates + e.src, e.letter, B.nstates + e.dst, true});
        }
    }
    std::sort(c.edges.begin(), c.edges.end(), [](const auto& x, const auto& y) {
        return std::tie(x.src, x.letter, x.dst) < std::tie(y.src, y.letter, y.dst);
    });
    return c;
}

namespace {

/// Flagged reachability matrix: 0 = no path, 1 = path, 2 = path through an
/// accepting edge. Composition takes the best flag over all midpoints.
struct FlaggedMatrix {
    int n = 0;
    std::vector<uint8_t> m;

    uint8_t at(int i, int j) const { return m[static_cast<size_t>(i) * n + j]; }
    uint8_t& at(int i, int j) { return m[static_cast<size_t>(i) * n + j]; }

    bool operator<(const FlaggedMatrix& other) const { return m < other.m; }
    bool operator==(const FlaggedMatrix& other) const { return m == other.m; }
};

FlaggedMatrix compose(const FlaggedMatrix& a, const FlaggedMatrix& b) {
    FlaggedMatrix out;
    out.n = a.n;
    out.m.assign(a.m.size(), 0);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            uint8_t x = a.at(i, j);
            if (!x)
                continue;
            for (int k = 0; k < a.n; ++k) {
                uint8_t y = b.at(j, k);
                if (!y)
                    continue;
                uint8_t combined = std::max({x, y});
                if (combined > out.at(i, k))
                    out.at(i, k) = combined;
            }
        }
    return out;
}

std::vector<FlaggedMatrix> letter_matrices(const BuchiAcceptor& b) {
    std::vector<FlaggedMatrix> mats(b.letter_count());
    for (auto& m : mats) {
        m.n = b.nstates;
        m.m.assign(static_cast<size_t>(b.nstates) * b.nstates, 0);
    }
    for (const auto& e : b.edges) {
        uint8_t val = e.accepting ? 2 : 1;
        auto& cell = mats[e.letter].at(e.src, e.dst);
        cell = std::max(cell, val);
    }
    return mats;
}

/// Is x^omega accepted from `from`, where x has flagged matrix m?
bool omega_power_accepted(const FlaggedMatrix& m, int from) {
    // powers of m until repetition
    std::vector<FlaggedMatrix> powers{m};
    std::set<FlaggedMatrix> seen{m};
    for (;;) {
        FlaggedMatrix next = compose(powers.back(), m);
        if (!seen.insert(next).second)
            break;
        powers.push_back(std::move(next));
    }
    std::vector<bool> reachable(m.n, false);
    reachable[from] = true;
    for (const auto& p : powers)
        for (int y = 0; y < m.n; ++y)
            if (p.at(from, y))
                reachable[y] = true;
    for (int y = 0; y < m.n; ++y)
        if (reachable[y])
            for (const auto& p : powers)
                if (p.at(y, y) == 2)
                    return true;
    return false;
}

} // namespace

std::optional<LetterWord> periodic_word_in_buchi(const BuchiAcceptor& B, size_t monoid_cap) {
    if (B.nstates == 0)
        return std::nullopt;
    auto letters = letter_matrices(B);

    std::map<FlaggedMatrix, int> index;
    std::vector<std::pair<FlaggedMatrix, LetterWord>> elements;
    for (int a = 0; a < B.letter_count(); ++a) {
        if (index.emplace(letters[a], static_cast<int>(elements.size())).second)
            elements.emplace_back(letters[a], LetterWord{a});
    }
    for (size_t head = 0; head < elements.size(); ++head) {
        const auto [mat, word] = elements[head]; // copy: elements may grow
        if (omega_power_accepted(mat, B.initial))
            return word;
        for (int a = 0; a < B.letter_count(); ++a) {
            FlaggedMatrix next = compose(mat, letters[a]);
            if (index.emplace(next, static_cast<int>(elements.size())).second) {
                if (elements.size() >= monoid_cap)
                    throw ResourceError("transition monoid exceeded " +
                                        std::to_string(monoid_cap) + " elements");
                LetterWord w = word;
                w.push_back(a);
                elements.emplace_back(std::move(next), std::move(w));
            }
        }
    }
    return std::nullopt;
}

bool buchi_accepts_ultimately_periodic(const BuchiAcceptor& B, const LetterWord& stem,
                                       const LetterWord& loop) {
    if (loop.empty())
        throw InputError("the loop of an ultimately periodic word must be nonempty");
    auto letters = letter_matrices(B);
    // states reachable on the stem
    std::vector<bool> current(B.nstates, false);
    current[B.initial] = true;
    for (int a : stem) {
        std::vector<bool> next(B.nstates, false);
        for (int i = 0; i < B.nstates; ++i)
            if (current[i])
                for (int j = 0; j < B.nstates; ++j)
                    if (letters[a].at(i, j))
                        next[j] = true;
        current = std::move(next);
    }
    FlaggedMatrix m = letters[loop[0]];
    for (size_t i = 1; i < loop.size(); ++i)
        m = compose(m, letters[loop[i]]);
    for (int s = 0; s < B.nstates; ++s)
        if (current[s] && omega_power_accepted(m, s))
            return true;
    return false;
}

std::string buchi_to_dot(const BuchiAcceptor& B) {
    std::ostringstream out;
    out << "digraph buchi {\n  rankdir=LR;\n";
    for (int s = 0; s < B.nstates; ++s) {
        out << "  n" << s << " [label=\"" << s;
        if (s < static_cast<int>(B.representatives.size())) {
            out << " [";
            for (int a : B.representatives[s])
                out << B.alphabet[a];
            out << "]";
        }
        out << "\"" << (s == B.initial ? ", shape=doublecircle" : "") << "];\n";
    }
    for (const auto& e : B.edges)
        out << "  n" << e.src << " -> n" << e.dst << " [label=\"" << B.alphabet[e.letter] << "\""
            << (e.accepting ? ", penwidth=2, color=forestgreen" : "") << "];\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Decisions.

DecisionResult decide_r_finiteness(const SaturatedAutomaton& SA, const NerodeDfa& D,
                                   size_t order_cap) {
    if (!is_suffix_closed(D))
        throw PreconditionError("R is not suffix-closed");
    BuchiAcceptor b = build_orbit_buchi(SA, D); // checks bounded activity
    if (auto witness = buchi_nonempty(b))
        return {Verdict::Infinite, std::move(witness), std::nullopt};
    return {Verdict::Finite, std::nullopt, enumerate_image_order(SA.automaton, D, order_cap)};
}

DecisionResult decide_finiteness(const SaturatedAutomaton& SA, size_t order_cap) {
    return decide_r_finiteness(SA, nerode_all_words(SA.automaton), order_cap);
}

DecisionResult decide_subsemigroup_finiteness(const SAutomaton& T, const std::vector<int>& subset,
                                              const std::vector<StateWord>& generators,
                                              size_t cap) {
    if (generators.empty())
        throw InputError("generator set must be nonempty");
    for (const auto& g : generators) {
        if (g.empty())
            throw InputError("generator words must be nonempty");
        T.check_state_word(g);
    }

    // lift word generators to single states via a union of powers
    std::set<int> lengths;
    for (const auto& g : generators)
        if (g.size() > 1)
            lengths.insert(static_cast<int>(g.size()));
    SAutomaton u = T;
    std::map<int, int> offset_of_length;
    for (int k : lengths) {
        offset_of_length[k] = u.state_count();
        u = union_automata(u, power(T, k));
    }
    auto lifted_state = [&](const StateWord& g) -> int {
        if (g.size() == 1)
            return g[0];
        long long idx = 0;
        for (int s : g)
            idx = idx * T.state_count() + s;
        return offset_of_length[static_cast<int>(g.size())] + static_cast<int>(idx);
    };

    SaturatedAutomaton sa = saturate(u, subset, cap);
    std::vector<int> lifted;
    lifted.reserve(generators.size());
    for (const auto& g : generators)
        lifted.push_back(sa.origin_map[lifted_state(g)]);
    std::sort(lifted.begin(), lifted.end());
    lifted.erase(std::unique(lifted.begin(), lifted.end()), lifted.end());

    NerodeDfa star = nerode_star_of(sa.automaton, lifted);
    auto result = decide_r_finiteness(sa, star, cap);
    if (result.verdict == Verdict::Finite) {
        auto sg = enumerate_generated(T, generators, cap);
        result.order = sg ? std::optional<size_t>(sg->size()) : std::nullopt;
    }
    return result;
}

TorsionReport dual_torsion_checks(const SaturatedAutomaton& SA) {
    NerodeDfa all = nerode_all_words(SA.automaton);
    BuchiAcceptor b = build_orbit_buchi(SA, all);
    TorsionReport report{};
    report.has_element_without_torsion = periodic_word_in_buchi(b).has_value();
    report.has_torsion_element = periodic_word_in_buchi(complement_det_buchi(b)).has_value();
    report.torsion_free = !report.has_torsion_element;
    return report;
}

std::optional<size_t> enumerate_image_order(const SAutomaton& T, const NerodeDfa& D, size_t cap) {
    // BFS over (semigroup element, class of R) pairs along words that can
    // still be completed to a word of R; epsilon contributes no element
    const int na = D.letter_count();
    std::vector<bool> live(D.nclasses, false);
    {
        std::vector<std::vector<int>> rev(D.nclasses);
        for (int c = 0; c < D.nclasses; ++c)
            for (int a = 0; a < na; ++a)
                rev[D.step(c, a)].push_back(c);
        std::vector<int> stack;
        for (int c = 0; c < D.nclasses; ++c)
            if (D.accepting[c]) {
                live[c] = true;
                stack.push_back(c);
            }
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int p : rev[c])
                if (!live[p]) {
                    live[p] = true;
                    stack.push_back(p);
                }
        }
    }

    std::vector<StateWord> elements; // representative per discovered class
    std::set<size_t> in_image;
    std::map<std::pair<int, int>, int> seen; // (element, class) -> 1
    std::vector<std::pair<int, int>> queue;

    // prefilter element lookups by the outputs on short words
    auto signature = [&](const StateWord& w) {
        std::vector<int> sig;
        for (int a = 0; a < T.letter_count(); ++a)
            for (int b = 0; b < T.letter_count(); ++b) {
                LetterWord out = act(T, w, {a, b});
                sig.insert(sig.end(), out.begin(), out.end());
            }
        return sig;
    };
    std::map<std::vector<int>, std::vector<int>> by_signature;
    auto classify = [&](const StateWord& w) -> int {
        auto sig = signature(w);
        auto& bucket = by_signature[sig];
        for (int i : bucket)
            if (equal_actions(T, elements[i], w))
                return i;
        elements.push_back(w);
        bucket.push_back(static_cast<int>(elements.size()) - 1);
        return static_cast<int>(elements.size()) - 1;
    };

    auto push = [&](const StateWord& w, int el, int cls) {
        if (!live[cls])
            return;
        if (D.accepting[cls])
            in_image.insert(el);
        if (seen.emplace(std::make_pair(el, cls), 1).second)
            queue.emplace_back(el, cls);
    };

    for (int a = 0; a < na; ++a) {
        StateWord w{a};
        if (!live[D.step(D.initial, a)])
            continue;
        push(w, classify(w), D.step(D.initial, a));
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        auto [el, cls] = queue[head];
        if (elements.size() > cap)
            return std::nullopt;
        for (int a = 0; a < na; ++a) {
            int next_cls = D.step(cls, a);
            if (!live[next_cls])
                continue;
            StateWord w = elements[el];
            w.push_back(a);
            push(w, classify(w), next_cls);
        }
    }
    if (elements.size() > cap)
        return std::nullopt;
    return in_image.size();
}

} // namespace asg
