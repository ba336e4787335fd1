#include "asg/expansion.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace asg {

std::vector<LetterWord> active_words_of_length(const SaturatedAutomaton& SA, int n) {
    WordNfa nfa = automaton_active_acceptor(SA);
    const int na = nfa.letter_count();

    // layers[k] = NFA states from which an accepting state is reachable in
    // exactly k steps
    std::vector<std::vector<bool>> layers(n + 1, std::vector<bool>(nfa.nstates, false));
    for (int s = 0; s < nfa.nstates; ++s)
        layers[0][s] = nfa.accepting[s];
    for (int k = 1; k <= n; ++k)
        for (int s = 0; s < nfa.nstates; ++s)
            for (int a = 0; a < na && !layers[k][s]; ++a)
                for (int t : nfa.next[s][a])
                    if (layers[k - 1][t]) {
                        layers[k][s] = true;
                        break;
                    }

    std::vector<LetterWord> result;
    struct Item {
        LetterWord prefix;
        std::vector<int> set;
    };
    std::vector<int> init(nfa.initial);
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    std::vector<Item> stack{{{}, std::move(init)}};
    while (!stack.empty()) {
        Item item = std::move(stack.back());
        stack.pop_back();
        int remaining = n - static_cast<int>(item.prefix.size());
        bool viable = false;
        for (int s : item.set)
            if (layers[remaining][s]) {
                viable = true;
                break;
            }
        if (!viable)
            continue;
        if (remaining == 0) {
            for (int s : item.set)
                if (nfa.accepting[s]) {
                    result.push_back(item.prefix);
                    break;
                }
            continue;
        }
        for (int a = na - 1; a >= 0; --a) { // reversed so the stack pops in letter order
            std::set<int> targets;
            for (int s : item.set)
                for (int t : nfa.next[s][a])
                    targets.insert(t);
            if (targets.empty())
                continue;
            Item child;
            child.prefix = item.prefix;
            child.prefix.push_back(a);
            child.set.assign(targets.begin(), targets.end());
            stack.push_back(std::move(child));
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

namespace {

/// Endpoints of product-machine runs whose outputs stay inside S, grouped by
/// the element of the emitted block. reach[pm_state][element] is computed by
/// BFS from `start` over (pm state, element) pairs.
std::vector<std::vector<bool>> s_output_reach(const SaturatedAutomaton& SA,
                                              const ProductMachine& PM, int start) {
    const size_t nel = SA.s_states.size();
    std::vector<std::vector<bool>> reach(PM.size(), std::vector<bool>(nel, false));
    std::vector<std::pair<int, int>> queue;
    auto push = [&](int state, int el) {
        if (!reach[state][el]) {
            reach[state][el] = true;
            queue.emplace_back(state, el);
        }
    };
    // first step out of `start`
    for (int p = 0; p < PM.nletters; ++p) {
        const auto& e = PM.step(start, p);
        if (SA.in_s(e.out))
            push(e.target, SA.s_index[e.out]);
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        auto [state, el] = queue[head];
        for (int p = 0; p < PM.nletters; ++p) {
            const auto& e = PM.step(state, p);
            if (SA.in_s(e.out))
                push(e.target, SA.mult(SA.s_index[e.out], el)); // new letter acts last
        }
    }
    return reach;
}

} // namespace

Nfra build_nfra(const SaturatedAutomaton& SA, const LetterWord& w, const NerodeDfa& D) {
    const SAutomaton& T = SA.automaton;
    T.check_letter_word(w);
    ProductMachine pm = product_with_R(T, w, D);
    const int nclasses = pm.classes.nclasses;
    const size_t nel = SA.s_states.size();

    Nfra a;
    a.alphabet = T.state_names();
    a.class_count = nclasses;

    // words: w first, then A(|w|) in lexicographic order
    a.words.push_back(w);
    for (const auto& u : active_words_of_length(SA, static_cast<int>(w.size())))
        if (u != w)
            a.words.push_back(u);
    const int nwords = static_cast<int>(a.words.size());

    // state layout: for each word u (index i) and class C:
    //   eps state (u, -1, C, C), then (u, s, C, D) for each element s, class D
    const int per_word = nclasses + static_cast<int>(nel) * nclasses * nclasses;
    auto eps_state = [&](int word, int c) { return word * per_word + c; };
    auto block_state = [&](int word, int el, int c, int d) {
        return word * per_word + nclasses + (el * nclasses + c) * nclasses + d;
    };
    a.nstates = nwords * per_word;
    a.info.resize(a.nstates);
    for (int i = 0; i < nwords; ++i) {
        for (int c = 0; c < nclasses; ++c)
            a.info[eps_state(i, c)] = {i, -1, c, c};
        for (int el = 0; el < static_cast<int>(nel); ++el)
            for (int c = 0; c < nclasses; ++c)
                for (int d = 0; d < nclasses; ++d)
                    a.info[block_state(i, el, c, d)] = {i, el, c, d};
    }
    a.initial = eps_state(0, pm.classes.initial);

    // witness map; witnesses are interned by word
    std::map<LetterWord, int> witness_id;
    auto intern_witness = [&](const LetterWord& u) {
        auto [it, inserted] = witness_id.emplace(u, static_cast<int>(a.witness_words.size()));
        if (inserted)
            a.witness_words.push_back(u);
        return it->second;
    };

    a.witness.assign(a.nstates, {});
    // product-machine state for (word index, class) when reachable
    auto pm_state_of = [&](int word, int c) -> int {
        auto it = pm.orbit.index.find(a.words[word]);
        if (it == pm.orbit.index.end())
            return -1;
        auto jt = pm.index.find(std::make_pair(it->second, c));
        return jt == pm.index.end() ? -1 : jt->second;
    };

    for (int i = 0; i < nwords; ++i)
        for (int c = 0; c < nclasses; ++c) {
            int eps = eps_state(i, c);
            a.witness[eps].push_back(intern_witness(a.words[i]));
            int start = pm_state_of(i, c);
            if (start < 0)
                continue;
            auto reach = s_output_reach(SA, pm, start);
            for (int state = 0; state < pm.size(); ++state)
                for (int el = 0; el < static_cast<int>(nel); ++el)
                    if (reach[state][el]) {
                        auto [word, cls] = pm.states[state];
                        a.witness[block_state(i, el, c, cls)].push_back(
                            intern_witness(pm.orbit.words[word]));
                    }
        }
    for (auto& wset : a.witness) {
        std::sort(wset.begin(), wset.end());
        wset.erase(std::unique(wset.begin(), wset.end()), wset.end());
    }

    // transitions
    a.next.assign(a.nstates, std::vector<std::vector<int>>(a.letter_count()));
    auto add_edge = [&](int src, int letter, int dst) {
        auto& targets = a.next[src][letter];
        if (!std::binary_search(targets.begin(), targets.end(), dst))
            targets.insert(std::upper_bound(targets.begin(), targets.end(), dst), dst);
    };
    // word index of an orbit word that lies in A u {w}, else -1
    std::map<LetterWord, int> word_index;
    for (int i = 0; i < nwords; ++i)
        word_index.emplace(a.words[i], i);

    for (int i = 0; i < nwords; ++i)
        for (int c = 0; c < nclasses; ++c) {
            // (i) entering an S+ block with a guessed exit class
            for (int el = 0; el < static_cast<int>(nel); ++el)
                for (int d = 0; d < nclasses; ++d)
                    add_edge(eps_state(i, c), SA.s_states[el], block_state(i, el, c, d));
            // (ii) walking the block: the newly read letter acts last
            for (int el = 0; el < static_cast<int>(nel); ++el)
                for (int d = 0; d < nclasses; ++d)
                    for (int t = 0; t < static_cast<int>(nel); ++t)
                        add_edge(block_state(i, el, c, d), SA.s_states[t],
                                 block_state(i, SA.mult(t, el), c, d));
        }

    // (iii)/(iv): edges with non-S output letters follow the product machine
    // from every witness of the source state
    for (int src = 0; src < a.nstates; ++src) {
        const auto& si = a.info[src];
        int depart_class = si.out_class;
        for (int wid : a.witness[src]) {
            auto it = pm.orbit.index.find(a.witness_words[wid]);
            int start = (it == pm.orbit.index.end())
                            ? -1
                            : [&] {
                                  auto jt = pm.index.find(std::make_pair(it->second, depart_class));
                                  return jt == pm.index.end() ? -1 : jt->second;
                              }();
            if (start < 0)
                continue;
            for (int p = 0; p < pm.nletters; ++p) {
                const auto& e = pm.step(start, p);
                if (SA.in_s(e.out))
                    continue;
                auto wit = word_index.find(pm.orbit.words[pm.states[e.target].first]);
                if (wit == word_index.end())
                    throw std::logic_error("active word missing from A(|w|)");
                add_edge(src, e.out, eps_state(wit->second, pm.states[e.target].second));
            }
        }
    }

    // acceptance: both guessed exit classes accepting and witnesses overlap
    std::vector<int> acceptable;
    for (int z = 0; z < a.nstates; ++z)
        if (pm.classes.accepting[a.info[z].out_class] && !a.witness[z].empty())
            acceptable.push_back(z);
    for (int z : acceptable)
        for (int y : acceptable) {
            const auto& wz = a.witness[z];
            const auto& wy = a.witness[y];
            bool overlap = false;
            size_t iz = 0, iy = 0;
            while (iz < wz.size() && iy < wy.size()) {
                if (wz[iz] == wy[iy]) {
                    overlap = true;
                    break;
                }
                (wz[iz] < wy[iy]) ? ++iz : ++iy;
            }
            if (overlap)
                a.acceptance.emplace(z, y);
        }
    return a;
}

bool nfra_accepts(const Nfra& A, const StateWord& p, const StateWord& q) {
    if (p.empty() || q.empty())
        throw InputError("nfra_accepts requires nonempty words");
    auto simulate = [&](const StateWord& word) {
        std::set<int> current{A.initial};
        for (auto it = word.rbegin(); it != word.rend(); ++it) { // rightmost letter first
            if (*it < 0 || *it >= A.letter_count())
                throw InputError("word references an unknown state letter");
            std::set<int> next;
            for (int s : current)
                for (int t : A.next[s][*it])
                    next.insert(t);
            current = std::move(next);
        }
        return current;
    };
    std::set<int> zp = simulate(p);
    std::set<int> zq = simulate(q);
    for (int z : zp)
        for (int y : zq)
            if (A.acceptance.count({z, y}))
                return true;
    return false;
}

namespace {

struct CanonicalContext {
    const Nfra& a;
    std::vector<std::vector<std::pair<int, int>>> in_edges; // per state: (letter, src)
    std::vector<std::vector<int>> f_out, f_in;

    explicit CanonicalContext(const Nfra& a) : a(a) {
        in_edges.resize(a.nstates);
        for (int s = 0; s < a.nstates; ++s)
            for (int letter = 0; letter < a.letter_count(); ++letter)
                for (int t : a.next[s][letter])
                    in_edges[t].emplace_back(letter, s);
        f_out.resize(a.nstates);
        f_in.resize(a.nstates);
        for (const auto& [z, y] : a.acceptance) {
            f_out[z].push_back(y);
            f_in[y].push_back(z);
        }
    }

    std::vector<int> refine(std::vector<int> color) const {
        for (;;) {
            std::map<std::vector<long long>, int> index;
            std::vector<int> next_color(a.nstates);
            std::vector<std::vector<long long>> sigs(a.nstates);
            for (int s = 0; s < a.nstates; ++s) {
                std::vector<long long> sig;
                sig.push_back(color[s]);
                std::vector<long long> out;
                for (int letter = 0; letter < a.letter_count(); ++letter)
                    for (int t : a.next[s][letter])
                        out.push_back(static_cast<long long>(letter) * a.nstates + color[t]);
                std::sort(out.begin(), out.end());
                sig.push_back(-1);
                sig.insert(sig.end(), out.begin(), out.end());
                std::vector<long long> in;
                for (auto [letter, src] : in_edges[s])
                    in.push_back(static_cast<long long>(letter) * a.nstates + color[src]);
                std::sort(in.begin(), in.end());
                sig.push_back(-2);
                sig.insert(sig.end(), in.begin(), in.end());
                std::vector<long long> fo, fi;
                for (int t : f_out[s])
                    fo.push_back(color[t]);
                for (int t : f_in[s])
                    fi.push_back(color[t]);
                std::sort(fo.begin(), fo.end());
                std::sort(fi.begin(), fi.end());
                sig.push_back(-3);
                sig.insert(sig.end(), fo.begin(), fo.end());
                sig.push_back(-4);
                sig.insert(sig.end(), fi.begin(), fi.end());
                sigs[s] = std::move(sig);
            }
            // stable renumbering: sort signatures, then map
            std::map<std::vector<long long>, int> order;
            for (const auto& sig : sigs)
                order.emplace(sig, 0);
            int next_id = 0;
            for (auto& [sig, id] : order)
                id = next_id++;
            for (int s = 0; s < a.nstates; ++s)
                next_color[s] = order[sigs[s]];
            if (next_color == color)
                return color;
            color = std::move(next_color);
        }
    }

    std::string certificate(const std::vector<int>& order_of) const {
        // order_of: state -> position
        std::vector<int> at(a.nstates);
        for (int s = 0; s < a.nstates; ++s)
            at[order_of[s]] = s;
        std::ostringstream out;
        out << a.nstates << ';' << order_of[a.initial] << ';';
        for (int pos = 0; pos < a.nstates; ++pos) {
            int s = at[pos];
            std::vector<std::pair<int, int>> edges;
            for (int letter = 0; letter < a.letter_count(); ++letter)
                for (int t : a.next[s][letter])
                    edges.emplace_back(letter, order_of[t]);
            std::sort(edges.begin(), edges.end());
            for (auto [letter, t] : edges)
                out << letter << '>' << t << ',';
            out << '|';
            std::vector<int> fo;
            for (int t : f_out[s])
                fo.push_back(order_of[t]);
            std::sort(fo.begin(), fo.end());
            for (int t : fo)
                out << t << ',';
            out << ';';
        }
        return out.str();
    }

    std::string canonical(std::vector<int> color) const {
        color = refine(std::move(color));
        // find the first non-singleton color class
        std::map<int, std::vector<int>> cells;
        for (int s = 0; s < a.nstates; ++s)
            cells[color[s]].push_back(s);
        const std::vector<int>* target = nullptr;
        for (const auto& [c, members] : cells)
            if (members.size() > 1) {
                target = &members;
                break;
            }
        if (!target) {
            // discrete: colors are a permutation of positions
            return certificate(color);
        }
        std::string best;
        for (int s : *target) {
            std::vector<int> branched = color;
            branched[s] = -1; // individualize: sorts before every other color
            std::string cert = canonical(std::move(branched));
            if (best.empty() || cert < best)
                best = std::move(cert);
        }
        return best;
    }
};

} // namespace

std::string nfra_canonical(const Nfra& A) {
    CanonicalContext ctx(A);
    std::vector<int> color(A.nstates, 1);
    color[A.initial] = 0;
    return ctx.canonical(std::move(color));
}

std::string nfra_to_dot(const SaturatedAutomaton& SA, const Nfra& A) {
    const SAutomaton& T = SA.automaton;
    std::ostringstream out;
    out << "digraph nfra {\n  rankdir=LR;\n";
    for (int s = 0; s < A.nstates; ++s) {
        const auto& si = A.info[s];
        std::string word = letter_word_to_string(T, A.words[si.word]);
        if (word.empty())
            word = "\\<eps\\>";
        out << "  n" << s << " [label=\"(" << word << ", "
            << (si.element < 0 ? std::string("\\<eps\\>") : T.state_name(SA.s_states[si.element]))
            << ", C" << si.in_class << ", C" << si.out_class << ")\""
            << (s == A.initial ? ", shape=doublecircle" : "") << "];\n";
    }
    for (int s = 0; s < A.nstates; ++s)
        for (int letter = 0; letter < A.letter_count(); ++letter)
            for (int t : A.next[s][letter])
                out << "  n" << s << " -> n" << t << " [label=\"" << T.state_name(letter)
                    << "\"];\n";
    for (const auto& [z, y] : A.acceptance)
        if (z <= y)
            out << "  n" << z << " -> n" << y << " [style=dashed, dir=none, color=gray];\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Brute-force oracle for E_w.

ExpansionOracle expansion_oracle(const SaturatedAutomaton& SA, const LetterWord& w,
                                 const NerodeDfa& D, int maxlen) {
    const SAutomaton& T = SA.automaton;
    ProductMachine pm = product_with_R(T, w, D);
    ExpansionOracle oracle;
    oracle.maxlen = maxlen;

    // BFS over (product state, normal form of the emitted output); outputs
    // grow on the left, so the normal form length never decreases and
    // states with |nf| > maxlen cannot contribute
    auto prepend_nf = [&](int letter, const StateWord& nf) {
        StateWord out;
        if (SA.in_s(letter) && !nf.empty() && SA.in_s(nf.front())) {
            out = nf;
            out.front() = SA.s_states[SA.mult(SA.s_index[letter], SA.s_index[nf.front()])];
        } else {
            out.reserve(nf.size() + 1);
            out.push_back(letter);
            out.insert(out.end(), nf.begin(), nf.end());
        }
        return out;
    };

    std::set<std::pair<int, StateWord>> seen;
    std::vector<std::pair<int, StateWord>> queue;
    queue.emplace_back(pm.root, StateWord{});
    seen.insert(queue.front());
    std::map<int, std::set<StateWord>> nf_by_endpoint; // orbit word -> normal forms
    while (!queue.empty()) {
        auto [state, nf] = std::move(queue.back());
        queue.pop_back();
        if (!nf.empty() && pm.class_accepting(state))
            nf_by_endpoint[pm.states[state].first].insert(nf);
        for (int p = 0; p < pm.nletters; ++p) {
            const auto& e = pm.step(state, p);
            StateWord next_nf = prepend_nf(e.out, nf);
            if (static_cast<int>(next_nf.size()) > maxlen)
                continue;
            auto item = std::make_pair(e.target, std::move(next_nf));
            if (seen.insert(item).second)
                queue.push_back(std::move(item));
        }
    }

    for (const auto& [endpoint, nfs] : nf_by_endpoint)
        for (const auto& nf1 : nfs)
            for (const auto& nf2 : nfs)
                oracle.nf_pairs.emplace(nf1, nf2);
    return oracle;
}

bool ExpansionOracle::contains(const SaturatedAutomaton& SA, const StateWord& p,
                               const StateWord& q) const {
    if (p.empty() || q.empty())
        return false;
    return nf_pairs.count({normal_form(SA, p), normal_form(SA, q)}) > 0;
}

std::set<std::pair<StateWord, StateWord>>
expansion_relation_bruteforce(const SaturatedAutomaton& SA, const LetterWord& w,
                              const NerodeDfa& D, int maxlen) {
    ExpansionOracle oracle = expansion_oracle(SA, w, D, maxlen);
    const int n = SA.automaton.state_count();

    // group all words of length <= maxlen by normal form
    std::map<StateWord, std::vector<StateWord>> by_nf;
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<int> idx(len, 0);
        for (;;) {
            StateWord word(idx.begin(), idx.end());
            by_nf[normal_form(SA, word)].push_back(word);
            int pos = len - 1;
            while (pos >= 0 && ++idx[pos] == n)
                idx[pos--] = 0;
            if (pos < 0)
                break;
        }
    }
    std::set<std::pair<StateWord, StateWord>> result;
    for (const auto& [nf1, nf2] : oracle.nf_pairs) {
        auto it1 = by_nf.find(nf1);
        auto it2 = by_nf.find(nf2);
        if (it1 == by_nf.end() || it2 == by_nf.end())
            continue;
        for (const auto& p : it1->second)
            for (const auto& q : it2->second)
                result.emplace(p, q);
    }
    return result;
}

} // namespace asg
