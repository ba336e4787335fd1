#include "asg/orbits.hpp"

#include <set>
#include <sstream>

namespace asg {

OrbitalTransducer orbital_transducer(const SAutomaton& T, const LetterWord& w, size_t cap) {
    T.check_letter_word(w);
    OrbitalTransducer o;
    o.nletters = T.state_count();
    auto intern = [&](const LetterWord& u) {
        auto [it, inserted] = o.index.emplace(u, static_cast<int>(o.words.size()));
        if (inserted) {
            o.words.push_back(u);
            if (o.words.size() > cap)
                throw ResourceError("orbit exceeded " + std::to_string(cap) + " words");
        }
        return it->second;
    };
    intern(w);
    for (size_t head = 0; head < o.words.size(); ++head) {
        LetterWord current = o.words[head];
        for (int p = 0; p < o.nletters; ++p) {
            auto [out, end] = run(T, p, current);
            int target = intern(out);
            o.edges.resize(o.words.size() * o.nletters);
            o.edges[head * o.nletters + p] = {end, target};
        }
    }
    o.edges.resize(o.words.size() * o.nletters);
    return o;
}

ProductMachine product_with_R(const SAutomaton& T, const LetterWord& w, const NerodeDfa& D,
                              size_t cap) {
    if (D.letter_count() != T.state_count())
        throw InputError("R acceptor alphabet does not match the automaton's states");
    ProductMachine pm;
    pm.orbit = orbital_transducer(T, w, cap);
    pm.classes = input_class_dfa(D);
    pm.nletters = pm.orbit.nletters;

    auto intern = [&](int word, int cls) {
        auto key = std::make_pair(word, cls);
        auto [it, inserted] = pm.index.emplace(key, static_cast<int>(pm.states.size()));
        if (inserted)
            pm.states.push_back(key);
        return it->second;
    };
    pm.root = intern(0, pm.classes.initial);
    for (size_t head = 0; head < pm.states.size(); ++head) {
        auto [word, cls] = pm.states[head];
        for (int p = 0; p < pm.nletters; ++p) {
            const auto& e = pm.orbit.step(word, p);
            int target = intern(e.target, pm.classes.step(cls, p));
            pm.edges.resize(pm.states.size() * pm.nletters);
            pm.edges[head * pm.nletters + p] = {e.out, target};
        }
    }
    pm.edges.resize(pm.states.size() * pm.nletters);
    return pm;
}

size_t r_orbit_size(const SAutomaton& T, const LetterWord& w, const NerodeDfa& D) {
    ProductMachine pm = product_with_R(T, w, D);
    std::set<int> words;
    for (int i = 0; i < pm.size(); ++i)
        if (pm.class_accepting(i))
            words.insert(pm.states[i].first);
    return words.size();
}

bool expands(const SAutomaton& T, const LetterWord& w, const LetterWord& x, const NerodeDfa& D) {
    LetterWord wx = w;
    wx.insert(wx.end(), x.begin(), x.end());
    return r_orbit_size(T, w, D) < r_orbit_size(T, wx, D);
}

std::optional<LetterWord> find_expander(const SAutomaton& T, const LetterWord& w,
                                        const NerodeDfa& D, int maxlen) {
    size_t base = r_orbit_size(T, w, D);
    const int na = T.letter_count();
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<int> idx(len, 0);
        for (;;) {
            LetterWord x(idx.begin(), idx.end());
            LetterWord wx = w;
            wx.insert(wx.end(), x.begin(), x.end());
            if (r_orbit_size(T, wx, D) > base)
                return x;
            int pos = len - 1;
            while (pos >= 0 && ++idx[pos] == na)
                idx[pos--] = 0;
            if (pos < 0)
                break;
        }
    }
    return std::nullopt;
}

std::string orbital_transducer_to_dot(const SAutomaton& T, const OrbitalTransducer& O) {
    std::ostringstream out;
    out << "digraph orbital {\n  rankdir=LR;\n";
    for (int i = 0; i < O.size(); ++i) {
        std::string label = letter_word_to_string(T, O.words[i]);
        if (label.empty())
            label = "\\<eps\\>";
        out << "  n" << i << " [label=\"" << label << "\"" << (i == 0 ? ", shape=doublecircle" : "")
            << "];\n";
    }
    for (int i = 0; i < O.size(); ++i)
        for (int p = 0; p < O.nletters; ++p) {
            const auto& e = O.step(i, p);
            out << "  n" << i << " -> n" << e.target << " [label=\"" << T.state_name(p) << "/"
                << T.state_name(e.out) << "\"];\n";
        }
    out << "}\n";
    return out.str();
}

std::string product_machine_to_dot(const SAutomaton& T, const ProductMachine& PM) {
    std::ostringstream out;
    out << "digraph product {\n  rankdir=LR;\n";
    for (int i = 0; i < PM.size(); ++i) {
        std::string label = letter_word_to_string(T, PM.orbit.words[PM.states[i].first]);
        if (label.empty())
            label = "\\<eps\\>";
        out << "  n" << i << " [label=\"(" << label << ", C" << PM.states[i].second << ")\""
            << (PM.class_accepting(i) ? ", peripheries=2" : "") << "];\n";
    }
    for (int i = 0; i < PM.size(); ++i)
        for (int p = 0; p < PM.nletters; ++p) {
            const auto& e = PM.step(i, p);
            out << "  n" << i << " -> n" << e.target << " [label=\"" << T.state_name(p) << "/"
                << T.state_name(e.out) << "\"];\n";
        }
    out << "}\n";
    return out.str();
}

} // namespace asg
