#include "doctest.h"

#include "asg/automaton.hpp"

#include "support.hpp"

using namespace asg;
using namespace asgtest;

namespace {

SAutomaton adding_machine() { return load_bundled("adding_machine.aut"); }

LetterWord lw(const SAutomaton& T, const char* text) { return parse_letter_word(T, text); }
StateWord sw(const SAutomaton& T, const char* text) { return parse_state_word(T, text); }

} // namespace

TEST_CASE("action of the adding machine") {
    SAutomaton t = adding_machine();
    CHECK(act(t, sw(t, "q"), lw(t, "000")) == lw(t, "100"));
    CHECK(act(t, sw(t, "qq"), lw(t, "000")) == lw(t, "010"));
    CHECK(act(t, sw(t, "qqq"), lw(t, "000")) == lw(t, "110"));
    CHECK(act(t, sw(t, "qqqq"), lw(t, "000")) == lw(t, "001"));
    // the empty state word acts as the identity
    CHECK(act(t, {}, lw(t, "0101")) == lw(t, "0101"));
    CHECK_THROWS_AS(act(t, {7}, lw(t, "0")), InputError);
}

TEST_CASE("adding machine increments reversed binary representations") {
    SAutomaton t = adding_machine();
    StateWord q = sw(t, "q");
    for (int len = 1; len <= 8; ++len)
        for (unsigned n = 0; n + 1 < (1u << len); ++n) {
            LetterWord bin_n, bin_n1;
            for (int i = 0; i < len; ++i) {
                bin_n.push_back((n >> i) & 1);
                bin_n1.push_back(((n + 1) >> i) & 1);
            }
            CHECK(act(t, q, bin_n) == bin_n1);
        }
}

TEST_CASE("dual action") {
    SAutomaton t = adding_machine();
    CHECK(dual_act(t, {}, lw(t, "01")) == StateWord{});
    CHECK(dual_act(t, sw(t, "q"), lw(t, "1")) == sw(t, "q"));
    CHECK(dual_act(t, sw(t, "qq"), lw(t, "0")) == sw(t, "qe"));

    // agree with the definitional recursion on random inputs
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        SAutomaton r = random_automaton(rng, 3, 2);
        for (const auto& p : all_state_words(3, 2))
            for (const auto& u : all_letter_words(2, 3)) {
                CHECK(act(r, p, u) == reference_act(r, p, u));
                CHECK(dual_act(r, p, u) == reference_dual_act(r, p, u));
            }
    }
}

TEST_CASE("power automaton") {
    SAutomaton t = adding_machine();
    SAutomaton p2 = power(t, 2);
    CHECK(p2.state_count() == 4);
    int qq = p2.require_state("q,q");
    CHECK(run(p2, qq, lw(t, "000")).first == lw(t, "010"));
    CHECK_THROWS_AS(power(t, 0), InputError);

    SAutomaton p1 = power(t, 1);
    CHECK(p1.state_names() == t.state_names());
    CHECK(serialize_automaton(p1) == serialize_automaton(t));
}

TEST_CASE("composition") {
    SAutomaton t = adding_machine();
    SAutomaton c = compose(t, t);
    CHECK(serialize_automaton(c) == serialize_automaton(power(t, 2)));

    // the state eq of the composition acts exactly like q
    SAutomaton u = union_automata(t, c);
    int eq = u.require_state("e,q");
    for (int len = 0; len <= 6; ++len)
        for (const auto& word : all_letter_words(2, len))
            CHECK(act(u, {eq}, word) == act(u, {u.require_state("q")}, word));

    // composing with an all-identity automaton preserves every action
    SAutomaton identity = load_bundled("identity.aut");
    SAutomaton ci = compose(t, identity);
    for (int s = 0; s < t.state_count(); ++s) {
        int lifted = ci.require_state(t.state_name(s) + ",e");
        for (const auto& word : all_letter_words(2, 4))
            CHECK(run(ci, lifted, word).first == run(t, s, word).first);
    }

    SAutomaton u1 = load_bundled("u1.aut");
    CHECK_THROWS_AS(compose(t, u1), InputError);
}

TEST_CASE("union") {
    SAutomaton t = adding_machine();
    SAutomaton u = union_automata(t, t); // same names collide and get primed
    CHECK(u.state_count() == 2 * t.state_count());
    CHECK(u.require_state("q'") >= 0);
    for (const auto& word : all_letter_words(2, 5)) {
        CHECK(act(u, {u.require_state("q")}, word) == act(t, {t.require_state("q")}, word));
        CHECK(act(u, {u.require_state("q'")}, word) == act(t, {t.require_state("q")}, word));
    }

    // adjoining the square does not change the generated semigroup
    SAutomaton up = union_automata(t, power(t, 2));
    CHECK(equal_actions(up, {up.require_state("q"), up.require_state("q")},
                        {up.require_state("q,q")}));
}

TEST_CASE("dual automaton") {
    SAutomaton t = adding_machine();
    SAutomaton d = dual_automaton(t);
    CHECK(d.state_count() == 2);
    CHECK(d.state_names() == std::vector<std::string>{"0", "1"});
    CHECK(d.letter_names() == std::vector<std::string>{"q", "e"});
    // q --0/1--> e dualizes to 0 --q/e--> 1
    const auto& arrow = d.step(d.require_state("0"), d.require_letter("q"));
    CHECK(d.letter_name(arrow.out) == "e");
    CHECK(d.state_name(arrow.next) == "1");

    CHECK(serialize_automaton(dual_automaton(d)) == serialize_automaton(t));
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        SAutomaton r = random_automaton(rng, 3, 3);
        CHECK(serialize_automaton(dual_automaton(dual_automaton(r))) == serialize_automaton(r));
    }
}

TEST_CASE("minimization") {
    SAutomaton t = adding_machine();
    auto [m1, map1] = minimize(t);
    CHECK(m1.state_count() == 2); // q and e differ on input 0
    CHECK(serialize_automaton(m1) == serialize_automaton(t));

    auto [m2, map2] = minimize(power(t, 2));
    CHECK(m2.state_count() == 3); // qe and eq merge
    SAutomaton p2 = power(t, 2);
    CHECK(map2[p2.require_state("q,e")] == map2[p2.require_state("e,q")]);

    SAutomaton identity2 = parse_automaton("alphabet: 0 1\nstates: x y\n"
                                           "x 0 -> 0 y\nx 1 -> 1 x\ny 0 -> 0 x\ny 1 -> 1 y\n");
    auto [m3, map3] = minimize(identity2);
    CHECK(m3.state_count() == 1);
}

TEST_CASE("minimization is sound and minimal on random automata") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        SAutomaton t = random_automaton(rng, 4, 2);
        auto [m, mapping] = minimize(t);
        SAutomaton u = union_automata(t, m);
        for (int s = 0; s < t.state_count(); ++s)
            CHECK(equal_actions(u, {s}, {t.state_count() + mapping[s]}));
        for (int a = 0; a < m.state_count(); ++a)
            for (int b = a + 1; b < m.state_count(); ++b)
                CHECK_FALSE(equal_actions(m, {a}, {b}));
    }
}

TEST_CASE("equal actions") {
    SAutomaton t = adding_machine();
    CHECK(equal_actions(t, sw(t, "qe"), sw(t, "eq")));
    CHECK_FALSE(equal_actions(t, sw(t, "q"), sw(t, "e")));
    CHECK(equal_actions(t, sw(t, "qqe"), sw(t, "qqe")));
    CHECK(equal_actions(t, {}, {}));
    CHECK_THROWS_AS(equal_actions(t, {}, sw(t, "q")), InputError);
}

TEST_CASE("action coherence between words and power states") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 15; ++trial) {
        SAutomaton t = random_automaton(rng, 2, 2);
        for (int k = 1; k <= 3; ++k) {
            SAutomaton pk = power(t, k);
            for (const auto& p : all_state_words(2, k)) {
                std::string name;
                for (size_t i = 0; i < p.size(); ++i) {
                    if (i)
                        name += kIdSeparator;
                    name += t.state_name(p[i]);
                }
                int tuple_state = pk.require_state(name);
                for (const auto& u : all_letter_words(2, 4)) {
                    auto [out, end] = run(pk, tuple_state, u);
                    CHECK(out == act(t, p, u));
                    // the end tuple spells the dual action
                    StateWord dual = dual_act(t, p, u);
                    std::string dual_name;
                    for (size_t i = 0; i < dual.size(); ++i) {
                        if (i)
                            dual_name += kIdSeparator;
                        dual_name += t.state_name(dual[i]);
                    }
                    CHECK(pk.state_name(end) == dual_name);
                }
            }
        }
    }
}

TEST_CASE("cocycle identity: act splits over concatenation") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        SAutomaton t = random_automaton(rng, 3, 2);
        for (const auto& p : all_state_words(3, 2))
            for (const auto& u : all_letter_words(2, 2))
                for (const auto& v : all_letter_words(2, 2)) {
                    LetterWord uv = u;
                    uv.insert(uv.end(), v.begin(), v.end());
                    LetterWord expected = act(t, p, u);
                    LetterWord tail = act(t, dual_act(t, p, u), v);
                    expected.insert(expected.end(), tail.begin(), tail.end());
                    CHECK(act(t, p, uv) == expected);
                }
    }
}

TEST_CASE("parser and serializer") {
    SAutomaton t = adding_machine();
    CHECK(t.state_count() == 2);
    CHECK(t.letter_count() == 2);
    // round-trip fixpoint
    std::string canonical = serialize_automaton(t);
    CHECK(serialize_automaton(parse_automaton(canonical)) == canonical);

    CHECK_THROWS_WITH_AS(parse_automaton("alphabet: 0 1\nstates: q e\nq 0 -> 1 e\n"
                                         "e 0 -> 0 e\ne 1 -> 1 e\n"),
                         doctest::Contains("incomplete"), InputError);
    CHECK_THROWS_WITH_AS(parse_automaton("alphabet: 0\nstates: q\nq 0 -> 0 q\nq 0 -> 0 q\n"),
                         doctest::Contains("duplicate"), InputError);
    CHECK_THROWS_AS(parse_automaton("alphabet: 0\nstates: q\nq 0 -> 0 z\n"), InputError);
    CHECK_THROWS_AS(parse_automaton("alphabet: 0\nstates: a,b\na,b 0 -> 0 a,b\n"), InputError);
    // states and letters must be distinct identifier sets
    CHECK_THROWS_AS(parse_automaton("alphabet: q\nstates: q\nq q -> q q\n"), InputError);

    SAutomaton combined = load_bundled("combined.aut");
    CHECK(combined.state_count() == 3);
    CHECK(combined.letter_count() == 4);

    CHECK(automaton_to_dot(t).find("q/e") == std::string::npos); // labels are letter pairs
    CHECK(automaton_to_dot(t).find("0/1") != std::string::npos);
}

TEST_CASE("word literals") {
    SAutomaton t = adding_machine();
    CHECK(parse_state_word(t, "qqe") == StateWord{0, 0, 1});
    CHECK(parse_state_word(t, "q.q.e") == StateWord{0, 0, 1});
    CHECK(parse_state_word(t, "") == StateWord{});
    CHECK_THROWS_AS(parse_state_word(t, "qx"), InputError);
    CHECK(state_word_to_string(t, {0, 1}) == "qe");
}
