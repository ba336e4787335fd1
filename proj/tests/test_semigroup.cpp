#include "doctest.h"

#include "asg/semigroup.hpp"

#include "support.hpp"

using namespace asg;
using namespace asgtest;

namespace {

std::vector<int> subset_of(const SAutomaton& T, std::initializer_list<const char*> names) {
    std::vector<int> out;
    for (const char* n : names)
        out.push_back(T.require_state(n));
    return out;
}

// left-zero semigroup on two elements: xy = x
FiniteSemigroup left_zero2() {
    return FiniteSemigroup::from_table({{0, 0}, {1, 1}}, {0, 1});
}

} // namespace

TEST_CASE("closed subsets") {
    SAutomaton adding = load_bundled("adding_machine.aut");
    CHECK(is_closed(adding, subset_of(adding, {"e"})));
    CHECK_FALSE(is_closed(adding, subset_of(adding, {"q"}))); // q . 0 = e
    SAutomaton combined = load_bundled("combined.aut");
    CHECK(is_closed(combined, subset_of(combined, {"e", "z"})));
    CHECK(is_closed(combined, subset_of(combined, {"z"})));
    CHECK_THROWS_AS(is_closed(adding, {9}), InputError);
}

TEST_CASE("subsemigroup enumeration") {
    SAutomaton combined = load_bundled("combined.aut");
    auto u1 = enumerate_subsemigroup(combined, subset_of(combined, {"e", "z"}), 10);
    REQUIRE(u1.has_value());
    REQUIRE(u1->size() == 2);
    CHECK(u1->is_associative());
    // z z = e z = z e = z and e e = e
    int e = u1->generator_map[0].second;
    int z = u1->generator_map[1].second;
    CHECK(u1->elements[e] == StateWord{combined.require_state("e")});
    CHECK(u1->elements[z] == StateWord{combined.require_state("z")});
    CHECK(u1->table[z][z] == z);
    CHECK(u1->table[e][z] == z);
    CHECK(u1->table[z][e] == z);
    CHECK(u1->table[e][e] == e);

    SAutomaton adding = load_bundled("adding_machine.aut");
    auto trivial = enumerate_subsemigroup(adding, subset_of(adding, {"e"}), 10);
    REQUIRE(trivial.has_value());
    CHECK(trivial->size() == 1);
    CHECK(trivial->table[0][0] == 0);

    CHECK_FALSE(enumerate_subsemigroup(adding, subset_of(adding, {"q", "e"}), 5).has_value());
    CHECK_THROWS_AS(enumerate_subsemigroup(adding, subset_of(adding, {"e"}), 0), InputError);
}

TEST_CASE("saturation") {
    SAutomaton adding = load_bundled("adding_machine.aut");
    SaturatedAutomaton sa = saturate(adding, subset_of(adding, {"e"}));
    CHECK(sa.automaton.state_count() == 2);
    REQUIRE(sa.s_states.size() == 1);
    CHECK(sa.automaton.state_name(sa.s_states[0]) == "e");
    CHECK(sa.origin_map[adding.require_state("q")] != sa.s_states[0]);

    SAutomaton combined = load_bundled("combined.aut");
    SaturatedAutomaton sc = saturate(combined, subset_of(combined, {"e", "z"}));
    CHECK(sc.s_states.size() == 2);

    CHECK_THROWS_AS(saturate(adding, subset_of(adding, {"q"})), PreconditionError);
    CHECK_THROWS_AS(saturate(adding, subset_of(adding, {"q", "e"}), 5), PreconditionError);
}

TEST_CASE("saturation of random automata keeps s_states closed and unique") {
    std::mt19937 rng(53);
    int exercised = 0;
    for (int trial = 0; trial < 400 && exercised < 12; ++trial) {
        SAutomaton t = random_automaton(rng, 3, 2);
        for (auto& [subset, sg] : discover_closed_subsets(t, 50)) {
            if (!sg)
                continue;
            SaturatedAutomaton sa = saturate(t, subset, 50);
            ++exercised;
            // closed under the dual action
            CHECK(is_closed(sa.automaton, sa.s_states));
            // distinct s_states have distinct actions
            for (size_t i = 0; i < sa.s_states.size(); ++i)
                for (size_t j = i + 1; j < sa.s_states.size(); ++j)
                    CHECK_FALSE(equal_actions(sa.automaton, {sa.s_states[i]}, {sa.s_states[j]}));
            // every product over s_states of length <= 4 equals exactly one s_state
            for (int len = 1; len <= 4; ++len)
                for (const auto& idx : all_state_words(static_cast<int>(sa.s_states.size()), len)) {
                    StateWord word;
                    for (int i : idx)
                        word.push_back(sa.s_states[i]);
                    int hits = 0;
                    for (int s : sa.s_states)
                        if (equal_actions(sa.automaton, word, {s}))
                            ++hits;
                    CHECK(hits == 1);
                }
            // original actions survive the renaming
            SAutomaton u = union_automata(t, sa.automaton);
            for (int s = 0; s < t.state_count(); ++s)
                CHECK(equal_actions(u, {s}, {t.state_count() + sa.origin_map[s]}));
        }
    }
    CHECK(exercised >= 12);
}

TEST_CASE("normal forms") {
    SAutomaton adding = load_bundled("adding_machine.aut");
    SaturatedAutomaton sa = saturate(adding, subset_of(adding, {"e"}));
    auto word = [&](const char* text) { return parse_state_word(sa.automaton, text); };
    CHECK(normal_form(sa, word("qeeq")) == word("qeq"));
    CHECK(normal_form(sa, word("qqq")) == word("qqq"));
    CHECK(normal_form(sa, {}) == StateWord{});

    SAutomaton combined = load_bundled("combined.aut");
    SaturatedAutomaton sc = saturate(combined, subset_of(combined, {"e", "z"}));
    auto cword = [&](const char* text) { return parse_state_word(sc.automaton, text); };
    CHECK(normal_form(sc, cword("qzez")) == cword("qz"));

    CHECK(approx_equiv(sa, word("qee"), word("qe")));
    CHECK_FALSE(approx_equiv(sa, word("q"), word("e")));
    CHECK(approx_equiv(sa, {}, {}));
    CHECK(approx_equiv(sc, cword("zez"), cword("z")));
}

TEST_CASE("normal form is idempotent and length-nonincreasing") {
    SAutomaton combined = load_bundled("combined.aut");
    SaturatedAutomaton sc =
        saturate(combined, {combined.require_state("e"), combined.require_state("z")});
    for (int len = 0; len <= 4; ++len)
        for (const auto& p : all_state_words(sc.automaton.state_count(), len)) {
            StateWord nf = normal_form(sc, p);
            CHECK(nf.size() <= p.size());
            CHECK(normal_form(sc, nf) == nf);
        }
}

TEST_CASE("facts 3.2 and 3.3: block reductions preserve actions and duals") {
    std::mt19937 rng(59);
    SAutomaton combined = load_bundled("combined.aut");
    SaturatedAutomaton sc =
        saturate(combined, {combined.require_state("e"), combined.require_state("z")});
    const int n = sc.automaton.state_count();
    std::uniform_int_distribution<int> pick_state(0, n - 1);
    std::uniform_int_distribution<int> pick_el(0, static_cast<int>(sc.s_states.size()) - 1);
    std::uniform_int_distribution<int> pick_len(0, 2);

    for (int trial = 0; trial < 200; ++trial) {
        // random word, then a variant with every maximal S-block replaced by
        // an equivalent random block
        StateWord p;
        for (int i = 0, len = pick_len(rng) + 1; i < len; ++i)
            p.push_back(pick_state(rng));
        StateWord q;
        for (size_t i = 0; i < p.size();) {
            if (!sc.in_s(p[i])) {
                q.push_back(p[i++]);
                continue;
            }
            int el = sc.s_index[p[i++]];
            while (i < p.size() && sc.in_s(p[i]))
                el = sc.mult(el, sc.s_index[p[i++]]);
            // random block with the same product
            for (;;) {
                StateWord block;
                int acc = -1;
                for (int j = 0, len = pick_len(rng) + 1; j < len; ++j) {
                    int pick = pick_el(rng);
                    block.push_back(sc.s_states[pick]);
                    acc = (acc < 0) ? pick : sc.mult(acc, pick);
                }
                if (acc == el) {
                    q.insert(q.end(), block.begin(), block.end());
                    break;
                }
            }
        }
        REQUIRE(approx_equiv(sc, p, q));
        CHECK(equal_actions(sc.automaton, p, q)); // Fact 3.2
        std::uniform_int_distribution<int> pick_letter(0, sc.automaton.letter_count() - 1);
        for (int len = 0; len <= 5; ++len) {
            LetterWord u;
            for (int i = 0; i < len; ++i)
                u.push_back(pick_letter(rng));
            CHECK(approx_equiv(sc, dual_act(sc.automaton, p, u),
                               dual_act(sc.automaton, q, u))); // Fact 3.3
        }
    }
}

TEST_CASE("closed subset discovery") {
    SAutomaton adding = load_bundled("adding_machine.aut");
    auto found = discover_closed_subsets(adding, 10);
    // {e} and the full set are the only closed subsets; only {e} is proper
    // with a finite subsemigroup
    REQUIRE(found.size() == 2);
    CHECK(found[0].first == subset_of(adding, {"e"}));
    CHECK(found[0].second.has_value());
    CHECK(found[0].second->size() == 1);
    CHECK(found[1].first == std::vector<int>{0, 1});
    CHECK_FALSE(found[1].second.has_value());

    SAutomaton combined = load_bundled("combined.aut");
    auto cfound = discover_closed_subsets(combined, 10);
    std::set<std::vector<int>> sets;
    for (auto& [subset, sg] : cfound)
        sets.insert(subset);
    CHECK(sets.count(subset_of(combined, {"e"})));
    CHECK(sets.count(subset_of(combined, {"z"})));
    CHECK(sets.count({combined.require_state("e"), combined.require_state("z")}));

    SAutomaton identity = load_bundled("identity.aut");
    auto ifound = discover_closed_subsets(identity, 10);
    REQUIRE(ifound.size() == 1);
    CHECK(ifound[0].first == std::vector<int>{0});
    CHECK(ifound[0].second->size() == 1);
}

TEST_CASE("finite semigroup isomorphism") {
    SAutomaton combined = load_bundled("combined.aut");
    auto u1 = enumerate_subsemigroup(
        combined, {combined.require_state("e"), combined.require_state("z")}, 10);
    REQUIRE(u1.has_value());

    CHECK(iso_finite_semigroups(*u1, *u1));

    SAutomaton adding = load_bundled("adding_machine.aut");
    auto trivial = enumerate_subsemigroup(adding, {adding.require_state("e")}, 10);
    CHECK_FALSE(iso_finite_semigroups(*trivial, *u1));
    CHECK_FALSE(iso_finite_semigroups(*u1, left_zero2())); // U1 has an identity

    // iso is insensitive to the generator presentation
    FiniteSemigroup u1_table = FiniteSemigroup::from_table({{0, 1}, {1, 1}}, {1, 0});
    CHECK(iso_finite_semigroups(*u1, u1_table));
}
