#include <gtest/gtest.h>

#include "hyperpdl/marked_nfa.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

Signature sig_st() {
    Signature s;
    s.aps = {"a", "b"};
    s.programs = {"s", "t"};
    return s;
}

MarkedNfa build(const std::string& text, std::size_t n) {
    std::vector<std::string> vars = path_names(n);
    return build_marked_nfa(parse_program(text, sig_st(), n, vars), n);
}

bool has_fact(const MarkedNfa& m, int q, TestMask x, int q2) {
    auto facts = eps_reach(m);
    return std::find(facts.begin(), facts.end(), ReachFact{q, x, q2}) != facts.end();
}

}  // namespace

TEST(MarkedNfa, TupleHasTwoStatesAndOneEdge) {
    MarkedNfa m = build("(s, _)", 2);
    EXPECT_EQ(m.num_states(), 2);
    ASSERT_EQ(m.tup_edges.size(), 1u);
    EXPECT_TRUE(m.tup_edges[0].guard.matches({0, 1}));
    EXPECT_FALSE(m.tup_edges[0].guard.matches({1, 0}));
}

TEST(MarkedNfa, EpsHasOneEpsilonEdge) {
    MarkedNfa m = build("eps", 1);
    EXPECT_EQ(m.num_states(), 2);
    EXPECT_EQ(m.eps[m.initial], std::vector<int>{m.final_state});
}

TEST(MarkedNfa, TestMarksTheMiddleState) {
    MarkedNfa m = build("{a@p1}?", 1);
    EXPECT_EQ(m.num_states(), 3);
    ASSERT_EQ(m.tests.size(), 1u);
    int marked = 0;
    for (int q = 0; q < m.num_states(); ++q) marked += m.marking[q] == 0;
    EXPECT_EQ(marked, 1);
    EXPECT_LT(m.marking[m.initial], 0);
    EXPECT_LT(m.marking[m.final_state], 0);
}

TEST(MarkedNfa, EqualTestsShareAnId) {
    MarkedNfa m = build("{a@p1}? ; (s) ; {a@p1}?", 1);
    EXPECT_EQ(m.tests.size(), 1u);
}

TEST(EpsReach, ThroughATest) {
    MarkedNfa m = build("{a@p1}?", 1);
    EXPECT_TRUE(has_fact(m, m.initial, 1, m.final_state));
    EXPECT_FALSE(has_fact(m, m.initial, 0, m.final_state));
}

TEST(EpsReach, TupleOnlyReflexive) {
    MarkedNfa m = build("(s)", 1);
    for (const ReachFact& f : eps_reach(m)) {
        EXPECT_EQ(f.src, f.dst);
        EXPECT_EQ(f.tests, 0u);
    }
}

TEST(EpsReach, StarSkipsItsBody) {
    MarkedNfa m = build("{a@p1}?*", 1);
    EXPECT_TRUE(has_fact(m, m.initial, 0, m.final_state));
}

TEST(TauReach, GuardMatching) {
    MarkedNfa m = build("(s, _)", 2);
    auto r = tau_reach(m, m.initial, {0, 1});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].first, 0u);
    EXPECT_EQ(r[0].second, m.final_state);
    EXPECT_TRUE(tau_reach(m, m.initial, {1, 1}).empty());
}

TEST(TauReach, ThroughATestIntoATuple) {
    MarkedNfa m = build("{a@p1}? ; (s)", 1);
    auto r = tau_reach(m, m.initial, {0});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].first, 1u);
}

TEST(Dp, TupleCase) {
    MarkedNfa m = build("(s)", 1);
    int q0 = m.tup_edges[0].src, q1 = m.tup_edges[0].dst;
    EXPECT_EQ(dp(m, q0, q1)->kind, Guard::Kind::False);
    EXPECT_EQ(dp(m, q0, q0)->kind, Guard::Kind::True);
}

TEST(Dp, BinaryTestChainStaysLinear) {
    // (t0 + t0') ; (t1 + t1') ; ... ; (s)
    std::string text;
    const int rounds = 4;
    for (int i = 0; i < rounds; ++i) {
        text += "({a@p" + std::to_string(i + 1) + "}? + {b@p" + std::to_string(i + 1) + "}?) ; ";
    }
    text += "(s, _, _, _)";
    std::vector<std::string> vars = path_names(rounds);
    auto alpha = parse_program(text, sig_st(), rounds, vars);
    MarkedNfa m = build_marked_nfa(alpha, rounds);
    int pre = m.tup_edges[0].src;
    GuardPtr g = dp(m, m.initial, pre);
    EXPECT_LE(g->size(), size(*alpha));
    ASSERT_EQ(m.tests.size(), 2u * rounds);
    // exactly the assignments picking one test per round
    for (TestMask x = 0; x < (TestMask{1} << m.tests.size()); ++x) {
        bool expect = true;
        for (int i = 0; i < rounds; ++i) expect = expect && ((x >> (2 * i)) & 3) != 0;
        EXPECT_EQ(g->eval(x), expect) << x;
    }
}

TEST(EpsFormula, NoCommonStarIsDp) {
    MarkedNfa m = build("{a@p1}? ; (s)", 1);
    for (int q = 0; q < m.num_states(); ++q)
        for (int q2 = 0; q2 < m.num_states(); ++q2)
            EXPECT_EQ(eps_formula(m, q, q2)->str(), dp(m, q, q2)->str());
}

TEST(EpsFormula, MatchesEnumeratedPaths) {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 2));
        auto alpha = random_program(rng, GenLimits{n, 2, 2, false, true}, 10);
        MarkedNfa m = build_marked_nfa(alpha, n);
        if (m.tests.size() > 8) continue;
        for (int q = 0; q < m.num_states(); ++q) {
            for (int q2 = 0; q2 < m.num_states(); ++q2) {
                auto g = eps_formula(m, q, q2);
                EXPECT_LE(g->size(), 3 * size(*alpha) + 2);
                auto sets = eps_path_sets(m, q, q2);
                for (TestMask x = 0; x < (TestMask{1} << m.tests.size()); ++x) {
                    bool dnf = std::any_of(sets.begin(), sets.end(), [&](TestMask s) { return (s & x) == s; });
                    ASSERT_EQ(g->eval(x), dnf);
                }
            }
        }
    }
}

TEST(Determinism, SingleTuple) { EXPECT_TRUE(is_deterministic(build("(s)", 1))); }

TEST(Determinism, OverlappingSum) { EXPECT_FALSE(is_deterministic(build("(s, _) + (s, _)", 2))); }

TEST(Determinism, DisjointSum) { EXPECT_TRUE(is_deterministic(build("(s) + (t)", 1))); }

TEST(Determinism, UntilShapeIsDeterministic) { EXPECT_TRUE(is_deterministic(build("({a@p1}? ; any)*", 1))); }

TEST(MarkedNfa, StructuralBounds) {
    Rng rng(8);
    for (int i = 0; i < 300; ++i) {
        std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
        auto alpha = random_program(rng, GenLimits{n, 2, 2, false, true}, 12);
        MarkedNfa m = build_marked_nfa(alpha, n);
        EXPECT_LE(static_cast<std::size_t>(m.num_states()), 3 * size(*alpha));
        EXPECT_LT(m.marking[m.initial], 0);
        EXPECT_LT(m.marking[m.final_state], 0);
        for (int q = 0; q < m.num_states(); ++q)
            for (int q2 = 0; q2 < m.num_states(); ++q2) EXPECT_LE(dp(m, q, q2)->size(), size(*alpha));
    }
}

TEST(MarkedNfa, DotIsValid) {
    MarkedNfa m = build("({a@p1}? ; (s))* + eps", 1);
    std::string err;
    EXPECT_TRUE(valid_dot(to_dot(m, sig_st()), &err)) << err;
}
