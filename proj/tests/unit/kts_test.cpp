#include <gtest/gtest.h>

#include "hyperpdl/kts.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

const char* kCycle = R"(aps a
programs s t
state q0 { a }
state q1 { }
init q0
edge q0 s q1
edge q1 s q0
)";

}  // namespace

TEST(Kts, ParsesTwoStateCycle) {
    Kts k = parse_kts(kCycle);
    EXPECT_EQ(k.num_states(), 2);
    EXPECT_EQ(k.init, 0);
    EXPECT_TRUE(k.holds(0, 0));
    EXPECT_FALSE(k.holds(0, 1));
    EXPECT_EQ(k.successors(0, 0), std::vector<int>{1});
}

TEST(Kts, MissingProgramEdgesGiveNoSuccessors) {
    Kts k = parse_kts(kCycle);
    EXPECT_TRUE(k.successors(0, 1).empty());
}

TEST(Kts, BranchingSuccessors) {
    Kts k = parse_kts("aps a\nprograms s\nstate q0 { }\nstate q1 { a }\nstate q2 { }\ninit q0\n"
                      "edge q0 s q1\nedge q0 s q2\nedge q1 s q1\nedge q2 s q2\n");
    EXPECT_EQ(k.successors(0, 0), (std::vector<int>{1, 2}));
}

TEST(Kts, DeadStateIsNamed) {
    try {
        parse_kts("aps a\nprograms s\nstate q0 { }\nstate q1 { }\ninit q0\nedge q0 s q1\n");
        FAIL() << "expected a dead state error";
    } catch (const KtsError& e) {
        EXPECT_NE(std::string(e.what()).find("q1"), std::string::npos);
    }
}

TEST(Kts, UnknownStateInEdge) {
    try {
        parse_kts("aps a\nprograms s\nstate q0 { }\ninit q0\nedge q0 s q9\n");
        FAIL() << "expected an unknown state error";
    } catch (const KtsError& e) {
        EXPECT_EQ(e.line(), 5u);
        EXPECT_NE(std::string(e.what()).find("q9"), std::string::npos);
    }
}

TEST(Kts, MissingInit) {
    EXPECT_THROW(parse_kts("aps a\nprograms s\nstate q0 { }\nedge q0 s q0\n"), KtsError);
}

TEST(Kts, CommentsAreIgnored) {
    Kts k = parse_kts("# header\naps a # trailing\nprograms s\nstate q0 { a }\ninit q0\nedge q0 s q0\n");
    EXPECT_EQ(k.num_states(), 1);
}

TEST(Kts, KripkeFormatUsesOneProgram) {
    Kts k = parse_kts("aps a\nstate q0 { a }\nstate q1 { }\ninit q0\nedge q0 q1\nedge q1 q0\n", KtsFormat::Kripke);
    ASSERT_EQ(k.num_programs(), 1);
    EXPECT_EQ(k.successors(1, 0), std::vector<int>{0});
}

TEST(Kts, LtsFormatDropsLabels) {
    Kts k = parse_kts(kCycle, KtsFormat::Lts);
    EXPECT_FALSE(k.holds(0, 0));
}

TEST(Kts, PrintRoundTrips) {
    Rng rng(5);
    Signature sig;
    sig.aps = {"a", "b"};
    sig.programs = {"s", "t"};
    for (int i = 0; i < 50; ++i) {
        Kts k = random_kts(rng, 5, sig);
        Kts back = parse_kts(print_kts(k));
        EXPECT_EQ(back.labels, k.labels);
        EXPECT_EQ(back.succ, k.succ);
        EXPECT_EQ(back.init, k.init);
    }
}

TEST(DeterministicPath, StemThenLoop) {
    Kts k = parse_kts("aps a\nprograms s t\nstate q0 { }\nstate q1 { a }\ninit q0\nedge q0 s q1\nedge q1 t q1\n");
    PathLasso p = deterministic_path(k, 0);
    EXPECT_EQ(p.stem, (std::vector<PathStep>{{0, 0}}));
    EXPECT_EQ(p.period, (std::vector<PathStep>{{1, 1}}));
}

TEST(DeterministicPath, SelfLoop) {
    Kts k = parse_kts("aps a\nprograms s\nstate q0 { }\ninit q0\nedge q0 s q0\n");
    PathLasso p = deterministic_path(k, 0);
    EXPECT_TRUE(p.stem.empty());
    EXPECT_EQ(p.period, (std::vector<PathStep>{{0, 0}}));
}

TEST(DeterministicPath, RejectsBranching) {
    Kts k = parse_kts("aps a\nprograms s\nstate q0 { }\nstate q1 { }\ninit q0\n"
                      "edge q0 s q0\nedge q0 s q1\nedge q1 s q1\n");
    EXPECT_THROW(deterministic_path(k, 0), std::invalid_argument);
}

TEST(DeterministicPath, FollowsTheRelation) {
    Rng rng(6);
    Signature sig;
    sig.aps = {"a"};
    sig.programs = {"s", "t"};
    for (int i = 0; i < 50; ++i) {
        Kts k;
        k.sig = sig;
        int n = uniform(rng, 1, 6);
        for (int s = 0; s < n; ++s) k.add_state("q" + std::to_string(s), 0);
        k.init = 0;
        for (int s = 0; s < n; ++s) k.add_edge(s, uniform(rng, 0, 1), uniform(rng, 0, n - 1));
        PathLasso p = deterministic_path(k, 0);
        ASSERT_FALSE(p.period.empty());
        std::set<int> stem_states;
        for (const auto& st : p.stem) EXPECT_TRUE(stem_states.insert(st.world).second);
        for (std::size_t j = 0; j < p.length(); ++j) {
            const PathStep& a = p.at(j);
            const PathStep& b = p.at(p.next(j));
            const auto& succ = k.successors(a.world, a.prog);
            EXPECT_NE(std::find(succ.begin(), succ.end(), b.world), succ.end());
        }
    }
}
