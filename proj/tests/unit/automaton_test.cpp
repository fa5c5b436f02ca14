#include <gtest/gtest.h>

#include "hyperpdl/automaton.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

const LetterDomain kDom{1, 2, 2};

// accepting self loop on every letter
std::shared_ptr<ExplicitAba> universal_aba() {
    auto a = std::make_shared<ExplicitAba>(kDom, 3, 2);
    a->set_accepting(2, true);
    for (std::size_t l = 0; l < kDom.size(); ++l) a->set_rho(2, l, PosBool::var(2));
    return a;
}

LassoWord<Letter> word(std::vector<std::size_t> stem, std::vector<std::size_t> period) {
    LassoWord<Letter> w;
    for (auto i : stem) w.stem.push_back(kDom.letter(i));
    for (auto i : period) w.period.push_back(kDom.letter(i));
    return w;
}

}  // namespace

TEST(PosBool, SinksFold) {
    EXPECT_TRUE(PosBool::var(kSinkTrue).is_true());
    EXPECT_TRUE(PosBool::var(kSinkFalse).is_false());
    EXPECT_TRUE(PosBool::conj(PosBool::var(3), PosBool::f()).is_false());
    EXPECT_TRUE(PosBool::disj(PosBool::var(3), PosBool::t()).is_true());
}

TEST(PosBool, MinimalModels) {
    auto b = PosBool::conj(PosBool::disj(PosBool::var(2), PosBool::var(3)), PosBool::disj(PosBool::var(2), PosBool::var(4)));
    auto ms = minimal_models(b);
    std::set<StateSet> got(ms.begin(), ms.end());
    EXPECT_EQ(got, (std::set<StateSet>{{2}, {3, 4}}));
    EXPECT_EQ(minimal_models(PosBool::t()), std::vector<StateSet>{StateSet{}});
    EXPECT_TRUE(minimal_models(PosBool::f()).empty());
}

TEST(PosBool, DualSwaps) {
    auto b = PosBool::conj(PosBool::var(2), PosBool::disj(PosBool::var(3), PosBool::var(4)));
    auto d = b.dual();
    EXPECT_EQ(d.kind(), PosBool::Kind::Or);
    EXPECT_TRUE(d.eval({2}));
    EXPECT_TRUE(d.eval({3, 4}));
    EXPECT_FALSE(d.eval({3}));
}

TEST(Letters, IndexRoundTrip) {
    LetterDomain d{2, 3, 2};
    EXPECT_EQ(d.size(), 36u);
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(d.index(d.letter(i)), i);
}

TEST(Lasso, SinksDecideEverything) {
    ExplicitAba t(kDom, 2, kSinkTrue), f(kDom, 2, kSinkFalse);
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        auto w = random_word(rng, kDom, 3, 3);
        EXPECT_TRUE(accepts_lasso(t, w));
        EXPECT_FALSE(accepts_lasso(f, w));
    }
}

TEST(Lasso, RejectsLettersOutsideTheDomain) {
    auto a = universal_aba();
    LassoWord<Letter> w;
    w.period.push_back(Letter{{5}, {0}});
    EXPECT_THROW(accepts_lasso(*a, w), std::out_of_range);
}

TEST(Lasso, AgreesWithTheGameOracle) {
    Rng rng(10);
    int cases = 0;
    for (int i = 0; i < 100; ++i) {
        auto a = random_aba(rng, static_cast<std::size_t>(uniform(rng, 3, 6)), kDom);
        for (int j = 0; j < 10; ++j, ++cases) {
            auto w = random_word(rng, kDom, 3, 3);
            ASSERT_EQ(accepts_lasso(*a, w), game_accepts(*a, w));
        }
    }
    EXPECT_EQ(cases, 1000);
}

TEST(MiyanoHayashi, PreservesMembership) {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        auto a = random_aba(rng, static_cast<std::size_t>(uniform(rng, 3, 6)), kDom);
        MhNba mh(a);
        for (int j = 0; j < 5; ++j) {
            auto w = random_word(rng, kDom, 3, 3);
            ASSERT_EQ(accepts_lasso(mh, w), game_accepts(*a, w));
        }
    }
}

TEST(MiyanoHayashi, TransitionsAreDisjunctive) {
    Rng rng(12);
    auto a = random_aba(rng, 5, kDom);
    MhNba mh(a);
    mh.materialize();
    for (StateId q = 0; q < mh.num_states(); ++q) {
        for (std::size_t l = 0; l < kDom.size(); ++l) {
            PosBool b = mh.rho(q, kDom.letter(l));
            if (b.kind() == PosBool::Kind::Or)
                for (const auto& k : b.kids()) EXPECT_EQ(k.kind(), PosBool::Kind::Var);
            else
                EXPECT_NE(b.kind(), PosBool::Kind::And);
        }
    }
}

TEST(MiyanoHayashi, NondeterministicInputKeepsItsLanguage) {
    Rng rng(13);
    auto a = std::make_shared<ExplicitAba>(kDom, 4, 2);
    a->set_accepting(3, true);
    for (std::size_t l = 0; l < kDom.size(); ++l) {
        a->set_rho(2, l, l % 2 ? PosBool::disj(PosBool::var(2), PosBool::var(3)) : PosBool::var(2));
        a->set_rho(3, l, l < 2 ? PosBool::var(3) : PosBool::var(2));
    }
    MhNba mh(a);
    for (int j = 0; j < 50; ++j) {
        auto w = random_word(rng, kDom, 3, 3);
        EXPECT_EQ(accepts_lasso(mh, w), accepts_lasso(*a, w));
    }
}

TEST(MiyanoHayashi, ConjunctionOfAcceptingLoops) {
    auto a = std::make_shared<ExplicitAba>(kDom, 5, 2);
    a->set_accepting(3, true);
    a->set_accepting(4, true);
    for (std::size_t l = 0; l < kDom.size(); ++l) {
        a->set_rho(2, l, PosBool::conj(PosBool::var(3), PosBool::var(4)));
        a->set_rho(3, l, PosBool::var(3));
        // state 4 dies on the letter with index 3
        a->set_rho(4, l, l == 3 ? PosBool::f() : PosBool::var(4));
    }
    MhNba mh(a);
    EXPECT_TRUE(accepts_lasso(mh, word({0}, {1, 2})));
    EXPECT_FALSE(accepts_lasso(mh, word({0}, {1, 3})));
}

TEST(MiyanoHayashi, PairCountBound) {
    Rng rng(14);
    for (int i = 0; i < 30; ++i) {
        std::size_t n = static_cast<std::size_t>(uniform(rng, 3, 6));
        auto a = random_aba(rng, n, kDom);
        MhNba mh(a);
        std::size_t bound = 1;
        for (std::size_t k = 0; k < n; ++k) bound *= 3;
        EXPECT_LE(mh.materialize(), bound + 2);
    }
}

TEST(Complement, FlipsMembership) {
    Rng rng(15);
    for (int i = 0; i < 100; ++i) {
        auto a = random_aba(rng, static_cast<std::size_t>(uniform(rng, 3, 6)), kDom);
        ComplementAba c(a);
        std::size_t n = a->num_states();
        EXPECT_LE(c.num_states(), 2 * n * n + 2);
        for (int j = 0; j < 20; ++j) {
            auto w = random_word(rng, kDom, 3, 3);
            ASSERT_NE(accepts_lasso(c, w), game_accepts(*a, w));
        }
    }
}

TEST(Complement, OfUniversalIsEmpty) {
    auto a = universal_aba();
    auto c = std::make_shared<ComplementAba>(a);
    Rng rng(16);
    for (int j = 0; j < 20; ++j) EXPECT_FALSE(accepts_lasso(*c, random_word(rng, kDom, 3, 3)));
    EXPECT_TRUE(is_empty(MhNba(c)).empty);
}

TEST(Complement, TwiceKeepsTheLanguage) {
    Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        auto a = random_aba(rng, static_cast<std::size_t>(uniform(rng, 3, 4)), kDom);
        auto c = std::make_shared<ComplementAba>(a);
        ComplementAba cc(c);
        for (int j = 0; j < 10; ++j) {
            auto w = random_word(rng, kDom, 2, 2);
            ASSERT_EQ(accepts_lasso(cc, w), accepts_lasso(*a, w));
        }
    }
}

TEST(Emptiness, NoAcceptingStateReachable) {
    auto a = std::make_shared<ExplicitAba>(kDom, 3, 2);
    for (std::size_t l = 0; l < kDom.size(); ++l) a->set_rho(2, l, PosBool::var(2));
    EXPECT_TRUE(is_empty(*a).empty);
}

TEST(Emptiness, AcceptingSelfLoop) {
    auto a = universal_aba();
    EmptinessResult r = is_empty(*a);
    ASSERT_FALSE(r.empty);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(r.witness->stem.empty());
    EXPECT_EQ(r.witness->period.size(), 1u);
}

TEST(Emptiness, AcceptingStateOffEveryCycle) {
    auto a = std::make_shared<ExplicitAba>(kDom, 4, 2);
    a->set_accepting(2, true);
    for (std::size_t l = 0; l < kDom.size(); ++l) {
        a->set_rho(2, l, PosBool::var(3));
        a->set_rho(3, l, PosBool::var(3));
    }
    EXPECT_TRUE(is_empty(*a).empty);
}

TEST(Emptiness, WitnessIsAccepted) {
    Rng rng(18);
    int nonempty = 0;
    for (int i = 0; i < 100; ++i) {
        auto a = random_aba(rng, static_cast<std::size_t>(uniform(rng, 3, 6)), kDom);
        MhNba mh(a);
        EmptinessResult r = is_empty(mh);
        if (r.empty) {
            for (int j = 0; j < 10; ++j) EXPECT_FALSE(game_accepts(*a, random_word(rng, kDom, 3, 3)));
            continue;
        }
        ++nonempty;
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_TRUE(accepts_lasso(mh, *r.witness));
        EXPECT_TRUE(game_accepts(*a, *r.witness));
    }
    EXPECT_GT(nonempty, 0);
}

TEST(Emptiness, RejectsConjunctions) {
    auto a = std::make_shared<ExplicitAba>(kDom, 4, 2);
    for (std::size_t l = 0; l < kDom.size(); ++l) {
        a->set_rho(2, l, PosBool::conj(PosBool::var(2), PosBool::var(3)));
        a->set_rho(3, l, PosBool::var(3));
    }
    EXPECT_THROW(is_empty(*a), std::invalid_argument);
}

TEST(Dot, IsValid) {
    Rng rng(19);
    auto a = random_aba(rng, 5, kDom);
    std::string err;
    EXPECT_TRUE(valid_dot(to_dot(*a), &err)) << err;
    EXPECT_TRUE(valid_dot(to_dot(MhNba(a)), &err)) << err;
}
