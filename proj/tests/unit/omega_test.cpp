#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "hyperpdl/formula_automata.hpp"
#include "hyperpdl/omega.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(HYPERPDL_DATA_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// membership of random lassos: reference automaton, oracle and ABA agree
void check_spec(const std::string& text, std::uint64_t seed, bool expect_both = true) {
    auto spec = parse_omega_spec(text);
    auto f = compile_omega(spec);
    WorldInterp w = WorldInterp::prop_sets(spec.sig.aps.size());
    BuildOptions bo;
    bo.sig = &spec.sig;
    auto aba = build_aba(to_nnf(f), spec.arity, w, nullptr, bo);
    Rng rng(seed);
    int programs = static_cast<int>(spec.sig.programs.size());
    std::size_t members = 0, cases = 150;
    for (std::size_t i = 0; i < cases; ++i) {
        std::vector<PathLasso> ls;
        for (std::size_t k = 0; k < spec.arity; ++k)
            ls.push_back(random_trace(rng, spec.sig.aps.size(), programs, static_cast<std::size_t>(uniform(rng, 0, 2)),
                                      static_cast<std::size_t>(uniform(rng, 1, 3))));
        auto pa = align_lassos(ls);
        auto word = encode(pa);
        bool ref = omega_spec_accepts(spec, word);
        members += ref;
        ASSERT_EQ(eval_formula(pa, 0, f, w).value, ref) << text;
        ASSERT_EQ(accepts_lasso(*aba, word), ref) << text;
    }
    if (expect_both) {
        EXPECT_GT(members, 0u) << text;
        EXPECT_LT(members, cases) << text;
    }
}

}  // namespace

TEST(OmegaParse, DataFile) {
    auto spec = parse_omega_spec(slurp("even_positions.omega"));
    EXPECT_EQ(spec.arity, 1u);
    ASSERT_EQ(spec.pairs.size(), 1u);
    EXPECT_EQ(spec.pairs[0].stem->kind, Regex::Kind::Eps);
    EXPECT_EQ(spec.pairs[0].loop->kind, Regex::Kind::Concat);
}

TEST(OmegaParse, SymbolSets) {
    Signature sig;
    sig.aps = {"a", "b"};
    sig.programs = {"s", "t"};
    auto r = parse_regex("[{a b},{}]|(s,_)", sig, 2);
    ASSERT_EQ(r->kind, Regex::Kind::Sym);
    EXPECT_EQ(r->sym.sets, (std::vector<std::uint64_t>{3, 0}));
    EXPECT_EQ(r->sym.tup.entries, (std::vector<int>{0, kWildcard}));
    EXPECT_EQ(print_regex(*parse_regex(print_regex(*r, sig), sig, 2), sig), print_regex(*r, sig));
}

TEST(OmegaParse, Errors) {
    EXPECT_THROW(parse_omega_spec("aps a\nprograms s\narity 1\npair:\n  stem: eps\n"), OmegaError);
    EXPECT_THROW(parse_omega_spec("aps a\nprograms s\narity 1\npair:\n  stem: eps\n  loop: [{c}]|(s)\n"),
                 OmegaError);
    EXPECT_THROW(parse_omega_spec("aps a\nprograms s\narity 2\npair:\n  stem: eps\n  loop: [{a}]|(s)\n"),
                 OmegaError);
}

TEST(OmegaCompile, NullableLoopIsRejected) {
    EXPECT_THROW(parse_omega_spec("aps a\nprograms s\narity 1\npair:\n  stem: eps\n  loop: ([{a}]|(s))*\n"),
                 OmegaError);
    OmegaRegularSpec spec;
    spec.sig.aps = {"a"};
    spec.sig.programs = {"s"};
    spec.pairs.push_back({re_eps(), re_star(re_sym(OmegaSymbol{{1}, TupleSym{{0}}}))});
    EXPECT_THROW(compile_omega(spec), OmegaError);
}

TEST(OmegaCompile, SinglePair) {
    auto spec = parse_omega_spec(slurp("single_pair.omega"));
    auto f = compile_omega(spec);
    auto expected = parse_formula("<eps> delta ({a@p1}? ; (s))", spec.sig, omega_path_names(1));
    EXPECT_TRUE(equal(*f, *expected)) << print(*f, spec.sig);
}

TEST(OmegaCompile, SymbolTestIsExact) {
    Signature sig;
    sig.aps = {"a", "b"};
    sig.programs = {"s"};
    OmegaSymbol sym{{1}, TupleSym{{0}}};
    auto t = symbol_test(sym, sig);
    auto expected = parse_formula("a@p1 & !b@p1", sig, omega_path_names(1));
    EXPECT_TRUE(equal(*t, *expected)) << print(*t, sig);
}

TEST(OmegaCompile, EvenPositions) { check_spec(slurp("even_positions.omega"), 60); }

TEST(OmegaCompile, StemThenConstant) {
    check_spec("aps a\nprograms s t\narity 1\npair:\n  stem: [{}]|(t) [{}]|(t)*\n  loop: [{a}]|(s)\n", 61);
}

TEST(OmegaCompile, UnionInTheLoop) {
    check_spec("aps a\nprograms s t\narity 1\npair:\n  stem: eps\n  loop: [{a}]|(s) + [{}]|(t) [{a}]|(_)\n", 62);
}

TEST(OmegaCompile, TwoPairs) {
    check_spec("aps a\nprograms s\narity 1\n"
               "pair:\n  stem: eps\n  loop: [{a}]|(s)\n"
               "pair:\n  stem: [{a}]|(s)\n  loop: [{}]|(s)\n",
               63);
}

TEST(OmegaCompile, TwoPathsInLockstep) {
    check_spec("aps a\nprograms s\narity 2\npair:\n  stem: eps\n  loop: [{a},{}]|(s,s) + [{},{a}]|(_,s)\n", 64);
}

TEST(OmegaCompile, StarredStemWithUnion) {
    check_spec("aps a b\nprograms s\narity 1\npair:\n  stem: ([{a}]|(s) + [{b}]|(s))*\n  loop: [{a b}]|(s) [{}]|(s)\n",
               65, false);
}
