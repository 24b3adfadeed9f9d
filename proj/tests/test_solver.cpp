#include <algorithm>

#include <gtest/gtest.h>

#include "esc/solver.hpp"
#include "oracle.hpp"

using namespace esc;

TEST(Classify, Residues)
{
    const auto p5 = classify(5);
    EXPECT_EQ(p5.mod(4), 1);
    EXPECT_EQ(p5.mod(6), 5);
    EXPECT_EQ(p5.mod(8), 5);
    EXPECT_EQ(p5.mod(24), 5);
    EXPECT_EQ(p5.unit_digit, 5);

    EXPECT_EQ(classify(73).mod(24), 1);
    EXPECT_EQ(classify(73).mod(840), 73);
    EXPECT_EQ(classify(1009).mod(840), 169);
    EXPECT_THROW((void)classify(1), DomainError);
}

TEST(Classify, ResiduesAreConsistent)
{
    for (Int n = 2; n < 5000; ++n) {
        const auto p = classify(n);
        ASSERT_EQ(p.mod(24) % 8, p.mod(8));
        ASSERT_EQ(p.mod(24) % 6, p.mod(6));
        ASSERT_EQ(p.mod(840) % 24, p.mod(24));
        ASSERT_EQ(p.mod(10), p.unit_digit);
        ASSERT_EQ(p.mod(6) % 2, p.mod(2));
        ASSERT_EQ(p.mod(6) % 3, p.mod(3));
    }
}

TEST(MatchEq5, Examples)
{
    const auto p5 = match_eq5(5, 1);
    ASSERT_TRUE(p5);
    EXPECT_EQ(p5->k, Int{1});
    EXPECT_EQ(p5->a, Int{1});
    EXPECT_EQ(p5->b, Int{2});

    const auto p73 = match_eq5(73, 2);
    ASSERT_TRUE(p73);
    EXPECT_EQ(p73->k, Int{2});
    EXPECT_EQ(p73->a, Int{2});
    EXPECT_EQ(p73->b, Int{5});

    // 16k + 1 for k = 1..5 is 17, 33, 49, 65, 81: no factor pair = -1 (mod 4k)
    EXPECT_FALSE(match_eq5(4, 5));
    EXPECT_FALSE(match_eq5(73, 1));
}

TEST(MatchEq5, Soundness)
{
    for (Int n = 2; n <= 3000; ++n) {
        if (auto p = match_eq5(n, 20)) { ASSERT_EQ(eq5_general(*p->k, *p->a, *p->b).n(), n); }
    }
}

TEST(MatchEq8, Examples)
{
    const auto p15 = match_eq8(15);
    ASSERT_TRUE(p15);
    EXPECT_EQ(p15->c1, Int{1});
    EXPECT_EQ(p15->c2, Int{1});
    const auto p35 = match_eq8(35);
    ASSERT_TRUE(p35);
    EXPECT_EQ(p35->c1, Int{1});
    EXPECT_EQ(p35->c2, Int{2});
    EXPECT_FALSE(match_eq8(7));
    EXPECT_FALSE(match_eq8(21)); // 3 * 7, neither factor is 1 mod 4
    for (Int n = 2; n <= 3000; ++n) {
        if (auto p = match_eq8(n)) { ASSERT_EQ(eq8(*p->c1, *p->c2).n(), n); }
    }
}

TEST(CompositeReduce, Examples)
{
    EXPECT_EQ(composite_reduce(25), (CompositeSplit{5, 5}));
    EXPECT_EQ(composite_reduce(49), (CompositeSplit{7, 7}));
    EXPECT_FALSE(composite_reduce(7));
    EXPECT_FALSE(composite_reduce(73 * 97)); // both factors are 1 mod 24
    EXPECT_EQ(composite_reduce(73 * 5), (CompositeSplit{5, 73}));
}

TEST(OracleSearch, PinnedLists)
{
    EXPECT_EQ(oracle_search(2), (std::vector<UnitTriple>{{1, 2, 2}}));
    EXPECT_EQ(oracle_search(3), (std::vector<UnitTriple>{{1, 4, 12}, {1, 6, 6}, {2, 2, 3}}));
    EXPECT_EQ(oracle_search(5), (std::vector<UnitTriple>{{2, 4, 20}, {2, 5, 10}}));
}

TEST(OracleSearch, FirstOnlyAndXBound)
{
    EXPECT_EQ(oracle_search(5, {}, OracleScope::first), (std::vector<UnitTriple>{{2, 4, 20}}));
    SolveConfig cfg;
    cfg.oracle_x_max = 1;
    EXPECT_EQ(oracle_search(3, cfg), (std::vector<UnitTriple>{{1, 4, 12}, {1, 6, 6}}));
    EXPECT_TRUE(oracle_search(5, cfg).empty());
}

TEST(OracleSearch, StrategiesAgree)
{
    for (Int n = 2; n <= 300; ++n) {
        ASSERT_EQ(oracle_search(n, {}, OracleScope::all, PairEnumeration::divisor),
                  oracle_search(n, {}, OracleScope::all, PairEnumeration::linear))
            << to_string(n);
    }
}

TEST(OracleSearch, MatchesNaivePolynomialSearch)
{
    for (long long n = 2; n <= 60; ++n) ASSERT_EQ(oracle_search(n), ref::naive_solutions(n)) << n;
}

TEST(Solve, Examples)
{
    const auto d6 = solve(6);
    EXPECT_EQ(d6.method(), Method::trivial_small_factor);
    EXPECT_EQ(d6.triple(), (UnitTriple{6, 6, 3}));
    EXPECT_EQ(d6.canonical(), (UnitTriple{3, 6, 6}));

    const auto d5 = solve(5);
    EXPECT_EQ(d5.method(), Method::mod3_identity);
    EXPECT_EQ(d5.canonical(), (UnitTriple{2, 5, 10}));

    const auto d73 = solve(73);
    EXPECT_EQ(d73.method(), Method::match_eq5);
    EXPECT_EQ(d73.triple(), (UnitTriple{20, 292, 730}));

    EXPECT_EQ(solve(25).method(), Method::family_8k_minus_3);
    EXPECT_EQ(solve(49).method(), Method::family_4k_minus_1);
    EXPECT_EQ(solve(73 * 97).method(), Method::match_eq5);
    EXPECT_EQ(solve(21 * 21 * 21).method(), Method::trivial_small_factor);
}

TEST(Solve, OracleFallback)
{
    // 409 escapes match_eq5 for every k <= 100
    EXPECT_FALSE(match_eq5(409, 100));
    const auto d = solve(409);
    EXPECT_EQ(d.method(), Method::oracle_search);
    EXPECT_TRUE(ref::polynomial_holds(409, d.triple()));
    EXPECT_EQ(d.triple(), oracle_search(409).front());
}

TEST(Solve, MethodOrderAndUnsolved)
{
    SolveConfig cfg;
    cfg.method_order = {Method::mod3_identity};
    EXPECT_THROW((void)solve(7, cfg), UnsolvedError);
    try {
        (void)solve(7, cfg);
    } catch (const UnsolvedError& e) {
        EXPECT_EQ(e.n(), 7);
    }

    cfg.method_order = {Method::family_6k_minus_1, Method::mod3_identity};
    EXPECT_EQ(solve(5, cfg).method(), Method::family_6k_minus_1);

    cfg.method_order = {Method::eq7};
    EXPECT_THROW((void)solve(5, cfg), DomainError);

    cfg.method_order = {Method::oracle_search};
    cfg.oracle_x_max = 1;
    EXPECT_THROW((void)solve(5, cfg), UnsolvedError);
    EXPECT_THROW((void)solve(1), DomainError);
}

TEST(Solve, Deterministic)
{
    for (Int n = 2; n <= 2000; n += 7) {
        const auto a = solve(n);
        const auto b = solve(n);
        ASSERT_EQ(a.triple(), b.triple());
        ASSERT_EQ(a.method(), b.method());
        ASSERT_EQ(a.params(), b.params());
    }
}

TEST(Solve, TotalOnSmallRange)
{
    for (Int n = 2; n <= 20000; ++n) {
        const auto d = solve(n);
        ASSERT_TRUE(ref::polynomial_holds(n, d.triple())) << to_string(n);
        if (n % 24 != 1) {
            ASSERT_NE(d.method(), Method::match_eq5) << to_string(n);
            ASSERT_NE(d.method(), Method::oracle_search) << to_string(n);
        }
    }
}

TEST(SolveAll, Examples)
{
    const auto five = solve_all(5);
    ASSERT_EQ(five.size(), 2u);
    EXPECT_EQ(five[0].canonical(), (UnitTriple{2, 4, 20}));
    EXPECT_EQ(five[0].method(), Method::family_8k_minus_3);
    EXPECT_EQ(five[1].canonical(), (UnitTriple{2, 5, 10}));
    EXPECT_EQ(five[1].method(), Method::mod3_identity);

    const auto three = solve_all(3);
    auto has = [](const std::vector<Decomposition>& v, UnitTriple t, Method m) {
        return std::any_of(v.begin(), v.end(),
                           [&](const Decomposition& d) { return d.canonical() == t && d.method() == m; });
    };
    EXPECT_TRUE(has(three, {1, 6, 6}, Method::family_4k_minus_1));
    EXPECT_TRUE(has(three, {2, 2, 3}, Method::trivial_small_factor));
    EXPECT_EQ(std::count_if(three.begin(), three.end(), [](const Decomposition& d) { return d.canonical() == UnitTriple{1, 6, 6}; }), 1);

    const auto fifteen = solve_all(15);
    EXPECT_TRUE(has(fifteen, {6, 20, 20}, Method::match_eq8));
    EXPECT_TRUE(has(fifteen, {6, 15, 30}, Method::composite_reduction));
}

TEST(SolveAll, DistinctSortedAndInsideOracle)
{
    for (Int n = 2; n <= 150; ++n) {
        const auto all = solve_all(n);
        const auto truth = oracle_search(n);
        ASSERT_FALSE(all.empty());
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (i > 0) { ASSERT_LT(all[i - 1].canonical(), all[i].canonical()); }
            ASSERT_TRUE(std::binary_search(truth.begin(), truth.end(), all[i].canonical())) << to_string(n);
        }
    }
}

TEST(Greedy, Examples)
{
    EXPECT_EQ(greedy_expand(4, 5).terms, (std::vector<Int>{2, 4, 20}));
    EXPECT_EQ(greedy_expand(4, 17).terms, (std::vector<Int>{5, 29, 1233, 3039345}));
    EXPECT_EQ(greedy_expand(4, 4).terms, (std::vector<Int>{1}));
    EXPECT_EQ(greedy_expand(4, 2).terms, (std::vector<Int>{1, 1}));
    EXPECT_EQ(greedy_expand(4, 3).terms, (std::vector<Int>{1, 3}));
    EXPECT_THROW((void)greedy_expand(4, 17, 3), MaxTermsExceeded);
    EXPECT_THROW((void)greedy_expand(0, 17), DomainError);
    EXPECT_THROW((void)greedy_expand(4, 17, 0), DomainError);
}

TEST(Greedy, Properties)
{
    for (Int n = 2; n <= 3000; ++n) {
        const auto g = greedy_expand(4, n);
        ASSERT_LE(g.terms.size(), 4u);
        if (n % 24 != 1 && n % 24 != 17) { ASSERT_LE(g.terms.size(), 3u) << to_string(n); }

        // exact sum, strictly decreasing remainder numerators
        ref::Big num = 0, den = 1;
        for (Int t : g.terms) {
            num = num * ref::big(t) + den;
            den *= ref::big(t);
        }
        ASSERT_EQ(num * n, den * 4);
        Int prev = 4 / gcd(4, n);
        for (Int r : g.remainder_numerators) {
            ASSERT_LT(r, prev);
            prev = r;
        }
        if (n > 4) {
            ASSERT_EQ(std::adjacent_find(g.terms.begin(), g.terms.end(), std::greater_equal<>()), g.terms.end());
        }
    }
}
