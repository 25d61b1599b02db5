#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hqss/ffield.hpp"
#include "hqss/rng.hpp"

using namespace hqss;
using namespace hqss::ff;

TEST(Field, RejectsNonPrimeOrSmall) {
    for (std::uint32_t p : {0u, 1u, 2u, 3u, 4u, 9u, 15u, 121u}) EXPECT_THROW(FieldCtx{p}, Error);
    try {
        FieldCtx f(9);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotPrime);
    }
}

TEST(Field, PrimitiveIsSmallestGenerator) {
    EXPECT_EQ(FieldCtx(5).primitive(), 2u);
    EXPECT_EQ(FieldCtx(7).primitive(), 3u);
    EXPECT_EQ(FieldCtx(11).primitive(), 2u);
    EXPECT_EQ(FieldCtx(23).primitive(), 5u);
    for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
        FieldCtx f(p);
        // order of c is exactly p-1, smaller candidates are not generators
        for (Elem g = 2; g <= f.primitive(); ++g) {
            std::uint32_t order = 1;
            for (Elem v = g; v != 1; v = f.mul(v, g)) ++order;
            EXPECT_EQ(order == p - 1, g == f.primitive()) << "p=" << p << " g=" << g;
        }
    }
}

TEST(Field, TablesAndInverses) {
    for (std::uint32_t p : {5u, 7u, 11u, 13u, 101u}) {
        FieldCtx f(p);
        for (Elem a = 1; a < p; ++a) {
            EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
            EXPECT_EQ(f.exp(f.discreteLog(a)), a);
            EXPECT_EQ(f.pow(a, p - 1), 1u);
            EXPECT_EQ(f.div(a, a), 1u);
            EXPECT_EQ(f.add(a, f.neg(a)), 0u);
        }
        EXPECT_EQ(f.exp(-1), f.inv(f.primitive()));
        EXPECT_THROW(f.inv(0), Error);
        EXPECT_THROW(f.discreteLog(0), Error);
        EXPECT_EQ(f.normalize(-1), p - 1);
        EXPECT_EQ(f.normalize(static_cast<long long>(p) * 3 + 2), 2u);
    }
}

TEST(Field, ErrorCodes) {
    FieldCtx f(11);
    try {
        f.inv(0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ZeroInverse);
    }
    try {
        f.discreteLog(0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ZeroArgument);
    }
}

namespace {

// Every solution of a.x = b by enumeration.
std::vector<FVector> bruteSolutions(const FMatrix& a, const FVector& b, const FieldCtx& f, std::size_t n) {
    std::vector<FVector> sols;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= f.p();
    for (std::uint64_t t = 0; t < total; ++t) {
        FVector x(n);
        auto v = t;
        for (auto& xi : x) {
            xi = static_cast<Elem>(v % f.p());
            v /= f.p();
        }
        bool ok = true;
        for (std::size_t r = 0; r < a.size() && ok; ++r) ok = f.dot(a[r], x) == b[r];
        if (ok) sols.push_back(x);
    }
    return sols;
}

} // namespace

TEST(Field, SolverAgreesWithEnumeration) {
    Rng rng(7);
    for (std::uint32_t p : {5u, 7u}) {
        FieldCtx f(p);
        for (int trial = 0; trial < 300; ++trial) {
            std::size_t rows = 1 + rng.uniform(4), cols = 1 + rng.uniform(4);
            FMatrix a(rows, FVector(cols));
            FVector b(rows);
            // sparse systems hit rank-deficient and inconsistent cases often
            for (auto& r : a)
                for (auto& x : r) x = rng.uniform(3) == 0 ? 0 : rng.uniform(p);
            for (auto& x : b) x = rng.uniform(p);
            auto got = solveLinear(a, b, f);
            auto sols = bruteSolutions(a, b, f, cols);
            ASSERT_EQ(got.has_value(), !sols.empty());
            if (got) {
                for (std::size_t r = 0; r < rows; ++r) EXPECT_EQ(f.dot(a[r], *got), b[r]);
                EXPECT_LE(rank(a, f), std::min(rows, cols));
            }
        }
    }
}

TEST(Field, FreeVariablesAreZero) {
    FieldCtx f(7);
    FMatrix a{{1, 2, 3}};
    auto x = solveLinear(a, {4}, f);
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, (FVector{4, 0, 0}));
}

TEST(Field, RankMatchesEnumeratedSolutionCount) {
    // homogeneous solution space has p^(n - rank) elements
    Rng rng(3);
    FieldCtx f(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t rows = 1 + rng.uniform(4), cols = 1 + rng.uniform(4);
        FMatrix a(rows, FVector(cols));
        for (auto& r : a)
            for (auto& x : r) x = rng.uniform(2) ? 0 : rng.uniform(5);
        auto sols = bruteSolutions(a, FVector(rows, 0), f, cols);
        std::size_t expect = 1;
        for (std::size_t i = 0; i < cols - rank(a, f); ++i) expect *= 5;
        EXPECT_EQ(sols.size(), expect);
    }
}

TEST(Affine, ReproducesPrintedCoefficients) {
    FieldCtx f(11);
    FVector k0(6, 0);
    auto mu = solveAffineCombination(fixtures::pointsOf(fixtures::ninePoints(), {1, 2, 3, 4}, f), k0, f);
    ASSERT_TRUE(mu);
    EXPECT_EQ(*mu, (FVector{4, 8, 7, 6, 9}));
    mu = solveAffineCombination(fixtures::pointsOf(fixtures::ninePoints(), {1, 2, 6, 7}, f), k0, f);
    ASSERT_TRUE(mu);
    EXPECT_EQ(*mu, (FVector{4, 4, 6, 1, 10, 9}));
    mu = solveAffineCombination(fixtures::pointsOf(fixtures::eightPoints(), {1, 2, 4}, f), k0, f);
    ASSERT_TRUE(mu);
    EXPECT_EQ(*mu, normalized({-1, -6, 2, -5}, f));
}

TEST(Affine, FlagsInconsistentPrintedRows) {
    FieldCtx f(11);
    FVector k0(6, 0);
    for (const auto& [set, printed] : fixtures::printedNineMu()) {
        auto pts = fixtures::pointsOf(fixtures::ninePoints(), fixtures::digitsOf(set), f);
        EXPECT_EQ(isAffineCombination(pts, normalized(printed, f), k0, f), set != "456") << set;
    }
    for (const auto& [set, printed] : fixtures::printedEightMu()) {
        auto pts = fixtures::pointsOf(fixtures::eightPoints(), fixtures::digitsOf(set), f);
        EXPECT_EQ(isAffineCombination(pts, normalized(printed, f), k0, f), set == "124") << set;
    }
    // 136 has no affine combination at all; 235 has one that differs from the printed row
    EXPECT_FALSE(solveAffineCombination(fixtures::pointsOf(fixtures::eightPoints(), {1, 3, 6}, f), k0, f));
    auto mu = solveAffineCombination(fixtures::pointsOf(fixtures::eightPoints(), {2, 3, 5}, f), k0, f);
    ASSERT_TRUE(mu);
    EXPECT_EQ(*mu, (FVector{7, 8, 2, 6}));
}

TEST(Affine, SolutionsAreAffine) {
    Rng rng(11);
    FieldCtx f(13);
    for (int t = 0; t < 200; ++t) {
        std::size_t m = 2 + rng.uniform(4), n = 1 + rng.uniform(6);
        std::vector<FVector> pts(n, FVector(m));
        for (auto& p : pts)
            for (auto& x : p) x = rng.uniform(13);
        FVector target(m);
        for (auto& x : target) x = rng.uniform(13);
        auto mu = solveAffineCombination(pts, target, f);
        if (mu) {
            EXPECT_TRUE(isAffineCombination(pts, *mu, target, f));
        }
    }
    EXPECT_THROW(solveAffineCombination({{1, 2}, {1}}, {0, 0}, f), Error);
}
