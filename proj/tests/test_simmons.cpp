#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "hqss/simmons.hpp"

using namespace hqss;
using namespace hqss::css;
using access::Participant;
using access::ParticipantSet;

namespace {

FVector randomRow(std::size_t m, std::uint32_t p, Rng& rng) {
    FVector a(m, 0);
    for (std::size_t i = 0; i + 1 < m; ++i) a[i] = rng.uniform(p);
    a[m - 1] = 1;
    return a;
}

} // namespace

TEST(Geometry, Collinearity) {
    FieldCtx f(11);
    EXPECT_TRUE(collinear({0, 0, 0}, {1, 2, 0}, {2, 4, 0}, f));
    EXPECT_TRUE(collinear({1, 1, 0}, {1, 1, 0}, {3, 5, 0}, f));
    EXPECT_FALSE(collinear({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, f));
}

TEST(Geometry, DealRejectsBadDirection) {
    FieldCtx f(11);
    auto s = fixtures::toSetup(fixtures::ninePoints(), "{1234,1267,456}", f);
    try {
        simmonsDeal(s, 3, {1, 2, 3, 4, 5, 2}, f);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BadDirection);
    }
}

TEST(WorkedNinePoint, RecoversOnConsistentEdgesOnly) {
    FieldCtx f(11);
    auto s = fixtures::toSetup(fixtures::ninePoints(), "{1234,1267,456}", f);
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        Elem k = rng.uniform(11);
        auto lambda = simmonsDeal(s, k, randomRow(6, 11, rng), f);
        EXPECT_EQ(simmonsRecover(s, {1, 2, 3, 4}, lambda, f), k);
        EXPECT_EQ(simmonsRecover(s, {1, 2, 6, 7}, lambda, f), k);
        EXPECT_FALSE(simmonsRecover(s, {4, 5, 6}, lambda, f));
    }
    auto c = checkSimmons(s, f);
    EXPECT_TRUE(c.inVI);
    EXPECT_EQ(c.authorizedFailures, (std::vector<ParticipantSet>{{4, 5, 6}}));
    std::set<ParticipantSet> leaks(c.unauthorizedSolvable.begin(), c.unauthorizedSolvable.end());
    std::set<ParticipantSet> expect{{1, 2, 3, 5, 6}, {1, 2, 4, 5, 7}, {1, 3, 4, 5, 7}, {1, 3, 4, 6, 7}, {1, 3, 5, 6, 7}};
    EXPECT_EQ(leaks, expect);
    EXPECT_FALSE(c.ok());
}

TEST(WorkedEightPoint, FlagsUnsolvableEdgeAndLeaks) {
    FieldCtx f(11);
    auto s = fixtures::toSetup(fixtures::eightPoints(), "{124,136,235}", f);
    auto c = checkSimmons(s, f);
    EXPECT_EQ(c.authorizedFailures, (std::vector<ParticipantSet>{{1, 3, 6}}));
    std::set<ParticipantSet> leaks(c.unauthorizedSolvable.begin(), c.unauthorizedSolvable.end());
    EXPECT_EQ(leaks, (std::set<ParticipantSet>{{1, 3, 4, 5}, {2, 3, 4, 6}}));
    Rng rng(8);
    Elem k = 6;
    auto lambda = simmonsDeal(s, k, randomRow(6, 11, rng), f);
    EXPECT_EQ(simmonsRecover(s, {1, 2, 4}, lambda, f), k);
    EXPECT_EQ(simmonsRecover(s, {2, 3, 5}, lambda, f), k);
}

TEST(Setup, StrictSucceedsOnSmallStructures) {
    FieldCtx f(11);
    Rng rng(1);
    for (auto [text, m] : {std::pair{"{123}", std::size_t{3}}, std::pair{"{123,145}", std::size_t{4}},
                           std::pair{"{1234,156}", std::size_t{5}}}) {
        auto structure = access::parseStructure(text);
        auto s = simmonsSetup(structure, {}, m, f, rng);
        EXPECT_TRUE(checkSimmons(s, f).ok()) << text;
        EXPECT_EQ(countCollinear(s, f), 0u);
        for (int t = 0; t < 20; ++t) {
            Elem k = rng.uniform(11);
            auto lambda = simmonsDeal(s, k, randomRow(m, 11, rng), f);
            for (const auto& e : structure.edges) EXPECT_EQ(simmonsRecover(s, e, lambda, f), k) << text;
            for (const auto& u : access::maximalUnauthorized(structure))
                EXPECT_FALSE(simmonsRecover(s, u, lambda, f)) << text;
        }
    }
}

TEST(Setup, TwoPointEdgesBreakGeneralPosition) {
    // K0 on the line through two points is a collinear triple
    FieldCtx f(11);
    Rng rng(1);
    EXPECT_THROW(simmonsSetup(access::parseStructure("{12,13,23}"), {}, 3, f, rng, SetupPolicy::Strict, 200), Error);
}

TEST(Setup, WorkedStructureHasNoStrictConfiguration) {
    // the two single-point pairwise intersections {4} and {6} force a leak
    FieldCtx f(11);
    Rng rng(6);
    try {
        simmonsSetup(access::parseStructure("{1234,1267,456}"), {{2, 2}, {7, 2}}, 6, f, rng, SetupPolicy::Strict, 600);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ExhaustedAttempts);
    }
}

TEST(Setup, StrictSixBlockCycleWithDoubledPointsIsExhausted) {
    // any point set solving the three edges with single points for 1 and 2 also solves {3,4,5,6}
    FieldCtx f(11);
    Rng rng(2);
    auto structure = access::parseStructure("{124,136,235}");
    try {
        simmonsSetup(structure, {{3, 2}, {4, 2}}, 6, f, rng, SetupPolicy::Strict, 300);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ExhaustedAttempts);
    }
    auto relaxed = simmonsSetup(structure, {{3, 2}, {4, 2}}, 6, f, rng, SetupPolicy::AuthorizedOnly, 2000);
    auto c = checkSimmons(relaxed, f);
    EXPECT_TRUE(c.ok(SetupPolicy::AuthorizedOnly));
    EXPECT_FALSE(c.unauthorizedSolvable.empty());
}
