#include <gtest/gtest.h>

#include "hqss/verify.hpp"

using namespace hqss;
using namespace hqss::css;
using access::ClassId;

TEST(ChiSquare, TailProbabilities) {
    EXPECT_NEAR(chiSquarePValue(0.0, 3), 1.0, 1e-12);
    // 3.841 is the 5% point at one degree of freedom
    EXPECT_NEAR(chiSquarePValue(3.841458820694124, 1), 0.05, 1e-9);
    EXPECT_LT(chiSquarePValue(100, 4), 1e-15);
    EXPECT_EQ(chiSquarePValue(5, 0), 1.0);
}

TEST(ChiSquare, IndependenceTable) {
    EXPECT_NEAR(independencePValue({{50, 50}, {50, 50}}), 1.0, 1e-12);
    EXPECT_LT(independencePValue({{100, 0}, {0, 100}}), 1e-10);
    // a constant column carries no evidence
    EXPECT_EQ(independencePValue({{10, 0}, {20, 0}}), 1.0);
}

TEST(Exhaustive, SmallClassesArePerfect) {
    for (auto c : {ClassId::G5, ClassId::G7}) {
        auto d = buildScheme(c, std::vector<std::size_t>(access::blockCount(c), 1), 5);
        auto r = verifyPerfect(d);
        EXPECT_TRUE(r.exhaustive);
        EXPECT_TRUE(r.recoverOk) << access::className(c);
        EXPECT_TRUE(r.secrecyOk) << access::className(c);
        EXPECT_EQ(r.recoveryFailures, 0u);
        std::uint64_t space = 1;
        for (std::size_t i = 0; i < d.secretLength + randomnessCount(d); ++i) space *= 5;
        EXPECT_EQ(r.transcripts, space);
    }
}

TEST(Exhaustive, RaisedThresholdBreaksRecovery) {
    auto d = buildScheme(ClassId::G5, std::vector<std::size_t>(3, 1), 5);
    d.root.threshold = 3;
    finalize(d);
    auto r = verifyPerfect(d);
    EXPECT_FALSE(r.recoverOk);
    EXPECT_FALSE(r.findings.empty());
}

TEST(Exhaustive, ThresholdOneLeaks) {
    // a constant polynomial hands every share the secret
    auto d = buildScheme(ClassId::G5, std::vector<std::size_t>(3, 1), 5);
    d.root.threshold = 1;
    finalize(d);
    auto r = verifyPerfect(d);
    EXPECT_TRUE(r.recoverOk);
    EXPECT_FALSE(r.secrecyOk);
}

TEST(Sampled, DefaultG9Passes) {
    auto d = buildScheme(ClassId::G9, std::vector<std::size_t>(6, 1), 11);
    VerifyOptions opt;
    opt.samples = 5000;
    auto r = verifyPerfect(d, opt);
    EXPECT_FALSE(r.exhaustive);
    EXPECT_TRUE(r.recoverOk);
    EXPECT_TRUE(r.secrecyOk);
    EXPECT_GT(r.chiTests, 0u);
}

TEST(Sampled, GeometricLeakIsFound) {
    BuildOptions b;
    b.variant = Variant::Geometric;
    auto d = buildScheme(ClassId::G9, std::vector<std::size_t>(6, 1), 11, b);
    VerifyOptions opt;
    opt.samples = 5000;
    auto r = verifyPerfect(d, opt);
    EXPECT_TRUE(r.recoverOk);
    EXPECT_FALSE(r.secrecyOk);
}

TEST(Sampled, SameSeedSameReport) {
    auto d = buildScheme(ClassId::G12, std::vector<std::size_t>(5, 1), 11);
    VerifyOptions opt;
    opt.samples = 2000;
    auto a = verifyPerfect(d, opt), b = verifyPerfect(d, opt);
    EXPECT_EQ(a.minPValue, b.minPValue);
    EXPECT_EQ(a.transcripts, 2000u);
}
