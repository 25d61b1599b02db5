#include <gtest/gtest.h>

#include <cmath>

#include "hqss/protocol.hpp"

using namespace hqss;
using namespace hqss::protocol;
using access::ClassId;

namespace {

// Per-decoy error probability after intercept-resend, from basis overlaps alone.
double detectionOracle(std::uint32_t p, std::uint32_t decoyBasis, bool allBases) {
    std::vector<qudit::BasisId> eve;
    for (std::uint32_t j = 0; j < p; ++j) eve.push_back(qudit::BasisId::mub(j));
    if (allBases) eve.push_back(qudit::BasisId::computational());
    auto sent = qudit::mubState(p, decoyBasis, 0);
    double total = 0;
    for (const auto& b : eve)
        for (std::uint32_t l = 0; l < p; ++l) {
            auto resent = qudit::basisState(p, b, l);
            double pr = std::pow(qudit::overlap(resent, sent), 2);
            total += pr * (1 - pr);
        }
    return total / static_cast<double>(eve.size());
}

// Intercepted decoys measured by the receiver; returns the error fraction and the count.
std::pair<double, std::size_t> empiricalDetection(std::uint32_t p, EveBasisChoice choice, std::size_t n, Rng& rng) {
    std::size_t errors = 0, seen = 0;
    auto eve = EveModel::interceptResend(choice);
    while (seen < n) {
        std::uint32_t basis = rng.uniform(p);
        auto seq = encodeValue(0, basis, p, 0, 50, rng);
        interceptResend(seq, eve, p, rng);
        auto r = checkDecoys(seq, basis, 1.0, rng);
        errors += r.decoyErrors;
        seen += seq.decoyPositions.size();
    }
    return {static_cast<double>(errors) / seen, seen};
}

SessionConfig g9Config(std::uint64_t seed, std::uint32_t nDecoy = 10) {
    return makeConfig(css::buildScheme(ClassId::G9, std::vector<std::size_t>(6, 1), 11), 3, nDecoy, seed);
}

} // namespace

TEST(Hash, PolyHash) {
    ff::FieldCtx f(11);
    EXPECT_EQ(polyHash(3, 4, 5, f), 1u);
    EXPECT_EQ(polyHash(0, 7, 0, f), 0u);
    EXPECT_EQ(polyHash(14, 2, 1, f), 5u);
}

TEST(Encoding, SlotCountsAndDecoyLevels) {
    Rng rng(3);
    auto seq = encodeValue(6, 4, 2, 11, 5, 7, rng);
    EXPECT_EQ(seq.slots.size(), 12u);
    EXPECT_EQ(seq.decoyPositions.size(), 7u);
    EXPECT_TRUE(std::is_sorted(seq.decoyPositions.begin(), seq.decoyPositions.end()));
    std::size_t info = 0;
    for (const auto& s : seq.slots) {
        if (s.decoy) {
            EXPECT_NEAR(qudit::overlap(s.state, qudit::mubState(11, 2, 0)), 1.0, 1e-10);
        } else {
            ++info;
            EXPECT_NEAR(qudit::overlap(s.state, qudit::mubState(11, 4, 6)), 1.0, 1e-10);
        }
    }
    EXPECT_EQ(info, 5u);
    auto r = receiveValue(seq, 4, 2, 0.0, rng);
    EXPECT_EQ(r.verdict, Verdict::Accept);
    EXPECT_EQ(r.decoyErrors, 0u);
    EXPECT_EQ(*r.value, 6u);
}

TEST(Config, Errors) {
    auto c = g9Config(1);
    c.nInfo = 0;
    EXPECT_THROW(checkConfig(c), Error);
    c = g9Config(1);
    c.mas = 3;
    try {
        checkConfig(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotAnEdge);
    }
    c = g9Config(1);
    c.blockKeys[0] = 0;
    EXPECT_THROW(checkConfig(c), Error);
    c = g9Config(1);
    c.errorThreshold = 2;
    EXPECT_THROW(runSession(c), Error);
}

TEST(Honest, EveryClassRecovers) {
    Rng sizes(7);
    for (int ci = 5; ci <= 12; ++ci) {
        auto cls = static_cast<ClassId>(ci);
        std::vector<std::size_t> bs(access::blockCount(cls));
        for (auto& z : bs) z = 1 + sizes.uniform(3);
        auto d = css::buildScheme(cls, bs, 11);
        for (std::size_t mas = 0; mas < d.structure.edges.size(); ++mas) {
            auto c = makeConfig(d, 3, 4, 100 + ci);
            c.mas = mas;
            auto t = runSession(c);
            EXPECT_FALSE(t.aborted) << access::className(cls) << " " << t.failure;
            EXPECT_TRUE(t.match) << access::className(cls);
            for (const auto& h : t.hops) EXPECT_EQ(h.decoyErrors, 0u);
        }
    }
}

TEST(Honest, CirculationVisitsEveryMember) {
    auto d = css::buildScheme(ClassId::G5, std::vector<std::size_t>{3, 1, 1}, 11);
    auto c = makeConfig(d, 2, 3, 9);
    c.mas = d.structure.edgeIndex(access::makeSet({1, 2, 3, 4}));
    auto t = runSession(c);
    ASSERT_TRUE(t.match);
    std::set<std::string> senders;
    for (const auto& h : t.hops)
        if (h.phase == Phase::Circulation) senders.insert(h.sender);
    EXPECT_EQ(senders, (std::set<std::string>{"P1", "P2", "P3"}));
}

TEST(Honest, AllMinimalSetsRecoverTheSameSecret) {
    std::optional<FVector> first;
    for (std::size_t mas = 0; mas < 3; ++mas) {
        auto c = g9Config(42);
        c.mas = mas;
        auto t = runSession(c);
        ASSERT_TRUE(t.match);
        if (!first) first = t.recovered;
        EXPECT_EQ(*t.recovered, *first);
    }
}

TEST(Honest, DeterministicForSeed) {
    auto a = runSession(g9Config(5)), b = runSession(g9Config(5));
    EXPECT_EQ(a.dealt, b.dealt);
    ASSERT_EQ(a.hops.size(), b.hops.size());
    for (std::size_t i = 0; i < a.hops.size(); ++i) EXPECT_EQ(a.hops[i].basisIndex, b.hops[i].basisIndex);
}

TEST(Eve, OracleClosedForms) {
    for (std::uint32_t p : {5u, 7u, 11u}) {
        double q = (p - 1.0) / p;
        EXPECT_NEAR(detectionOracle(p, 3, false), q * q, 1e-10);
        EXPECT_NEAR(detectionOracle(p, 3, true), (p - 1.0) / (p + 1.0), 1e-10);
    }
}

TEST(Eve, PerDecoyDetectionMatchesOracle) {
    Rng rng(11);
    for (auto choice : {EveBasisChoice::UniformOverProtocolBases, EveBasisChoice::UniformOverAllBases}) {
        double q = detectionOracle(11, 0, choice == EveBasisChoice::UniformOverAllBases);
        auto [rate, n] = empiricalDetection(11, choice, 20000, rng);
        double sigma = std::sqrt(q * (1 - q) / static_cast<double>(n));
        EXPECT_NEAR(rate, q, 3 * sigma);
    }
}

TEST(Eve, ManyDecoysAbortInDistribution) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        auto t = runSession(g9Config(s, 50), EveModel::interceptResend());
        EXPECT_TRUE(t.aborted);
        EXPECT_EQ(t.failure, "DistributionAborted");
        EXPECT_FALSE(t.match);
    }
}

TEST(Eve, CirculationOnlyAttackAborts) {
    auto d = css::buildScheme(ClassId::G5, std::vector<std::size_t>{2, 2, 2}, 11);
    auto c = makeConfig(d, 3, 30, 4);
    auto t = runSession(c, EveModel::interceptResend(EveBasisChoice::UniformOverProtocolBases,
                                                      {HopTarget{Phase::Circulation, {}, {}}}));
    EXPECT_EQ(t.failure, "CirculationAborted");
    for (const auto& h : t.hops) {
        if (h.phase != Phase::Circulation) {
            EXPECT_FALSE(h.intercepted);
        }
    }
}

TEST(Eve, NoDecoysMeansNoDetectionButNoSecret) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        auto t = runSession(g9Config(s, 0), EveModel::interceptResend());
        EXPECT_NE(t.failure, "DistributionAborted");
        EXPECT_FALSE(t.match);
    }
}
