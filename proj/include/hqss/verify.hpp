#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "hqss/css.hpp"

namespace hqss::css {

struct PerfectReport {
    bool recoverOk = true;
    bool secrecyOk = true;
    bool exhaustive = false;
    std::uint64_t transcripts = 0;
    std::size_t authorizedSubsets = 0;
    std::size_t unauthorizedSubsets = 0;
    std::uint64_t recoveryFailures = 0;
    std::size_t chiTests = 0;
    double minPValue = 1.0;
    double alpha = 0.01;
    std::vector<std::string> findings;
};

struct VerifyOptions {
    std::uint64_t budget = 2'000'000; // exhaustive when p^(secret + randomness) fits
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
    double alpha = 0.01; // family-wise, split across the chi-square tests
};

// Upper-tail probability of a chi-square statistic.
inline double chiSquarePValue(double stat, double df) {
    if (df <= 0) return 1.0;
    boost::math::chi_squared dist(df);
    return boost::math::cdf(boost::math::complement(dist, std::max(stat, 0.0)));
}

// Independence test on a rows x cols contingency table.
inline double independencePValue(const std::vector<std::vector<std::uint64_t>>& table) {
    std::size_t r = table.size(), c = table.front().size();
    std::vector<double> rs(r, 0), cs(c, 0);
    double n = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            rs[i] += static_cast<double>(table[i][j]);
            cs[j] += static_cast<double>(table[i][j]);
            n += static_cast<double>(table[i][j]);
        }
    double stat = 0;
    std::size_t liveR = 0, liveC = 0;
    for (auto v : rs) liveR += v > 0;
    for (auto v : cs) liveC += v > 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            double e = rs[i] * cs[j] / n;
            if (e > 0) stat += (static_cast<double>(table[i][j]) - e) * (static_cast<double>(table[i][j]) - e) / e;
        }
    if (liveR < 2 || liveC < 2) return 1.0;
    return chiSquarePValue(stat, static_cast<double>((liveR - 1) * (liveC - 1)));
}

namespace detail {

// Authorized subsets to exercise: all of them for small universes, else edges plus the universe.
inline std::vector<ParticipantSet> authorizedToCheck(const access::AccessStructure& s, bool all) {
    std::vector<ParticipantSet> out;
    std::size_t n = s.universe.size();
    if (all && n <= 8) {
        for (std::uint32_t m = 1; m < (1u << n); ++m) {
            ParticipantSet set;
            for (std::size_t i = 0; i < n; ++i)
                if (m & (1u << i)) set.push_back(s.universe[i]);
            if (s.authorizes(set)) out.push_back(set);
        }
        return out;
    }
    out = s.edges;
    out.push_back(s.universe);
    return out;
}

inline FVector viewOf(const ShareBundle& b, const ParticipantSet& u) {
    FVector v;
    for (auto x : u) {
        auto it = b.shares.find(x);
        if (it == b.shares.end()) continue;
        for (const auto& s : it->second) v.push_back(s.value);
    }
    return v;
}

} // namespace detail

// Recovery on authorized subsets and secrecy against maximal unauthorized ones.
inline PerfectReport verifyPerfect(const SchemeDescriptor& d, const VerifyOptions& opt = {}) {
    FieldCtx f(d.p);
    PerfectReport rep;
    rep.alpha = opt.alpha;
    const std::size_t r = randomnessCount(d);
    const std::size_t sl = d.secretLength;
    double space = std::pow(static_cast<double>(d.p), static_cast<double>(r + sl));
    rep.exhaustive = space <= static_cast<double>(opt.budget);

    // Sampled runs check minimal sets and the full universe; recovery is monotone in the inputs.
    auto authorized = detail::authorizedToCheck(d.structure, rep.exhaustive);
    auto unauthorized = access::maximalUnauthorized(d.structure);
    rep.authorizedSubsets = authorized.size();
    rep.unauthorizedSubsets = unauthorized.size();

    std::uint64_t secretCount = 1;
    for (std::size_t i = 0; i < sl; ++i) secretCount *= d.p;
    auto secretIndex = [&](const FVector& s) {
        std::uint64_t k = 0;
        for (auto v : s) k = k * d.p + v;
        return k;
    };

    auto checkRecovery = [&](const FVector& secret, const ShareBundle& b) {
        for (const auto& a : authorized) {
            auto rec = recoverSecret(d, a, b, f);
            if (!rec || *rec.secret != secret) {
                if (rep.recoveryFailures == 0) {
                    std::string who = "{";
                    for (auto v : a) who += std::to_string(v) + " ";
                    rep.findings.push_back("authorized set " + who + "} failed: " +
                                           (rec ? std::string("wrong value") : rec.failedComponent));
                }
                ++rep.recoveryFailures;
                rep.recoverOk = false;
            }
        }
    };

    if (rep.exhaustive) {
        std::vector<std::map<FVector, std::vector<std::uint64_t>>> counts(unauthorized.size());
        auto total = static_cast<std::uint64_t>(space);
        FVector tape(r + sl, 0);
        for (std::uint64_t t = 0; t < total; ++t) {
            std::uint64_t x = t;
            for (auto& v : tape) {
                v = static_cast<Elem>(x % d.p);
                x /= d.p;
            }
            FVector secret(tape.begin(), tape.begin() + static_cast<long>(sl));
            std::size_t pos = sl;
            auto b = dealWith(d, secret, [&] { return tape[pos++]; }, f);
            ++rep.transcripts;
            checkRecovery(secret, b);
            auto si = secretIndex(secret);
            for (std::size_t u = 0; u < unauthorized.size(); ++u) {
                auto& row = counts[u][detail::viewOf(b, unauthorized[u])];
                if (row.empty()) row.assign(secretCount, 0);
                ++row[si];
            }
        }
        for (std::size_t u = 0; u < unauthorized.size(); ++u) {
            for (const auto& [view, row] : counts[u]) {
                if (std::adjacent_find(row.begin(), row.end(), std::not_equal_to<>()) != row.end()) {
                    rep.secrecyOk = false;
                    std::string who = "{";
                    for (auto v : unauthorized[u]) who += std::to_string(v) + " ";
                    rep.findings.push_back("unauthorized set " + who + "} sees a non-uniform secret");
                    break;
                }
            }
        }
        return rep;
    }

    // Sampled: contingency table of secret against each view coordinate, plus a linear leak probe.
    Rng rng(opt.seed);
    std::vector<std::vector<std::vector<std::vector<std::uint64_t>>>> tables(unauthorized.size());
    std::vector<ff::FMatrix> probe(unauthorized.size());
    std::vector<std::size_t> viewLen(unauthorized.size(), 0);
    for (std::uint64_t t = 0; t < opt.samples; ++t) {
        FVector secret(sl);
        for (auto& v : secret) v = rng.uniform(d.p);
        auto b = dealSecret(d, secret, rng, f);
        ++rep.transcripts;
        checkRecovery(secret, b);
        auto si = secretIndex(secret);
        for (std::size_t u = 0; u < unauthorized.size(); ++u) {
            auto view = detail::viewOf(b, unauthorized[u]);
            if (tables[u].empty()) {
                viewLen[u] = view.size();
                tables[u].assign(view.size(), std::vector<std::vector<std::uint64_t>>(
                                                  secretCount, std::vector<std::uint64_t>(d.p, 0)));
            }
            for (std::size_t c = 0; c < view.size(); ++c) ++tables[u][c][si][view[c]];
            if (probe[u].size() < 4 * (view.size() + sl) + 40) {
                FVector row = view;
                row.insert(row.end(), secret.begin(), secret.end());
                probe[u].push_back(row);
            }
        }
    }
    std::size_t tests = 0;
    for (const auto& t : tables) tests += t.size();
    rep.chiTests = tests;
    double perTest = tests ? opt.alpha / static_cast<double>(tests) : opt.alpha;
    for (std::size_t u = 0; u < unauthorized.size(); ++u) {
        std::string who = "{";
        for (auto v : unauthorized[u]) who += std::to_string(v) + " ";
        who += "}";
        for (std::size_t c = 0; c < tables[u].size(); ++c) {
            double pv = independencePValue(tables[u][c]);
            rep.minPValue = std::min(rep.minPValue, pv);
            if (pv <= perTest) {
                rep.secrecyOk = false;
                rep.findings.push_back("unauthorized set " + who + " share " + std::to_string(c) +
                                       " correlates with the secret (p=" + std::to_string(pv) + ")");
            }
        }
        // A linear combination of the view equal to a nonzero combination of the secret shows up as
        // a rank deficit of [view | secret].
        if (!probe[u].empty()) {
            ff::FMatrix v, s;
            for (const auto& row : probe[u]) {
                v.emplace_back(row.begin(), row.begin() + static_cast<long>(viewLen[u]));
                s.emplace_back(row.begin() + static_cast<long>(viewLen[u]), row.end());
            }
            std::size_t rv = viewLen[u] ? ff::rank(v, f) : 0;
            std::size_t rs = ff::rank(s, f);
            std::size_t rvs = ff::rank(probe[u], f);
            if (rvs < rv + rs) {
                rep.secrecyOk = false;
                rep.findings.push_back("unauthorized set " + who + " determines a linear function of the secret");
            }
        }
    }
    return rep;
}

} // namespace hqss::css
