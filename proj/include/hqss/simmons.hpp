#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hqss/access.hpp"
#include "hqss/error.hpp"
#include "hqss/ffield.hpp"
#include "hqss/rng.hpp"

namespace hqss::css {

using ff::Elem;
using ff::FieldCtx;
using ff::FVector;

struct SimmonsPoint {
    access::Participant owner = 0; // participant or block label
    std::size_t index = 1;         // multiplicity index j, 1-based
    FVector coords;
};

struct SimmonsSetup {
    std::size_t m = 0;
    access::AccessStructure structure;
    std::vector<SimmonsPoint> points; // ordered by owner, then index
    FVector k0;
    FVector epsilon;

    std::vector<std::size_t> pointsOf(const access::ParticipantSet& owners) const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (std::binary_search(owners.begin(), owners.end(), points[i].owner)) idx.push_back(i);
        return idx;
    }
};

enum class SetupPolicy {
    Strict,        // authorized solvable, maximal unauthorized unsolvable, general position
    AuthorizedOnly // drops the unauthorized condition
};

inline FVector unitDirection(std::size_t m) {
    FVector e(m, 0);
    e[m - 1] = 1;
    return e;
}

// lambda_i = k - A.K_i for every point.
inline FVector simmonsDeal(const SimmonsSetup& s, Elem k, const FVector& a, const FieldCtx& f) {
    if (a.size() != s.m || f.dot(a, s.epsilon) != 1)
        throw Error(Errc::BadDirection, "random row must satisfy A.epsilon = 1");
    FVector lambda;
    lambda.reserve(s.points.size());
    for (const auto& pt : s.points) lambda.push_back(f.sub(k % f.p(), f.dot(a, pt.coords)));
    return lambda;
}

// Affine combination of the given points hitting K0, applied to their lambdas.
inline std::optional<Elem> combineLambdas(const SimmonsSetup& s, const std::vector<std::size_t>& idx,
                                          const FVector& lambdas, const FieldCtx& f) {
    std::vector<FVector> pts;
    for (auto i : idx) pts.push_back(s.points[i].coords);
    auto mu = ff::solveAffineCombination(pts, s.k0, f);
    if (!mu) return std::nullopt;
    Elem k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) k = f.add(k, f.mul((*mu)[i], lambdas[i]));
    return k;
}

// lambdas indexed like s.points.
inline std::optional<Elem> simmonsRecover(const SimmonsSetup& s, const access::ParticipantSet& subset,
                                          const FVector& lambdas, const FieldCtx& f) {
    auto idx = s.pointsOf(access::makeSet(subset));
    FVector sub;
    for (auto i : idx) sub.push_back(lambdas[i]);
    return combineLambdas(s, idx, sub, f);
}

inline bool collinear(const FVector& a, const FVector& b, const FVector& c, const FieldCtx& f) {
    ff::FMatrix m(2, FVector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        m[0][i] = f.sub(b[i], a[i]);
        m[1][i] = f.sub(c[i], a[i]);
    }
    return ff::rank(m, f) <= 1;
}

struct SimmonsCheck {
    std::size_t collinearTriples = 0;
    std::vector<access::ParticipantSet> authorizedFailures;
    std::vector<access::ParticipantSet> unauthorizedSolvable;
    bool inVI = true; // every point and K0 has last coordinate 0

    bool ok(SetupPolicy policy = SetupPolicy::Strict) const {
        return inVI && collinearTriples == 0 && authorizedFailures.empty() &&
               (policy == SetupPolicy::AuthorizedOnly || unauthorizedSolvable.empty());
    }
};

inline std::size_t countCollinear(const SimmonsSetup& s, const FieldCtx& f, bool stopEarly = false) {
    std::vector<const FVector*> all;
    for (const auto& pt : s.points) all.push_back(&pt.coords);
    all.push_back(&s.k0);
    std::size_t n = all.size(), count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (collinear(*all[i], *all[j], *all[k], f)) {
                    ++count;
                    if (stopEarly) return count;
                }
    return count;
}

// stopEarly returns at the first failure that matters under `policy`.
inline SimmonsCheck checkSimmons(const SimmonsSetup& s, const FieldCtx& f, bool stopEarly = false,
                                 SetupPolicy policy = SetupPolicy::Strict) {
    SimmonsCheck r;
    for (const auto& pt : s.points)
        if (pt.coords.size() != s.m || pt.coords.back() != 0) r.inVI = false;
    if (s.k0.size() != s.m || s.k0.back() != 0) r.inVI = false;
    auto solvable = [&](const access::ParticipantSet& owners) {
        std::vector<FVector> pts;
        for (auto i : s.pointsOf(owners)) pts.push_back(s.points[i].coords);
        return ff::solveAffineCombination(pts, s.k0, f).has_value();
    };
    for (const auto& e : s.structure.edges) {
        if (!solvable(e)) r.authorizedFailures.push_back(e);
        if (stopEarly && !r.authorizedFailures.empty()) return r;
    }
    if (!stopEarly || policy == SetupPolicy::Strict)
        for (const auto& u : access::maximalUnauthorized(s.structure)) {
            if (solvable(u)) r.unauthorizedSolvable.push_back(u);
            if (stopEarly && !r.unauthorizedSolvable.empty()) return r;
        }
    r.collinearTriples = countCollinear(s, f, stopEarly);
    return r;
}

// Rejection sampler for point sets in V_I = {last coordinate 0}.
inline SimmonsSetup simmonsSetup(const access::AccessStructure& structure,
                                 const std::map<access::Participant, std::size_t>& multiplicities,
                                 std::size_t m, const FieldCtx& f, Rng& rng,
                                 SetupPolicy policy = SetupPolicy::Strict, std::size_t retryBudget = 2000) {
    if (!access::validate(structure).ok()) throw Error(Errc::BadInput, "structure fails validation");
    SimmonsSetup s;
    s.m = m;
    s.structure = structure;
    s.k0 = FVector(m, 0);
    s.epsilon = unitDirection(m);
    for (auto v : structure.universe) {
        auto it = multiplicities.find(v);
        std::size_t r = it == multiplicities.end() ? 1 : it->second;
        for (std::size_t j = 1; j <= r; ++j) s.points.push_back({v, j, {}});
    }
    std::size_t maxAuth = 0;
    for (const auto& e : structure.edges) maxAuth = std::max(maxAuth, s.pointsOf(e).size());
    if (m < maxAuth) throw Error(Errc::BadInput, "dimension below largest authorized point count");

    auto randomPoint = [&] {
        FVector v(m, 0);
        for (std::size_t i = 0; i + 1 < m; ++i) v[i] = rng.uniform(f.p());
        return v;
    };

    for (std::size_t attempt = 0; attempt < retryBudget; ++attempt) {
        std::vector<bool> set(s.points.size(), false);
        switch (attempt % 3) {
        case 0: {
            // Force each edge to contain K0 in its affine hull via its last free point.
            for (const auto& e : structure.edges) {
                auto idx = s.pointsOf(e);
                std::vector<std::size_t> freeIdx;
                for (auto i : idx)
                    if (!set[i]) freeIdx.push_back(i);
                if (freeIdx.empty()) continue;
                for (std::size_t t = 0; t + 1 < freeIdx.size(); ++t) {
                    s.points[freeIdx[t]].coords = randomPoint();
                    set[freeIdx[t]] = true;
                }
                std::size_t last = freeIdx.back();
                FVector acc(m, 0);
                Elem sum = 0;
                for (auto i : idx) {
                    if (i == last) continue;
                    Elem mu = rng.nonzero(f.p());
                    sum = f.add(sum, mu);
                    for (std::size_t d = 0; d < m; ++d) acc[d] = f.add(acc[d], f.mul(mu, s.points[i].coords[d]));
                }
                Elem muLast = f.sub(1, sum);
                if (muLast == 0) muLast = 1; // falls through to validation
                Elem scale = f.neg(f.inv(muLast));
                FVector pt(m);
                for (std::size_t d = 0; d < m; ++d) pt[d] = f.mul(scale, acc[d]);
                s.points[last].coords = pt;
                set[last] = true;
            }
            for (std::size_t i = 0; i < s.points.size(); ++i)
                if (!set[i]) s.points[i].coords = randomPoint();
            break;
        }
        case 1: {
            std::size_t r = 1 + rng.uniform(static_cast<std::uint32_t>(m - 1));
            std::vector<FVector> basis;
            for (std::size_t b = 0; b < r; ++b) basis.push_back(randomPoint());
            for (auto& pt : s.points) {
                pt.coords = FVector(m, 0);
                for (const auto& b : basis) {
                    Elem c = rng.uniform(f.p());
                    for (std::size_t d = 0; d < m; ++d) pt.coords[d] = f.add(pt.coords[d], f.mul(c, b[d]));
                }
            }
            break;
        }
        default:
            for (auto& pt : s.points) pt.coords = randomPoint();
        }
        if (checkSimmons(s, f, true, policy).ok(policy)) return s;
    }
    throw Error(Errc::ExhaustedAttempts,
                "no point configuration found after " + std::to_string(retryBudget) + " attempts");
}

} // namespace hqss::css
