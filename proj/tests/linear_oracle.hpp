#pragma once

#include <map>
#include <vector>

#include "hqss/css.hpp"

namespace oracle {

using namespace hqss;
using ff::Elem;
using ff::FieldCtx;
using ff::FMatrix;
using ff::FVector;

// Every share is a linear function of (secret, dealer draws). Rows are keyed by participant.
struct LinearMap {
    std::size_t secretLength = 0;
    std::size_t draws = 0;
    std::map<access::Participant, FMatrix> rows;
};

inline LinearMap linearMap(const css::SchemeDescriptor& d) {
    FieldCtx f(d.p);
    LinearMap m;
    m.secretLength = d.secretLength;
    m.draws = css::randomnessCount(d);
    std::size_t cols = m.secretLength + m.draws;
    auto run = [&](const FVector& in) {
        FVector secret(in.begin(), in.begin() + static_cast<long>(m.secretLength));
        std::size_t pos = m.secretLength;
        return css::dealWith(d, secret, [&] { return in[pos++]; }, f);
    };
    auto base = run(FVector(cols, 0));
    for (const auto& [v, shares] : base.shares) m.rows[v].assign(shares.size(), FVector(cols, 0));
    for (std::size_t c = 0; c < cols; ++c) {
        FVector unit(cols, 0);
        unit[c] = 1;
        auto b = run(unit);
        for (const auto& [v, shares] : b.shares)
            for (std::size_t i = 0; i < shares.size(); ++i)
                m.rows[v][i][c] = f.sub(shares[i].value, base.shares.at(v)[i].value);
    }
    return m;
}

inline FMatrix viewRows(const LinearMap& m, const access::ParticipantSet& u) {
    FMatrix out;
    for (auto v : u) {
        auto it = m.rows.find(v);
        if (it != m.rows.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
}

// Dimension of the secret space the view pins down: rank[V] - rank[V restricted to draws].
inline std::size_t secretInformation(const LinearMap& m, const access::ParticipantSet& u, const FieldCtx& f) {
    auto v = viewRows(m, u);
    if (v.empty()) return 0;
    FMatrix r;
    for (const auto& row : v) r.emplace_back(row.begin() + static_cast<long>(m.secretLength), row.end());
    std::size_t rr = m.draws ? ff::rank(r, f) : 0;
    return ff::rank(v, f) - rr;
}

} // namespace oracle
