#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hqss/catalog.hpp"
#include "hqss/css.hpp"

namespace hqss::metrics {

using access::Participant;
using css::SchemeDescriptor;

// Logs base p: every field element counts one unit.
inline Rational idealizedRate(const SchemeDescriptor& d, std::uint32_t nInfo) {
    if (nInfo < 1) throw Error(Errc::BadInput, "nInfo must be at least 1");
    return Rational(static_cast<std::int64_t>(d.secretLength),
                    static_cast<std::int64_t>(nInfo) * static_cast<std::int64_t>(css::maxShareCount(d)));
}

// Information particles each participant receives during distribution.
inline std::map<Participant, std::uint64_t> particleCounts(const SchemeDescriptor& d, std::uint32_t nInfo) {
    std::map<Participant, std::uint64_t> out;
    for (const auto& [v, n] : css::participantShareCounts(d)) out[v] = static_cast<std::uint64_t>(n) * nInfo;
    return out;
}

inline std::optional<Rational> classBound(const SchemeDescriptor& d) {
    if (!d.classId) return std::nullopt;
    return access::classRate(*d.classId);
}

struct RateReport {
    Rational classicalRate;
    Rational idealizedRate;
    std::uint32_t nInfo = 1;
    std::map<Participant, std::uint64_t> particleCounts;
    std::optional<Rational> classBound;
};

inline RateReport rateReport(const SchemeDescriptor& d, std::uint32_t nInfo) {
    return {css::classicalRate(d), idealizedRate(d, nInfo), nInfo, particleCounts(d, nInfo), classBound(d)};
}

struct EfficiencyReport {
    std::size_t mas = 0;
    std::vector<std::size_t> blocks; // 0-based block indices inside the MAS
    std::int64_t c = 0;
    std::int64_t qI = 0;
    std::int64_t qE = 0;
    std::int64_t b = 0;
    Rational eta;
    Rational closedForm;
    bool matchesClosedForm = false;
};

inline std::vector<std::size_t> blocksInEdge(const SchemeDescriptor& d, std::size_t mas) {
    if (mas >= d.structure.edges.size()) throw Error(Errc::NotAnEdge, "no edge with index " + std::to_string(mas));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < d.blocks.size(); ++i)
        if (access::isSubset(d.blocks[i], d.structure.edges[mas])) out.push_back(i);
    return out;
}

// rho_Q * 1 / ((1 + d) * sum |A_i|), d = nDecoy / nInfo.
inline Rational closedFormEfficiency(const SchemeDescriptor& d, std::size_t mas, std::uint32_t nInfo,
                                     std::uint32_t nDecoy) {
    std::int64_t members = 0;
    for (auto i : blocksInEdge(d, mas)) members += static_cast<std::int64_t>(d.blocks[i].size());
    Rational ratio(nDecoy, nInfo);
    return idealizedRate(d, nInfo) / ((Rational(1) + ratio) * Rational(members));
}

inline EfficiencyReport efficiency(const SchemeDescriptor& d, std::size_t mas, std::uint32_t nInfo,
                                   std::uint32_t nDecoy, std::int64_t b = 0) {
    if (nInfo < 1) throw Error(Errc::BadInput, "nInfo must be at least 1");
    EfficiencyReport r;
    r.mas = mas;
    r.blocks = blocksInEdge(d, mas);
    auto counts = css::blockShareCounts(d);
    std::int64_t slots = 0;
    for (auto i : r.blocks) slots += static_cast<std::int64_t>(d.blocks[i].size() * counts[i]);
    r.c = static_cast<std::int64_t>(d.secretLength);
    r.qI = static_cast<std::int64_t>(nInfo) * slots;
    r.qE = static_cast<std::int64_t>(nDecoy) * slots;
    r.b = b;
    r.eta = Rational(r.c, r.qI + r.qE + r.b);
    r.closedForm = closedFormEfficiency(d, mas, nInfo, nDecoy);
    r.matchesClosedForm = r.eta == r.closedForm;
    return r;
}

inline std::size_t masIndex(const SchemeDescriptor& d, const access::ParticipantSet& edge) {
    return d.structure.edgeIndex(edge);
}

// Largest share must carry at least 3/2 of the secret on G7..G11.
inline bool entropyBoundCheck(const SchemeDescriptor& d) {
    if (!d.classId) return true;
    int c = static_cast<int>(*d.classId);
    if (c < 7 || c > 11) return true;
    return 2 * css::maxShareCount(d) >= 3 * d.secretLength;
}

} // namespace hqss::metrics
