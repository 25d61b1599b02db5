#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hqss/css.hpp"
#include "hqss/ffield.hpp"
#include "hqss/qudit.hpp"
#include "hqss/rng.hpp"

namespace hqss::protocol {

using access::Participant;
using ff::Elem;
using ff::FVector;

enum class Phase { Distribution, Circulation, Delivery };
enum class Verdict { Accept, AbortEavesdrop, RetryUnequal };

inline const char* phaseName(Phase p) {
    switch (p) {
    case Phase::Distribution: return "distribution";
    case Phase::Circulation: return "circulation";
    case Phase::Delivery: return "delivery";
    }
    return "?";
}

inline const char* verdictName(Verdict v) {
    switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::AbortEavesdrop: return "abort-eavesdrop";
    case Verdict::RetryUnequal: return "retry-unequal";
    }
    return "?";
}

// H_x(y) = y1 + y2 x
inline Elem polyHash(Elem y1, Elem y2, Elem x, const ff::FieldCtx& f) { return f.add(y1 % f.p(), f.mul(y2 % f.p(), x % f.p())); }

struct SessionConfig {
    css::SchemeDescriptor descriptor;
    std::uint32_t nInfo = 3;
    std::uint32_t nDecoy = 10;
    double errorThreshold = 0.0;
    std::uint64_t seed = 1;
    std::size_t retryBudget = 16;
    std::size_t mas = 0; // edge index recovered in Steps 2 and 3
    Elem dealerId = 0;   // x0
    Elem combinerId = 0; // y0
    std::map<Participant, Elem> systemKeys; // dealer <-> participant
    std::vector<Elem> blockKeys;            // per block, shared inside the block
    std::vector<Elem> combinerKeys;         // per block, block leader <-> combiner
};

// Keys drawn nonzero from a stream separate from the session's own.
inline SessionConfig makeConfig(css::SchemeDescriptor d, std::uint32_t nInfo, std::uint32_t nDecoy,
                                std::uint64_t seed) {
    SessionConfig c;
    c.nInfo = nInfo;
    c.nDecoy = nDecoy;
    c.seed = seed;
    c.combinerId = static_cast<Elem>((d.blocks.size() + 1) % d.p);
    Rng keys(deriveSeed(seed, 0x6b657973));
    for (auto v : d.structure.universe) c.systemKeys[v] = keys.nonzero(d.p);
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        c.blockKeys.push_back(keys.nonzero(d.p));
        c.combinerKeys.push_back(keys.nonzero(d.p));
    }
    c.descriptor = std::move(d);
    return c;
}

inline void checkConfig(const SessionConfig& c) {
    if (c.nInfo < 1) throw Error(Errc::BadInput, "nInfo must be at least 1");
    if (c.errorThreshold < 0 || c.errorThreshold > 1) throw Error(Errc::BadInput, "error threshold outside [0,1]");
    if (c.mas >= c.descriptor.structure.edges.size()) throw Error(Errc::NotAnEdge, "MAS index out of range");
    auto nz = [](Elem k) { return k != 0; };
    bool ok = std::all_of(c.blockKeys.begin(), c.blockKeys.end(), nz) &&
              std::all_of(c.combinerKeys.begin(), c.combinerKeys.end(), nz) &&
              c.blockKeys.size() == c.descriptor.blocks.size() &&
              c.combinerKeys.size() == c.descriptor.blocks.size();
    for (const auto& [v, k] : c.systemKeys) ok = ok && k != 0;
    if (!ok) throw Error(Errc::BadInput, "keys must be nonzero and present for every block");
}

struct Slot {
    bool decoy = false;
    qudit::QuditState state;
};

struct ParticleSequence {
    std::vector<Slot> slots;
    std::vector<std::size_t> decoyPositions;
};

// nInfo copies of |e^(b)_value>, nDecoy copies of |e^(decoyBasis)_0> at random positions.
inline ParticleSequence encodeValue(Elem value, std::uint32_t basis, std::uint32_t decoyBasis, std::uint32_t p,
                                    std::uint32_t nInfo, std::uint32_t nDecoy, Rng& rng) {
    std::size_t n = nInfo + nDecoy;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform(static_cast<std::uint32_t>(i))]);
    ParticleSequence seq;
    seq.slots.resize(n);
    seq.decoyPositions.assign(order.begin(), order.begin() + nDecoy);
    std::sort(seq.decoyPositions.begin(), seq.decoyPositions.end());
    for (std::size_t i = 0; i < n; ++i) {
        bool decoy = std::binary_search(seq.decoyPositions.begin(), seq.decoyPositions.end(), i);
        seq.slots[i] = {decoy, decoy ? qudit::mubState(p, decoyBasis, 0) : qudit::mubState(p, basis, value)};
    }
    return seq;
}

inline ParticleSequence encodeValue(Elem value, std::uint32_t basis, std::uint32_t p, std::uint32_t nInfo,
                                    std::uint32_t nDecoy, Rng& rng) {
    return encodeValue(value, basis, basis, p, nInfo, nDecoy, rng);
}

struct Reception {
    std::optional<Elem> value;
    std::size_t decoyErrors = 0;
    double decoyErrorRate = 0.0;
    Verdict verdict = Verdict::Accept;
};

// Decoys first, after the sender reveals their positions; then the information slots.
inline Reception checkDecoys(const ParticleSequence& seq, std::uint32_t decoyBasis, double threshold, Rng& rng) {
    Reception r;
    for (auto i : seq.decoyPositions)
        if (qudit::measure(seq.slots[i].state, qudit::BasisId::mub(decoyBasis), rng).outcome != 0) ++r.decoyErrors;
    if (!seq.decoyPositions.empty())
        r.decoyErrorRate = static_cast<double>(r.decoyErrors) / static_cast<double>(seq.decoyPositions.size());
    if (r.decoyErrorRate > threshold) r.verdict = Verdict::AbortEavesdrop;
    return r;
}

inline Reception measureInfo(Reception r, const ParticleSequence& seq, std::uint32_t basis, Rng& rng) {
    if (r.verdict == Verdict::AbortEavesdrop) return r;
    std::optional<Elem> first;
    bool equal = true;
    for (const auto& s : seq.slots) {
        if (s.decoy) continue;
        Elem v = qudit::measure(s.state, qudit::BasisId::mub(basis), rng).outcome;
        if (first && *first != v) equal = false;
        if (!first) first = v;
    }
    if (!equal) {
        r.verdict = Verdict::RetryUnequal;
        return r;
    }
    r.value = first;
    r.verdict = Verdict::Accept;
    return r;
}

inline Reception receiveValue(const ParticleSequence& seq, std::uint32_t basis, std::uint32_t decoyBasis,
                              double threshold, Rng& rng) {
    return measureInfo(checkDecoys(seq, decoyBasis, threshold, rng), seq, basis, rng);
}

inline Reception receiveValue(const ParticleSequence& seq, std::uint32_t basis, double threshold, Rng& rng) {
    return receiveValue(seq, basis, basis, threshold, rng);
}

// ---- adversary ----

enum class EveBasisChoice { UniformOverProtocolBases, UniformOverAllBases };

struct HopTarget {
    std::optional<Phase> phase;
    std::optional<std::string> sender;
    std::optional<std::string> receiver;
};

struct EveModel {
    bool active = false;
    EveBasisChoice choice = EveBasisChoice::UniformOverProtocolBases;
    std::vector<HopTarget> targets; // empty while active: every hop

    static EveModel none() { return {}; }
    static EveModel interceptResend(EveBasisChoice c = EveBasisChoice::UniformOverProtocolBases,
                                    std::vector<HopTarget> targets = {}) {
        return {true, c, std::move(targets)};
    }

    bool attacks(Phase phase, const std::string& sender, const std::string& receiver) const {
        if (!active) return false;
        if (targets.empty()) return true;
        for (const auto& t : targets)
            if ((!t.phase || *t.phase == phase) && (!t.sender || *t.sender == sender) &&
                (!t.receiver || *t.receiver == receiver))
                return true;
        return false;
    }
};

// Measure every slot in a guessed basis and resend the collapsed state.
inline void interceptResend(ParticleSequence& seq, const EveModel& eve, std::uint32_t p, Rng& rng) {
    for (auto& s : seq.slots) {
        qudit::BasisId b;
        if (eve.choice == EveBasisChoice::UniformOverAllBases) {
            auto k = rng.uniform(p + 1);
            b = k == p ? qudit::BasisId::computational() : qudit::BasisId::mub(k);
        } else {
            b = qudit::BasisId::mub(rng.uniform(p));
        }
        s.state = qudit::measure(s.state, b, rng).collapsed;
    }
}

// ---- transcript ----

struct HopRecord {
    Phase phase = Phase::Distribution;
    std::string sender;
    std::string receiver;
    std::string tag;
    std::uint32_t basisIndex = 0;
    std::uint32_t nInfo = 0;
    std::uint32_t nDecoy = 0;
    std::size_t decoyErrors = 0;
    double decoyErrorRate = 0.0;
    Verdict verdict = Verdict::Accept;
    bool intercepted = false;
    std::size_t attempt = 0;
};

struct SessionTranscript {
    std::vector<HopRecord> hops;
    bool aborted = false;
    std::optional<Phase> abortedAt;
    std::string failure; // DistributionAborted, CirculationAborted, DeliveryAborted, RetryExhausted, ...
    std::size_t mas = 0;
    FVector dealt;
    std::optional<FVector> recovered;
    bool match = false;

    void fail(Phase p, const std::string& why) {
        if (!aborted) {
            aborted = true;
            abortedAt = p;
            failure = why;
        }
    }
};

inline std::string participantName(Participant v) { return "P" + std::to_string(v); }
inline const std::string kDealer = "Alice";
inline const std::string kCombiner = "Combiner";

namespace detail {

struct Hop {
    Phase phase;
    std::string sender, receiver, tag;
    std::uint32_t infoBasis, decoyBasis;
};

// One transmission with retries on unequal results.
inline std::optional<Elem> transmit(const SessionConfig& c, const Hop& h, Elem value, const EveModel& eve, Rng& rng,
                                    SessionTranscript& t) {
    std::uint32_t p = c.descriptor.p;
    for (std::size_t attempt = 0; attempt <= c.retryBudget; ++attempt) {
        auto seq = encodeValue(value, h.infoBasis, h.decoyBasis, p, c.nInfo, c.nDecoy, rng);
        bool hit = eve.attacks(h.phase, h.sender, h.receiver);
        if (hit) interceptResend(seq, eve, p, rng);
        auto r = receiveValue(seq, h.infoBasis, h.decoyBasis, c.errorThreshold, rng);
        t.hops.push_back({h.phase, h.sender, h.receiver, h.tag, h.infoBasis, c.nInfo, c.nDecoy, r.decoyErrors,
                          r.decoyErrorRate, r.verdict, hit, attempt});
        if (r.verdict == Verdict::Accept) return r.value;
        if (r.verdict == Verdict::AbortEavesdrop) return std::nullopt;
    }
    return std::nullopt;
}

} // namespace detail

struct DistributionResult {
    css::ShareBundle held; // values as measured by each participant
    std::size_t abortedHops = 0;
    std::size_t exhaustedHops = 0;
};

// Step 1: every share travels dealer -> participant in basis H(x0, x_i) keyed by the system key.
inline DistributionResult distributeShares(const SessionConfig& c, const css::ShareBundle& bundle, const EveModel& eve,
                                           Rng& rng, SessionTranscript& t) {
    ff::FieldCtx f(c.descriptor.p);
    DistributionResult out;
    out.held.leafValues = bundle.leafValues;
    for (const auto& [v, shares] : bundle.shares) {
        auto b = c.descriptor.blockOf(v);
        Elem key = c.systemKeys.at(v);
        auto basis = polyHash(c.dealerId, c.descriptor.identities[b], key, f);
        for (const auto& s : shares) {
            detail::Hop h{Phase::Distribution, kDealer, participantName(v), s.tag, basis, basis};
            auto got = detail::transmit(c, h, s.value, eve, rng, t);
            if (got) {
                out.held.shares[v].push_back({s.tag, s.leaf, *got});
            } else if (t.hops.back().verdict == Verdict::AbortEavesdrop) {
                // the first detected hop ends the session
                ++out.abortedHops;
                t.fail(Phase::Distribution, "DistributionAborted");
                return out;
            } else {
                ++out.exhaustedHops;
            }
        }
    }
    if (out.exhaustedHops) t.fail(Phase::Distribution, "RetryExhausted");
    return out;
}

// Step 2: the block leader's particles visit every member, each adding its share to the level.
inline std::optional<Elem> circulateSubkey(const SessionConfig& c, std::size_t block, std::size_t leaf,
                                           const css::ShareBundle& held, const EveModel& eve, Rng& rng,
                                           SessionTranscript& t, std::vector<Participant> order = {}) {
    ff::FieldCtx f(c.descriptor.p);
    std::uint32_t p = c.descriptor.p;
    const auto& members = c.descriptor.blocks.at(block);
    if (order.empty()) order = members;
    auto shareOf = [&](Participant v) -> std::optional<Elem> {
        auto it = held.shares.find(v);
        if (it == held.shares.end()) return std::nullopt;
        for (const auto& s : it->second)
            if (s.leaf == leaf) return s.value;
        return std::nullopt;
    };
    Participant leader = order.front();
    Elem key = c.blockKeys.at(block);
    Elem x = c.descriptor.identities[block];
    auto logK = f.discreteLog(key);
    auto decoyBasis = polyHash(x, x, key, f);
    const std::string& tag = c.descriptor.leaves.at(leaf).tag;

    for (std::size_t attempt = 0; attempt <= c.retryBudget; ++attempt) {
        Elem secretBasis = rng.uniform(p);
        std::vector<qudit::QuditState> info(c.nInfo, qudit::mubState(p, secretBasis, logK % p));
        for (std::size_t m = 1; m <= order.size(); ++m) {
            if (order.size() == 1) break;
            Participant from = order[m - 1], to = order[m % order.size()];
            // Fresh decoys ride along on every hop.
            auto seq = encodeValue(0, decoyBasis, p, 0, c.nDecoy, rng);
            for (auto& s : info) seq.slots.push_back({false, s});
            bool hit = eve.attacks(Phase::Circulation, participantName(from), participantName(to));
            if (hit) interceptResend(seq, eve, p, rng);
            auto r = checkDecoys(seq, decoyBasis, c.errorThreshold, rng);
            t.hops.push_back({Phase::Circulation, participantName(from), participantName(to), tag, secretBasis,
                              c.nInfo, c.nDecoy, r.decoyErrors, r.decoyErrorRate, r.verdict, hit, attempt});
            if (r.verdict == Verdict::AbortEavesdrop) {
                t.fail(Phase::Circulation, "CirculationAborted");
                return std::nullopt;
            }
            for (std::size_t i = 0; i < info.size(); ++i) info[i] = seq.slots[c.nDecoy + i].state;
            if (to == leader) break;
            auto sh = shareOf(to);
            if (!sh) {
                t.fail(Phase::Circulation, "MissingShare");
                return std::nullopt;
            }
            for (auto& s : info) s = qudit::applyShift(*sh, 0, s);
        }
        auto own = shareOf(leader);
        if (!own) {
            t.fail(Phase::Circulation, "MissingShare");
            return std::nullopt;
        }
        Elem closing = f.add(f.neg(static_cast<Elem>(logK % p)), *own);
        std::optional<Elem> first;
        bool equal = true;
        for (auto& s : info) {
            s = qudit::applyShift(closing, 0, s);
            Elem v = qudit::measure(s, qudit::BasisId::mub(secretBasis), rng).outcome;
            if (first && *first != v) equal = false;
            if (!first) first = v;
        }
        if (equal) return first;
        t.hops.push_back({Phase::Circulation, participantName(leader), participantName(leader), tag, secretBasis,
                          c.nInfo, 0, 0, 0.0, Verdict::RetryUnequal, false, attempt});
    }
    t.fail(Phase::Circulation, "RetryExhausted");
    return std::nullopt;
}

// Step 3: block leader -> combiner, information in basis log_c C, decoys in H(y0, x_i) keyed by C.
inline std::optional<Elem> deliverSubkey(const SessionConfig& c, std::size_t block, std::size_t leaf, Elem subkey,
                                         const EveModel& eve, Rng& rng, SessionTranscript& t) {
    ff::FieldCtx f(c.descriptor.p);
    Elem key = c.combinerKeys.at(block);
    auto infoBasis = f.discreteLog(key);
    auto decoyBasis = polyHash(c.combinerId, c.descriptor.identities[block], key, f);
    detail::Hop h{Phase::Delivery, participantName(c.descriptor.blocks[block].front()), kCombiner,
                  c.descriptor.leaves.at(leaf).tag, infoBasis, decoyBasis};
    auto got = detail::transmit(c, h, subkey, eve, rng, t);
    if (!got) t.fail(Phase::Delivery, t.hops.back().verdict == Verdict::AbortEavesdrop ? "DeliveryAborted" : "RetryExhausted");
    return got;
}

// Blocks inside the chosen minimal authorized set.
inline std::vector<std::size_t> masBlocks(const SessionConfig& c) {
    const auto& edge = c.descriptor.structure.edges.at(c.mas);
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < c.descriptor.blocks.size(); ++b)
        if (access::isSubset(c.descriptor.blocks[b], edge)) out.push_back(b);
    return out;
}

// Combiner: evaluates the recipe on the delivered subkeys (recomputing any affine coefficients).
inline FVector combineSecret(const SessionConfig& c, const std::map<std::size_t, Elem>& values) {
    ff::FieldCtx f(c.descriptor.p);
    std::vector<std::optional<Elem>> leaves(c.descriptor.leaves.size());
    for (auto b : masBlocks(c))
        for (auto l : c.descriptor.leavesOfBlock(b)) {
            auto it = values.find(l);
            if (it == values.end())
                throw Error(Errc::InsufficientSubkeys, "missing subkey " + c.descriptor.leaves[l].tag);
            leaves[l] = it->second;
        }
    auto r = css::recoverFromLeaves(c.descriptor, leaves, f);
    if (!r) throw Error(Errc::InconsistentSystem, r.failedComponent);
    return *r.secret;
}

inline SessionTranscript runSession(const SessionConfig& c, const EveModel& eve = EveModel::none()) {
    checkConfig(c);
    ff::FieldCtx f(c.descriptor.p);
    Rng rng(c.seed);
    SessionTranscript t;
    t.mas = c.mas;
    t.dealt.resize(c.descriptor.secretLength);
    for (auto& v : t.dealt) v = rng.uniform(c.descriptor.p);
    auto bundle = css::dealSecret(c.descriptor, t.dealt, rng, f);

    auto dist = distributeShares(c, bundle, eve, rng, t);
    if (t.aborted) return t;

    std::map<std::size_t, Elem> combiner;
    for (auto b : masBlocks(c)) {
        for (auto l : c.descriptor.leavesOfBlock(b)) {
            auto sub = circulateSubkey(c, b, l, dist.held, eve, rng, t);
            if (!sub) return t;
            auto got = deliverSubkey(c, b, l, *sub, eve, rng, t);
            if (!got) return t;
            combiner[l] = *got;
        }
    }
    try {
        t.recovered = combineSecret(c, combiner);
        t.match = *t.recovered == t.dealt;
    } catch (const Error& e) {
        t.fail(Phase::Delivery, errcName(e.code()));
    }
    return t;
}

} // namespace hqss::protocol
