#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "hqss/error.hpp"

namespace hqss {

using Rational = boost::rational<std::int64_t>;

inline std::string toString(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace hqss

namespace hqss::access {

using Participant = int;
using ParticipantSet = std::vector<Participant>; // sorted, unique

inline ParticipantSet makeSet(std::vector<Participant> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline bool isSubset(const ParticipantSet& a, const ParticipantSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline ParticipantSet intersect(const ParticipantSet& a, const ParticipantSet& b) {
    ParticipantSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline ParticipantSet difference(const ParticipantSet& a, const ParticipantSet& b) {
    ParticipantSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

struct AccessStructure {
    ParticipantSet universe;
    std::vector<ParticipantSet> edges; // minimal authorized subsets, in input order

    static AccessStructure fromEdges(std::vector<ParticipantSet> edges) {
        AccessStructure s;
        std::vector<Participant> all;
        for (auto& e : edges) {
            e = makeSet(e);
            all.insert(all.end(), e.begin(), e.end());
        }
        s.universe = makeSet(all);
        s.edges = std::move(edges);
        return s;
    }

    std::size_t edgeIndex(const ParticipantSet& e) const {
        auto it = std::find(edges.begin(), edges.end(), makeSet(e));
        if (it == edges.end()) throw Error(Errc::NotAnEdge, "subset is not a minimal authorized set");
        return static_cast<std::size_t>(it - edges.begin());
    }

    bool authorizes(const ParticipantSet& subset) const {
        for (const auto& e : edges)
            if (isSubset(e, subset)) return true;
        return false;
    }

    bool operator==(const AccessStructure&) const = default;
};

// "{1234,1267,456}": one digit per participant.
inline AccessStructure parseStructure(const std::string& text) {
    std::vector<ParticipantSet> edges;
    ParticipantSet cur;
    bool open = false, closed = false;
    for (char ch : text) {
        if (ch == ' ' || ch == '\t') continue;
        if (ch == '{') {
            if (open) throw Error(Errc::BadInput, "nested brace in structure text");
            open = true;
        } else if (ch == '}' || ch == ',') {
            if (!open || closed) throw Error(Errc::BadInput, "malformed structure text: " + text);
            if (cur.empty()) throw Error(Errc::BadInput, "empty hyperedge in: " + text);
            edges.push_back(makeSet(cur));
            cur.clear();
            if (ch == '}') closed = true;
        } else if (ch >= '1' && ch <= '9') {
            if (!open || closed) throw Error(Errc::BadInput, "malformed structure text: " + text);
            cur.push_back(ch - '0');
        } else {
            throw Error(Errc::BadInput, std::string("unexpected character '") + ch + "' in structure text");
        }
    }
    if (!closed) throw Error(Errc::BadInput, "structure text must be enclosed in braces");
    return AccessStructure::fromEdges(std::move(edges));
}

inline std::string toString(const AccessStructure& s) {
    bool digits = std::all_of(s.universe.begin(), s.universe.end(), [](int v) { return v >= 1 && v <= 9; });
    std::string out = "{";
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
        if (i) out += ",";
        for (std::size_t j = 0; j < s.edges[i].size(); ++j) {
            if (!digits && j) out += " ";
            out += std::to_string(s.edges[i][j]);
        }
    }
    return out + "}";
}

enum class ViolationKind { EmptyEdge, NotAntichain, UncoveredParticipant };

struct Violation {
    ViolationKind kind;
    std::vector<std::size_t> edges; // offending edge indices
    Participant participant = 0;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate(const AccessStructure& s) {
    ValidationReport r;
    for (std::size_t i = 0; i < s.edges.size(); ++i)
        if (s.edges[i].empty()) r.violations.push_back({ViolationKind::EmptyEdge, {i}, 0});
    for (std::size_t i = 0; i < s.edges.size(); ++i)
        for (std::size_t j = 0; j < s.edges.size(); ++j)
            if (i != j && !s.edges[i].empty() && isSubset(s.edges[i], s.edges[j]) &&
                (s.edges[i] != s.edges[j] || i < j))
                r.violations.push_back({ViolationKind::NotAntichain, {i, j}, 0});
    for (auto v : s.universe) {
        bool covered = std::any_of(s.edges.begin(), s.edges.end(),
                                   [v](const ParticipantSet& e) { return std::binary_search(e.begin(), e.end(), v); });
        if (!covered) r.violations.push_back({ViolationKind::UncoveredParticipant, {}, v});
    }
    return r;
}

inline bool isQuantum(const AccessStructure& s) {
    for (std::size_t i = 0; i < s.edges.size(); ++i)
        for (std::size_t j = i + 1; j < s.edges.size(); ++j)
            if (intersect(s.edges[i], s.edges[j]).empty()) return false;
    return true;
}

// Venn regions indexed by edge mask: regions[mask - 1].
struct RegionOccupancy {
    std::size_t edgeCount = 0;
    std::vector<ParticipantSet> regions;

    const ParticipantSet& region(std::uint32_t mask) const { return regions.at(mask - 1); }
    bool occupied(std::uint32_t mask) const { return !region(mask).empty(); }

    // Bit (mask - 1) set when region `mask` is non-empty.
    std::uint64_t bits() const {
        std::uint64_t b = 0;
        for (std::size_t i = 0; i < regions.size(); ++i)
            if (!regions[i].empty()) b |= std::uint64_t{1} << i;
        return b;
    }
};

inline RegionOccupancy regionOccupancy(const AccessStructure& s) {
    if (s.edges.size() > 16) throw Error(Errc::BadInput, "too many edges for region enumeration");
    RegionOccupancy r;
    r.edgeCount = s.edges.size();
    r.regions.resize((std::size_t{1} << r.edgeCount) - 1);
    for (auto v : s.universe) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < s.edges.size(); ++i)
            if (std::binary_search(s.edges[i].begin(), s.edges[i].end(), v)) mask |= 1u << i;
        if (mask) r.regions[mask - 1].push_back(v);
    }
    return r;
}

struct KindFlags {
    bool hyperstar = false;
    bool hypercycle = false;
    bool hyperpath = false;
};

namespace detail {

inline bool meets(const ParticipantSet& a, const ParticipantSet& b) { return !intersect(a, b).empty(); }

// Search edge orders where consecutive edges meet and all others are disjoint.
inline bool chainOrder(const std::vector<ParticipantSet>& edges, bool cyclic) {
    std::size_t m = edges.size();
    if (m == 0) return false;
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            for (std::size_t j = 0; j < m && ok; ++j) {
                if (i == j) continue;
                std::size_t d = i > j ? i - j : j - i;
                bool adjacent = d == 1 || (cyclic && d == m - 1);
                bool meet = meets(edges[order[i]], edges[order[j]]);
                if (adjacent != meet) ok = false;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
}

} // namespace detail

inline KindFlags kindPredicates(const AccessStructure& s) {
    KindFlags k;
    if (!s.edges.empty()) {
        ParticipantSet core = s.edges.front();
        for (const auto& e : s.edges) core = intersect(core, e);
        bool privates = true;
        for (std::size_t i = 0; i < s.edges.size() && privates; ++i) {
            ParticipantSet rest = s.edges[i];
            for (std::size_t j = 0; j < s.edges.size(); ++j)
                if (j != i) rest = difference(rest, s.edges[j]);
            privates = !rest.empty();
        }
        k.hyperstar = !core.empty() && privates;
    }
    k.hypercycle = detail::chainOrder(s.edges, true);
    k.hyperpath = detail::chainOrder(s.edges, false);
    return k;
}

inline AccessStructure remove(const AccessStructure& s, const ParticipantSet& z) {
    AccessStructure out;
    ParticipantSet zs = makeSet(z);
    out.universe = difference(s.universe, zs);
    for (const auto& e : s.edges) {
        auto rest = difference(e, zs);
        if (!rest.empty()) out.edges.push_back(rest);
    }
    return out;
}

// Inclusion-maximal unauthorized subsets of the universe (small universes only).
inline std::vector<ParticipantSet> maximalUnauthorized(const AccessStructure& s) {
    std::size_t n = s.universe.size();
    if (n > 24) throw Error(Errc::BadInput, "universe too large for subset enumeration");
    std::vector<std::uint32_t> edgeMasks;
    for (const auto& e : s.edges) {
        std::uint32_t m = 0;
        for (auto v : e)
            m |= 1u << (std::lower_bound(s.universe.begin(), s.universe.end(), v) - s.universe.begin());
        edgeMasks.push_back(m);
    }
    auto authorized = [&](std::uint32_t m) {
        for (auto e : edgeMasks)
            if ((e & m) == e) return true;
        return false;
    };
    std::vector<ParticipantSet> out;
    std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t m = 0; m <= full; ++m) {
        if (authorized(m)) continue;
        bool maximal = true;
        for (std::size_t i = 0; i < n && maximal; ++i)
            if (!(m & (1u << i)) && !authorized(m | (1u << i))) maximal = false;
        if (!maximal) continue;
        ParticipantSet set;
        for (std::size_t i = 0; i < n; ++i)
            if (m & (1u << i)) set.push_back(s.universe[i]);
        out.push_back(set);
    }
    return out;
}

// ---- three-edge classification ----

enum class ClassId { G1 = 1, G2, G3, G4, G5, G6, G7, G8, G9, G10, G11, G12 };

inline std::string className(ClassId c) { return "G" + std::to_string(static_cast<int>(c)); }

inline ClassId parseClassId(const std::string& s) {
    std::string t = s;
    if (!t.empty() && (t[0] == 'G' || t[0] == 'g')) t = t.substr(1);
    try {
        std::size_t used = 0;
        int v = std::stoi(t, &used);
        if (used == t.size() && v >= 1 && v <= 12) return static_cast<ClassId>(v);
    } catch (const std::exception&) {
    }
    throw Error(Errc::BadInput, "unknown class '" + s + "', expected G1..G12");
}

// Block-level templates: edge lists over block indices 1..k.
inline const std::vector<std::vector<int>>& classTemplate(ClassId c) {
    static const std::array<std::vector<std::vector<int>>, 12> t = {{
        {{1, 2}, {1, 3}, {1, 4}},
        {{1, 2, 4}, {1, 2, 5}, {1, 3}},
        {{1, 2, 4}, {1, 2, 3, 5}, {1, 3, 6}},
        {{1, 2, 4, 7}, {1, 2, 3, 5}, {1, 3, 6, 7}},
        {{1, 2}, {1, 3}, {2, 3}},
        {{1, 2, 4}, {1, 3, 4}, {2, 3, 4}},
        {{1, 2, 4}, {1, 3}, {2, 3}},
        {{1, 2, 4}, {1, 3}, {2, 3, 5}},
        {{1, 2, 4}, {1, 3, 6}, {2, 3, 5}},
        {{1, 2, 4}, {1, 3, 4}, {2, 3, 4, 5}},
        {{1, 2, 4}, {1, 3, 4, 6}, {2, 3, 4, 5}},
        {{1, 2, 3}, {1, 2, 4}, {2, 3, 5}},
    }};
    return t.at(static_cast<std::size_t>(c) - 1);
}

inline std::size_t blockCount(ClassId c) {
    int k = 0;
    for (const auto& e : classTemplate(c))
        for (int b : e) k = std::max(k, b);
    return static_cast<std::size_t>(k);
}

// Participants numbered consecutively, block by block.
inline AccessStructure templateStructure(ClassId c, const std::vector<std::size_t>& blockSizes) {
    std::size_t k = blockCount(c);
    if (blockSizes.size() != k)
        throw Error(Errc::BadInput, className(c) + " needs " + std::to_string(k) + " block sizes");
    std::vector<ParticipantSet> blocks(k);
    Participant next = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (blockSizes[i] == 0) throw Error(Errc::BadInput, "block sizes must be positive");
        for (std::size_t j = 0; j < blockSizes[i]; ++j) blocks[i].push_back(next++);
    }
    std::vector<ParticipantSet> edges;
    for (const auto& e : classTemplate(c)) {
        ParticipantSet edge;
        for (int b : e) edge.insert(edge.end(), blocks[b - 1].begin(), blocks[b - 1].end());
        edges.push_back(makeSet(edge));
    }
    return AccessStructure::fromEdges(edges);
}

namespace detail {

using Perm3 = std::array<int, 3>;

inline const std::array<Perm3, 6>& perms3() {
    static const std::array<Perm3, 6> p = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    return p;
}

// Region mask after sending edge t to edge perm[t].
inline std::uint32_t mapMask(std::uint32_t mask, const Perm3& perm) {
    std::uint32_t out = 0;
    for (int t = 0; t < 3; ++t)
        if (mask & (1u << t)) out |= 1u << perm[t];
    return out;
}

inline std::uint32_t mapPattern(std::uint32_t bits, const Perm3& perm) {
    std::uint32_t out = 0;
    for (std::uint32_t m = 1; m < 8; ++m)
        if (bits & (1u << (m - 1))) out |= 1u << (mapMask(m, perm) - 1);
    return out;
}

inline std::uint32_t templatePattern(ClassId c) {
    std::uint32_t bits = 0;
    const auto& t = classTemplate(c);
    for (std::size_t b = 1; b <= blockCount(c); ++b) {
        std::uint32_t mask = 0;
        for (int e = 0; e < 3; ++e)
            if (std::find(t[e].begin(), t[e].end(), static_cast<int>(b)) != t[e].end()) mask |= 1u << e;
        bits |= 1u << (mask - 1);
    }
    return bits;
}

} // namespace detail

inline std::uint32_t canonicalPattern(std::uint32_t bits) {
    std::uint32_t best = ~0u;
    for (const auto& p : detail::perms3()) best = std::min(best, detail::mapPattern(bits, p));
    return best;
}

// Occupancy patterns on three edges that yield a valid quantum structure,
// reduced to canonical representatives.
inline std::vector<std::uint32_t> enumerateOccupancyClasses() {
    std::set<std::uint32_t> reps;
    for (std::uint32_t bits = 1; bits < 128; ++bits) {
        auto occ = [bits](std::uint32_t m) { return (bits >> (m - 1)) & 1u; };
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i)
            for (int j = 0; j < 3 && ok; ++j) {
                if (i == j) continue;
                bool meet = false, escapes = false;
                for (std::uint32_t m = 1; m < 8; ++m) {
                    if (!occ(m) || !(m & (1u << i))) continue;
                    if (m & (1u << j)) meet = true;
                    else escapes = true;
                }
                ok = meet && escapes;
            }
        if (ok) reps.insert(canonicalPattern(bits));
    }
    return {reps.begin(), reps.end()};
}

struct HypercycleClass {
    ClassId classId;
    std::vector<std::size_t> blockSizes;
    std::vector<ParticipantSet> blocks; // A_1..A_k
    std::array<int, 3> edgeOrder;       // template edge t is structure edge edgeOrder[t]
};

inline HypercycleClass classify(const AccessStructure& s) {
    if (s.edges.size() != 3)
        throw Error(Errc::NotClassifiable, "classification needs exactly 3 hyperedges, got " +
                                               std::to_string(s.edges.size()));
    if (!validate(s).ok()) throw Error(Errc::NotClassifiable, "structure fails validation");
    if (!isQuantum(s)) throw Error(Errc::NotClassifiable, "structure is not quantum");
    auto occ = regionOccupancy(s);
    auto bits = static_cast<std::uint32_t>(occ.bits());
    auto canon = canonicalPattern(bits);
    for (int ci = 1; ci <= 12; ++ci) {
        auto c = static_cast<ClassId>(ci);
        auto tbits = detail::templatePattern(c);
        if (canonicalPattern(tbits) != canon) continue;
        for (const auto& perm : detail::perms3()) {
            if (detail::mapPattern(tbits, perm) != bits) continue;
            HypercycleClass h{c, {}, {}, perm};
            const auto& t = classTemplate(c);
            for (std::size_t b = 1; b <= blockCount(c); ++b) {
                std::uint32_t mask = 0;
                for (int e = 0; e < 3; ++e)
                    if (std::find(t[e].begin(), t[e].end(), static_cast<int>(b)) != t[e].end()) mask |= 1u << e;
                h.blocks.push_back(occ.region(detail::mapMask(mask, perm)));
                h.blockSizes.push_back(h.blocks.back().size());
            }
            return h;
        }
    }
    throw Error(Errc::NotClassifiable, "occupancy pattern matches none of the 12 classes");
}

} // namespace hqss::access
