#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hqss/access.hpp"
#include "hqss/error.hpp"
#include "hqss/ffield.hpp"
#include "hqss/rng.hpp"
#include "hqss/simmons.hpp"

namespace hqss::css {

using access::ClassId;
using access::Participant;
using access::ParticipantSet;

// ---- primitives ----

template <class Draw>
FVector additiveSplit(Elem secret, std::size_t m, Draw&& draw, const FieldCtx& f) {
    if (m == 0) throw Error(Errc::BadInput, "additive split needs at least one share");
    FVector out(m);
    Elem acc = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        out[i] = draw();
        acc = f.add(acc, out[i]);
    }
    out[m - 1] = f.sub(secret % f.p(), acc);
    return out;
}

inline FVector additiveSplit(Elem secret, std::size_t m, Rng& rng, const FieldCtx& f) {
    return additiveSplit(secret, m, [&] { return rng.uniform(f.p()); }, f);
}

inline Elem additiveReconstruct(const FVector& shares, const FieldCtx& f) {
    Elem s = 0;
    for (auto v : shares) s = f.add(s, v % f.p());
    return s;
}

// f(x) = secret + coeffs[0] x + coeffs[1] x^2 + ...
inline FVector shamirDeal(Elem secret, const FVector& coeffs, const FVector& points, const FieldCtx& f) {
    FVector out;
    for (auto x : points) {
        if (x % f.p() == 0) throw Error(Errc::BadInput, "Shamir points must be nonzero");
        Elem acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x % f.p()), coeffs[i]);
        out.push_back(f.add(f.mul(acc, x % f.p()), secret % f.p()));
    }
    return out;
}

// Solves the Vandermonde system through all pairs; returns the constant term.
inline FVector interpolate(const std::vector<std::pair<Elem, Elem>>& pairs, const FieldCtx& f) {
    std::size_t n = pairs.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (pairs[i].first % f.p() == pairs[j].first % f.p())
                throw Error(Errc::SingularSystem, "repeated evaluation point");
    ff::FMatrix a(n, FVector(n));
    FVector b(n);
    for (std::size_t i = 0; i < n; ++i) {
        Elem xp = 1;
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = xp;
            xp = f.mul(xp, pairs[i].first % f.p());
        }
        b[i] = pairs[i].second % f.p();
    }
    auto sol = ff::solveLinear(a, b, f);
    if (!sol) throw Error(Errc::SingularSystem, "Vandermonde system has no solution");
    return *sol;
}

inline Elem shamirCombine(const std::vector<std::pair<Elem, Elem>>& pairs, const FieldCtx& f) {
    return interpolate(pairs, f).front();
}

// ---- recipe tree ----

enum class NodeKind { Leaf, Threshold, Sum, Replicate, Layers, Mds, Simmons };

inline const char* nodeKindName(NodeKind k) {
    switch (k) {
    case NodeKind::Leaf: return "leaf";
    case NodeKind::Threshold: return "threshold";
    case NodeKind::Sum: return "sum";
    case NodeKind::Replicate: return "replicate";
    case NodeKind::Layers: return "layers";
    case NodeKind::Mds: return "mds";
    case NodeKind::Simmons: return "simmons";
    }
    return "?";
}

struct Node {
    NodeKind kind = NodeKind::Leaf;
    std::string label;          // leaf: share tag; otherwise component name
    std::size_t block = 0;      // leaf: 0-based block index
    std::size_t leaf = 0;       // leaf: id assigned at finalize
    std::size_t threshold = 0;  // Threshold, Mds
    FVector points;             // Threshold: identity per child; Mds: evaluation point per child
    std::size_t simmons = 0;    // Simmons: setup index
    std::vector<Node> children;
};

// Number of field elements a node shares.
inline std::size_t arity(const Node& n) {
    switch (n.kind) {
    case NodeKind::Sum:
    case NodeKind::Replicate: return arity(n.children.front());
    case NodeKind::Layers: {
        std::size_t a = 0;
        for (const auto& c : n.children) a += arity(c);
        return a;
    }
    case NodeKind::Mds: return n.threshold;
    default: return 1;
    }
}

struct LeafInfo {
    std::size_t block = 0;
    std::string tag;
};

enum class Variant { Default, Geometric, Fallback };

inline const char* variantName(Variant v) {
    switch (v) {
    case Variant::Default: return "default";
    case Variant::Geometric: return "geometric";
    case Variant::Fallback: return "fallback";
    }
    return "?";
}

struct SchemeDescriptor {
    std::uint32_t p = 11;
    access::AccessStructure structure;
    std::optional<ClassId> classId;
    Variant variant = Variant::Default;
    std::vector<ParticipantSet> blocks; // A_1..A_k
    FVector identities;                 // x_i per block
    std::size_t secretLength = 1;
    Node root;
    std::vector<LeafInfo> leaves;
    std::vector<SimmonsSetup> simmons;

    std::size_t blockOf(Participant v) const {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (std::binary_search(blocks[i].begin(), blocks[i].end(), v)) return i;
        throw Error(Errc::BadIndex, "participant " + std::to_string(v) + " is in no block");
    }

    std::vector<std::size_t> leavesOfBlock(std::size_t b) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < leaves.size(); ++i)
            if (leaves[i].block == b) out.push_back(i);
        return out;
    }
};

namespace detail {

inline void assignLeaves(Node& n, std::vector<LeafInfo>& leaves) {
    if (n.kind == NodeKind::Leaf) {
        n.leaf = leaves.size();
        leaves.push_back({n.block, n.label});
        return;
    }
    for (auto& c : n.children) assignLeaves(c, leaves);
}

} // namespace detail

inline void finalize(SchemeDescriptor& d) {
    d.leaves.clear();
    detail::assignLeaves(d.root, d.leaves);
    d.secretLength = arity(d.root);
}

// Shares per member of each block.
inline std::vector<std::size_t> blockShareCounts(const SchemeDescriptor& d) {
    std::vector<std::size_t> c(d.blocks.size(), 0);
    for (const auto& l : d.leaves) ++c[l.block];
    return c;
}

inline std::map<Participant, std::size_t> participantShareCounts(const SchemeDescriptor& d) {
    auto c = blockShareCounts(d);
    std::map<Participant, std::size_t> out;
    for (std::size_t b = 0; b < d.blocks.size(); ++b)
        for (auto v : d.blocks[b]) out[v] = c[b];
    return out;
}

inline std::size_t maxShareCount(const SchemeDescriptor& d) {
    auto c = blockShareCounts(d);
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end());
}

inline Rational classicalRate(const SchemeDescriptor& d) {
    return Rational(static_cast<std::int64_t>(d.secretLength), static_cast<std::int64_t>(maxShareCount(d)));
}

// ---- builders ----

struct BuildOptions {
    Variant variant = Variant::Default;
    std::uint64_t seed = 1;        // only the geometric layer draws from it
    std::size_t simmonsBudget = 4000;
};

namespace detail {

using BlockEdge = std::vector<int>; // 1-based block numbers, sorted

inline BlockEdge minus(const BlockEdge& a, const BlockEdge& b) {
    BlockEdge out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline BlockEdge meet(const BlockEdge& a, const BlockEdge& b) {
    BlockEdge out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::string digits(const BlockEdge& e) {
    std::string s;
    for (int b : e) s += "A" + std::to_string(b);
    return s;
}

class Builder {
public:
    explicit Builder(const FVector& ids) : ids_(ids) {}

    Node leaf(int block, const std::string& prefix) const {
        Node n;
        n.kind = NodeKind::Leaf;
        n.block = static_cast<std::size_t>(block - 1);
        n.label = prefix + "_" + std::to_string(block);
        return n;
    }

    Node threshold(const BlockEdge& blocks, std::size_t t, const std::string& prefix) const {
        Node n;
        n.kind = NodeKind::Threshold;
        n.threshold = t;
        n.label = "(" + std::to_string(t) + "," + std::to_string(blocks.size()) + ")-threshold on " + digits(blocks);
        for (int b : blocks) {
            n.points.push_back(ids_.at(static_cast<std::size_t>(b - 1)));
            n.children.push_back(leaf(b, prefix));
        }
        return n;
    }

    // Every block of the set is needed.
    Node allOf(const BlockEdge& blocks, const std::string& prefix) const {
        if (blocks.size() == 1) return leaf(blocks.front(), prefix);
        return threshold(blocks, blocks.size(), prefix);
    }

    static Node combine(NodeKind kind, std::vector<Node> children, const std::string& label) {
        Node n;
        n.kind = kind;
        n.label = label;
        n.children = std::move(children);
        return n;
    }

    // Ideal scheme for the two-edge structure {a, b}.
    Node star2(const BlockEdge& a, const BlockEdge& b, const std::string& prefix) const {
        BlockEdge c = meet(a, b);
        Node arms = combine(NodeKind::Replicate, {allOf(minus(a, c), prefix), allOf(minus(b, c), prefix)},
                            "arms " + digits(minus(a, c)) + "|" + digits(minus(b, c)));
        if (c.empty()) return arms;
        return combine(NodeKind::Sum, {allOf(c, prefix), std::move(arms)}, "star " + digits(a) + "," + digits(b));
    }

    // Pairwise two-edge stars mixed by a [3,2] MDS code: each edge sits in two stars.
    Node pairwiseMds(const std::vector<BlockEdge>& e, const std::string& prefix) const {
        Node n;
        n.kind = NodeKind::Mds;
        n.threshold = 2;
        n.label = "mds over pairwise stars";
        int j = 1;
        for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            n.children.push_back(star2(e[a], e[b], prefix + std::to_string(j) + ")"));
            n.points.push_back(static_cast<Elem>(j));
            ++j;
        }
        return n;
    }

    Node twoLayerLeaf(int block, const std::string& label) const {
        return combine(NodeKind::Layers, {leaf(block, "s(1,1)"), leaf(block, "s(1,2)")}, label);
    }

    // Recursive core split, then one all-of component per remaining edge.
    Node fallback(std::vector<BlockEdge> edges, int depth) const {
        BlockEdge core = edges.front();
        for (const auto& e : edges) core = meet(core, e);
        std::string pre = "y(" + std::to_string(depth);
        if (!core.empty()) {
            std::vector<BlockEdge> rest;
            for (const auto& e : edges) {
                auto r = minus(e, core);
                if (!r.empty()) rest.push_back(r);
            }
            Node c = allOf(core, pre + ",0)");
            if (rest.size() < edges.size()) return c;
            return combine(NodeKind::Sum, {c, fallback(rest, depth + 1)}, "core " + digits(core));
        }
        std::vector<Node> parts;
        for (std::size_t i = 0; i < edges.size(); ++i)
            parts.push_back(allOf(edges[i], pre + "," + std::to_string(i + 1) + ")"));
        return combine(NodeKind::Replicate, std::move(parts), "per-edge");
    }

private:
    FVector ids_;
};

inline std::vector<BlockEdge> templateEdges(ClassId c) {
    std::vector<BlockEdge> out;
    for (const auto& e : access::classTemplate(c)) out.push_back(BlockEdge(e.begin(), e.end()));
    return out;
}

inline std::vector<BlockEdge> removeBlock(const std::vector<BlockEdge>& edges, int block) {
    std::vector<BlockEdge> out;
    for (const auto& e : edges) out.push_back(minus(e, {block}));
    return out;
}

} // namespace detail

// Descriptor over explicit blocks; blocks[i] is A_{i+1} of the class template.
inline SchemeDescriptor buildScheme(ClassId c, const std::vector<ParticipantSet>& blocks,
                                    const access::AccessStructure& structure, std::uint32_t p,
                                    const BuildOptions& opt = {}) {
    FieldCtx f(p);
    SchemeDescriptor d;
    d.p = p;
    d.structure = structure;
    d.classId = c;
    d.variant = opt.variant;
    d.blocks = blocks;
    if (blocks.size() >= p)
        throw Error(Errc::BadInput, "p must exceed the number of block identities (" + std::to_string(blocks.size()) + ")");
    for (std::size_t i = 0; i < blocks.size(); ++i) d.identities.push_back(static_cast<Elem>(i + 1));
    detail::Builder b(d.identities);
    auto e = detail::templateEdges(c);
    int ci = static_cast<int>(c);

    if (opt.variant == Variant::Fallback) {
        d.root = b.fallback(e, 1);
        finalize(d);
        return d;
    }
    if (ci <= 4)
        throw Error(Errc::UnsupportedClass,
                    access::className(c) + " is a hyperstar class; use the fallback variant explicitly");
    if (opt.variant == Variant::Geometric && c != ClassId::G9)
        throw Error(Errc::UnsupportedClass, "the geometric variant is only defined for G9");

    switch (c) {
    case ClassId::G5:
        d.root = b.threshold({1, 2, 3}, 2, "y");
        break;
    case ClassId::G6:
        d.root = detail::Builder::combine(NodeKind::Sum, {b.leaf(4, "y(1)"), b.threshold({1, 2, 3}, 2, "y(2)")},
                                          "core A4 + G5 on Rem");
        break;
    case ClassId::G7:
    case ClassId::G8:
    case ClassId::G9:
        if (opt.variant == Variant::Geometric) {
            Node d1 = detail::Builder::combine(
                NodeKind::Replicate, {b.threshold({1, 2, 4}, 3, "y(1,1)"), b.star2(e[1], e[2], "y(1,2)")}, "layer 1");
            Node d2;
            d2.kind = NodeKind::Simmons;
            d2.label = "layer 2";
            access::AccessStructure blockLevel = access::AccessStructure::fromEdges({{1, 2, 4}, {1, 3, 6}, {2, 3, 5}});
            std::map<Participant, std::size_t> mult{{3, 2}, {4, 2}};
            Rng rng(opt.seed);
            auto setup = simmonsSetup(blockLevel, mult, 6, f, rng, SetupPolicy::AuthorizedOnly, opt.simmonsBudget);
            for (const auto& pt : setup.points) {
                Node l = b.leaf(pt.owner, "y(2,1)");
                l.label = "y(2,1)_" + std::to_string(pt.owner) + "," + std::to_string(pt.index);
                d2.children.push_back(std::move(l));
            }
            d.simmons.push_back(std::move(setup));
            d.root = detail::Builder::combine(NodeKind::Layers, {std::move(d1), std::move(d2)}, "two-layer");
        } else {
            d.root = b.pairwiseMds(e, "y(");
        }
        break;
    case ClassId::G10:
    case ClassId::G11:
        d.root = detail::Builder::combine(
            NodeKind::Sum, {b.twoLayerLeaf(4, "core A4"), b.pairwiseMds(detail::removeBlock(e, 4), "y(")},
            "core A4 + Rem");
        break;
    case ClassId::G12: {
        // Rem(G12, A2) is the path {A1A3, A1A4, A3A5}; each layer covers all three edges.
        Node d1 = detail::Builder::combine(
            NodeKind::Replicate, {b.threshold({1, 4}, 2, "y(1,1)"), b.star2({1, 3}, {3, 5}, "y(1,2)")}, "layer 1");
        Node d2 = detail::Builder::combine(
            NodeKind::Replicate, {b.threshold({3, 5}, 2, "y(2,1)"), b.star2({1, 3}, {1, 4}, "y(2,2)")}, "layer 2");
        Node path = detail::Builder::combine(NodeKind::Layers, {std::move(d1), std::move(d2)}, "path layers");
        d.root = detail::Builder::combine(NodeKind::Sum, {b.twoLayerLeaf(2, "core A2"), std::move(path)},
                                          "core A2 + Rem");
        break;
    }
    default:
        break;
    }
    finalize(d);
    return d;
}

// Class template with the given block sizes, participants numbered 1..n.
inline SchemeDescriptor buildScheme(ClassId c, const std::vector<std::size_t>& blockSizes, std::uint32_t p,
                                    const BuildOptions& opt = {}) {
    auto s = access::templateStructure(c, blockSizes);
    auto h = access::classify(s);
    return buildScheme(c, h.blocks, s, p, opt);
}

inline SchemeDescriptor buildScheme(const access::AccessStructure& s, std::uint32_t p, const BuildOptions& opt = {}) {
    auto h = access::classify(s);
    return buildScheme(h.classId, h.blocks, s, p, opt);
}

// ---- dealing ----

struct TaggedShare {
    std::string tag;
    std::size_t leaf = 0;
    Elem value = 0;
};

struct ShareBundle {
    std::map<Participant, std::vector<TaggedShare>> shares;
    FVector leafValues; // block subkeys, indexed by leaf id
};

namespace detail {

template <class Draw>
void dealNode(const Node& n, const FVector& value, Draw& draw, const SchemeDescriptor& d, const FieldCtx& f,
              FVector& leaves) {
    switch (n.kind) {
    case NodeKind::Leaf:
        leaves[n.leaf] = value[0];
        return;
    case NodeKind::Threshold: {
        FVector coeffs(n.threshold - 1);
        for (auto& c : coeffs) c = draw();
        auto ys = shamirDeal(value[0], coeffs, n.points, f);
        for (std::size_t i = 0; i < n.children.size(); ++i) dealNode(n.children[i], {ys[i]}, draw, d, f, leaves);
        return;
    }
    case NodeKind::Sum: {
        FVector rest = value;
        for (std::size_t i = 0; i + 1 < n.children.size(); ++i) {
            FVector part(value.size());
            for (std::size_t h = 0; h < part.size(); ++h) {
                part[h] = draw();
                rest[h] = f.sub(rest[h], part[h]);
            }
            dealNode(n.children[i], part, draw, d, f, leaves);
        }
        dealNode(n.children.back(), rest, draw, d, f, leaves);
        return;
    }
    case NodeKind::Replicate:
        for (const auto& c : n.children) dealNode(c, value, draw, d, f, leaves);
        return;
    case NodeKind::Layers: {
        std::size_t off = 0;
        for (const auto& c : n.children) {
            std::size_t a = arity(c);
            dealNode(c, FVector(value.begin() + off, value.begin() + off + a), draw, d, f, leaves);
            off += a;
        }
        return;
    }
    case NodeKind::Mds:
        for (std::size_t j = 0; j < n.children.size(); ++j) {
            Elem z = 0, xp = 1;
            for (std::size_t h = 0; h < n.threshold; ++h) {
                z = f.add(z, f.mul(value[h], xp));
                xp = f.mul(xp, n.points[j]);
            }
            dealNode(n.children[j], {z}, draw, d, f, leaves);
        }
        return;
    case NodeKind::Simmons: {
        const auto& s = d.simmons.at(n.simmons);
        FVector a(s.m, 0);
        for (std::size_t i = 0; i + 1 < s.m; ++i) a[i] = draw();
        a[s.m - 1] = 1;
        auto lambda = simmonsDeal(s, value[0], a, f);
        for (std::size_t i = 0; i < n.children.size(); ++i) dealNode(n.children[i], {lambda[i]}, draw, d, f, leaves);
        return;
    }
    }
}

} // namespace detail

// Block subkeys for every leaf.
template <class Draw>
FVector dealLeaves(const SchemeDescriptor& d, const FVector& secret, Draw&& draw, const FieldCtx& f) {
    if (secret.size() != d.secretLength)
        throw Error(Errc::BadInput, "secret length " + std::to_string(secret.size()) + " != " +
                                        std::to_string(d.secretLength));
    FVector s(secret.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = secret[i] % f.p();
    FVector leaves(d.leaves.size(), 0);
    detail::dealNode(d.root, s, draw, d, f, leaves);
    return leaves;
}

// Splits each block subkey additively across the block's members.
template <class Draw>
ShareBundle splitToMembers(const SchemeDescriptor& d, const FVector& leafValues, Draw&& draw, const FieldCtx& f) {
    ShareBundle b;
    b.leafValues = leafValues;
    for (std::size_t l = 0; l < d.leaves.size(); ++l) {
        const auto& members = d.blocks[d.leaves[l].block];
        auto parts = additiveSplit(leafValues[l], members.size(), draw, f);
        for (std::size_t i = 0; i < members.size(); ++i)
            b.shares[members[i]].push_back({d.leaves[l].tag, l, parts[i]});
    }
    return b;
}

template <class Draw>
ShareBundle dealWith(const SchemeDescriptor& d, const FVector& secret, Draw&& draw, const FieldCtx& f) {
    auto leaves = dealLeaves(d, secret, draw, f);
    return splitToMembers(d, leaves, draw, f);
}

inline ShareBundle dealSecret(const SchemeDescriptor& d, const FVector& secret, Rng& rng, const FieldCtx& f) {
    return dealWith(d, secret, [&] { return rng.uniform(f.p()); }, f);
}

// Uniform draws consumed by one deal.
inline std::size_t randomnessCount(const SchemeDescriptor& d) {
    FieldCtx f(d.p);
    std::size_t n = 0;
    dealWith(d, FVector(d.secretLength, 0), [&] { ++n; return Elem{0}; }, f);
    return n;
}

// ---- recovery ----

struct Recovery {
    std::optional<FVector> secret;
    std::string failedComponent; // first component lacking enough input
    bool inconsistent = false;   // redundant inputs disagreed

    explicit operator bool() const { return secret.has_value(); }
};

namespace detail {

inline bool consistentPoly(const std::vector<std::pair<Elem, Elem>>& pts, const FVector& coeffs, const FieldCtx& f) {
    for (const auto& [x, y] : pts) {
        Elem acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeffs[i]);
        if (acc != y) return false;
    }
    return true;
}

inline Recovery evalNode(const Node& n, const std::vector<std::optional<Elem>>& leaves, const SchemeDescriptor& d,
                         const FieldCtx& f) {
    auto fail = [&](const std::string& why) {
        Recovery r;
        r.failedComponent = why;
        return r;
    };
    switch (n.kind) {
    case NodeKind::Leaf:
        if (!leaves[n.leaf]) return fail(n.label);
        return {FVector{*leaves[n.leaf]}, {}, false};
    case NodeKind::Threshold:
    case NodeKind::Mds: {
        std::vector<std::pair<Elem, Elem>> pts;
        std::vector<FVector> vals;
        std::string firstFail;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            auto r = evalNode(n.children[i], leaves, d, f);
            if (r.inconsistent) return r;
            if (r.secret) pts.push_back({n.points[i], (*r.secret)[0]});
            else if (firstFail.empty()) firstFail = r.failedComponent;
        }
        if (pts.size() < n.threshold) return fail(n.label + " <- " + firstFail);
        auto coeffs = interpolate({pts.begin(), pts.begin() + static_cast<long>(n.threshold)}, f);
        if (!consistentPoly(pts, coeffs, f)) {
            Recovery r = fail(n.label);
            r.inconsistent = true;
            return r;
        }
        if (n.kind == NodeKind::Threshold) return {FVector{coeffs[0]}, {}, false};
        return {coeffs, {}, false};
    }
    case NodeKind::Sum: {
        FVector acc;
        for (const auto& c : n.children) {
            auto r = evalNode(c, leaves, d, f);
            if (!r) return r.inconsistent ? r : fail(n.label + " <- " + r.failedComponent);
            if (acc.empty()) acc.assign(r.secret->size(), 0);
            for (std::size_t h = 0; h < acc.size(); ++h) acc[h] = f.add(acc[h], (*r.secret)[h]);
        }
        return {acc, {}, false};
    }
    case NodeKind::Replicate: {
        std::optional<FVector> got;
        std::string firstFail;
        for (const auto& c : n.children) {
            auto r = evalNode(c, leaves, d, f);
            if (r.inconsistent) return r;
            if (!r) {
                if (firstFail.empty()) firstFail = r.failedComponent;
                continue;
            }
            if (got && *got != *r.secret) {
                Recovery bad = fail(n.label);
                bad.inconsistent = true;
                return bad;
            }
            got = r.secret;
        }
        if (!got) return fail(n.label + " <- " + firstFail);
        return {got, {}, false};
    }
    case NodeKind::Layers: {
        FVector out;
        for (const auto& c : n.children) {
            auto r = evalNode(c, leaves, d, f);
            if (!r) return r.inconsistent ? r : fail(n.label + " <- " + r.failedComponent);
            out.insert(out.end(), r.secret->begin(), r.secret->end());
        }
        return {out, {}, false};
    }
    case NodeKind::Simmons: {
        std::vector<std::size_t> idx;
        FVector lambdas;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            const auto& l = leaves[n.children[i].leaf];
            if (l) {
                idx.push_back(i);
                lambdas.push_back(*l);
            }
        }
        auto k = combineLambdas(d.simmons.at(n.simmons), idx, lambdas, f);
        if (!k) return fail(n.label + " (affine system inconsistent)");
        return {FVector{*k}, {}, false};
    }
    }
    return fail("unknown node");
}

} // namespace detail

// Evaluate the recipe on whatever block subkeys are present.
inline Recovery recoverFromLeaves(const SchemeDescriptor& d, const std::vector<std::optional<Elem>>& leaves,
                                  const FieldCtx& f) {
    return detail::evalNode(d.root, leaves, d, f);
}

// Block subkey of each leaf whose block is fully inside the subset.
inline std::vector<std::optional<Elem>> blockSubkeys(const SchemeDescriptor& d, const ParticipantSet& subset,
                                                     const ShareBundle& bundle, const FieldCtx& f) {
    std::vector<std::optional<Elem>> out(d.leaves.size());
    for (std::size_t l = 0; l < d.leaves.size(); ++l) {
        const auto& members = d.blocks[d.leaves[l].block];
        if (!access::isSubset(members, subset)) continue;
        Elem acc = 0;
        bool complete = true;
        for (auto v : members) {
            auto it = bundle.shares.find(v);
            if (it == bundle.shares.end()) { complete = false; break; }
            auto sh = std::find_if(it->second.begin(), it->second.end(),
                                   [l](const TaggedShare& t) { return t.leaf == l; });
            if (sh == it->second.end()) { complete = false; break; }
            acc = f.add(acc, sh->value);
        }
        if (complete) out[l] = acc;
    }
    return out;
}

inline Recovery recoverSecret(const SchemeDescriptor& d, const ParticipantSet& subset, const ShareBundle& bundle,
                              const FieldCtx& f) {
    return recoverFromLeaves(d, blockSubkeys(d, access::makeSet(subset), bundle, f), f);
}

} // namespace hqss::css
