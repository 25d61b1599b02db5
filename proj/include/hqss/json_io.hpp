#pragma once

#include <string>

#include <json.hpp>

#include "hqss/catalog.hpp"
#include "hqss/css.hpp"
#include "hqss/metrics.hpp"
#include "hqss/protocol.hpp"
#include "hqss/verify.hpp"

namespace hqss::io {

using nlohmann::ordered_json;

inline ordered_json toJson(const access::AccessStructure& s) {
    ordered_json j;
    j["universe"] = s.universe;
    j["edges"] = s.edges;
    return j;
}

// {"universe":[...],"edges":[[...],...]}; universe defaults to the union of the edges.
inline access::AccessStructure structureFromJson(const ordered_json& j) {
    if (!j.contains("edges") || !j["edges"].is_array()) throw Error(Errc::BadInput, "structure JSON needs an edges array");
    std::vector<access::ParticipantSet> edges;
    for (const auto& e : j["edges"]) edges.push_back(e.get<std::vector<int>>());
    auto s = access::AccessStructure::fromEdges(edges);
    if (j.contains("universe")) s.universe = access::makeSet(j["universe"].get<std::vector<int>>());
    return s;
}

inline access::AccessStructure parseAnyStructure(const std::string& text) {
    auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && text[first] == '{' && text.find('"') != std::string::npos)
        return structureFromJson(ordered_json::parse(text));
    return access::parseStructure(text);
}

inline std::string rationalString(const Rational& r) { return toString(r); }

inline ordered_json toJson(const css::Node& n) {
    ordered_json j;
    j["kind"] = css::nodeKindName(n.kind);
    if (n.kind == css::NodeKind::Leaf) {
        j["tag"] = n.label;
        j["block"] = n.block + 1;
        return j;
    }
    j["label"] = n.label;
    if (n.kind == css::NodeKind::Threshold || n.kind == css::NodeKind::Mds) {
        j["threshold"] = n.threshold;
        j["points"] = n.points;
    }
    if (n.kind == css::NodeKind::Simmons) j["setup"] = n.simmons;
    ordered_json kids = ordered_json::array();
    for (const auto& c : n.children) kids.push_back(toJson(c));
    j["children"] = kids;
    return j;
}

inline ordered_json toJson(const css::SimmonsSetup& s) {
    ordered_json j;
    j["m"] = s.m;
    j["k0"] = s.k0;
    j["epsilon"] = s.epsilon;
    ordered_json pts = ordered_json::array();
    for (const auto& p : s.points) pts.push_back({{"owner", p.owner}, {"index", p.index}, {"coords", p.coords}});
    j["points"] = pts;
    return j;
}

inline ordered_json toJson(const css::SchemeDescriptor& d) {
    ordered_json j;
    j["p"] = d.p;
    j["structure"] = toJson(d.structure);
    j["class"] = d.classId ? access::className(*d.classId) : "none";
    j["variant"] = css::variantName(d.variant);
    j["blocks"] = d.blocks;
    j["identities"] = d.identities;
    j["secretLength"] = d.secretLength;
    j["maxShareCount"] = css::maxShareCount(d);
    j["classicalRate"] = rationalString(css::classicalRate(d));
    ordered_json layout = ordered_json::object();
    for (const auto& [v, n] : css::participantShareCounts(d)) {
        ordered_json tags = ordered_json::array();
        auto b = d.blockOf(v);
        for (auto l : d.leavesOfBlock(b)) tags.push_back(d.leaves[l].tag);
        layout[std::to_string(v)] = tags;
    }
    j["shareLayout"] = layout;
    j["recipe"] = toJson(d.root);
    ordered_json sim = ordered_json::array();
    for (const auto& s : d.simmons) sim.push_back(toJson(s));
    j["simmons"] = sim;
    return j;
}

inline ordered_json toJson(const css::ShareBundle& b) {
    ordered_json j = ordered_json::object();
    for (const auto& [v, shares] : b.shares) {
        ordered_json arr = ordered_json::array();
        for (const auto& s : shares) arr.push_back({{"tag", s.tag}, {"value", s.value}});
        j[std::to_string(v)] = arr;
    }
    return j;
}

inline ordered_json toJson(const css::PerfectReport& r) {
    ordered_json j;
    j["recoverOk"] = r.recoverOk;
    j["secrecyOk"] = r.secrecyOk;
    j["mode"] = r.exhaustive ? "exhaustive" : "sampled";
    j["transcripts"] = r.transcripts;
    j["authorizedSubsets"] = r.authorizedSubsets;
    j["unauthorizedSubsets"] = r.unauthorizedSubsets;
    j["recoveryFailures"] = r.recoveryFailures;
    if (!r.exhaustive) {
        j["chiSquareTests"] = r.chiTests;
        j["minPValue"] = r.minPValue;
        j["familyAlpha"] = r.alpha;
    }
    j["findings"] = r.findings;
    return j;
}

inline ordered_json toJson(const protocol::HopRecord& h) {
    return {{"phase", protocol::phaseName(h.phase)},
            {"sender", h.sender},
            {"receiver", h.receiver},
            {"tag", h.tag},
            {"basisIndex", h.basisIndex},
            {"nInfo", h.nInfo},
            {"nDecoy", h.nDecoy},
            {"decoyErrorRate", h.decoyErrorRate},
            {"verdict", protocol::verdictName(h.verdict)},
            {"intercepted", h.intercepted},
            {"attempt", h.attempt}};
}

inline ordered_json toJson(const protocol::SessionTranscript& t) {
    ordered_json j;
    ordered_json hops = ordered_json::array();
    for (const auto& h : t.hops) hops.push_back(toJson(h));
    j["mas"] = t.mas;
    j["hops"] = hops;
    j["aborted"] = t.aborted;
    j["abortedAt"] = t.abortedAt ? ordered_json(protocol::phaseName(*t.abortedAt)) : ordered_json(nullptr);
    j["failure"] = t.failure;
    ordered_json fin;
    fin["recovered"] = t.recovered ? ordered_json(*t.recovered) : ordered_json(nullptr);
    fin["dealt"] = t.dealt;
    fin["match"] = t.match;
    j["final"] = fin;
    return j;
}

inline ordered_json toJson(const metrics::RateReport& r) {
    ordered_json j;
    j["classicalRate"] = rationalString(r.classicalRate);
    j["idealizedRate"] = rationalString(r.idealizedRate);
    j["nInfo"] = r.nInfo;
    ordered_json pc = ordered_json::object();
    for (const auto& [v, n] : r.particleCounts) pc[std::to_string(v)] = n;
    j["particleCounts"] = pc;
    j["classBound"] = r.classBound ? ordered_json(rationalString(*r.classBound)) : ordered_json(nullptr);
    return j;
}

inline ordered_json toJson(const metrics::EfficiencyReport& r, const css::SchemeDescriptor& d) {
    ordered_json j;
    j["mas"] = d.structure.edges[r.mas];
    std::vector<std::size_t> blocks;
    for (auto b : r.blocks) blocks.push_back(b + 1);
    j["blocks"] = blocks;
    j["c"] = r.c;
    j["qI"] = r.qI;
    j["qE"] = r.qE;
    j["b"] = r.b;
    j["eta"] = rationalString(r.eta);
    j["closedForm"] = rationalString(r.closedForm);
    j["matchesClosedForm"] = r.matchesClosedForm;
    return j;
}

inline ordered_json toJson(const access::CatalogRow& r) {
    ordered_json j;
    j["serial"] = r.serial;
    j["structure"] = r.text;
    j["bucket"] = access::className(r.bucket);
    j["rate"] = r.optimalRate ? ordered_json(rationalString(*r.optimalRate)) : ordered_json("hyperstar");
    return j;
}

} // namespace hqss::io
