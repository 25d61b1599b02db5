#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hqss/json_io.hpp"

namespace hqss::cli {

using io::ordered_json;
using ff::Elem;
using ff::FVector;

enum ExitCode { kOk = 0, kDomainError = 1, kUsageError = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::uint32_t p = 11;
    std::uint64_t seed = 1;
    std::uint32_t nInfo = 3;
    std::uint32_t nDecoy = 10;
    double threshold = 0.0;
    std::string cls;
    std::string blocks;
    std::string structure;
    std::string eve = "none";
    std::string eveBases = "protocol";
    std::size_t trials = 100;
    std::size_t threads = 0;
    std::string format = "json";
    std::string out;
    std::string variant = "default";
    bool fallback = false;
    std::size_t mas = 1;
    std::uint64_t samples = 100'000;
    std::string secret;
};

struct Report {
    ordered_json json;
    std::string csv;
    std::string text;
    int code = kOk;
};

inline std::vector<std::string> splitList(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

inline std::vector<std::size_t> parseBlocks(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& t : splitList(s)) {
        std::size_t pos = 0;
        long v = -1;
        try {
            v = std::stol(t, &pos);
        } catch (const std::exception&) {
        }
        if (pos != t.size() || v < 1) throw UsageError("--blocks expects positive sizes like \"1,1,2\", got \"" + s + "\"");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

// Malformed structure text is a bad flag value, not a domain failure.
inline access::AccessStructure structureFlag(const std::string& text) {
    try {
        return io::parseAnyStructure(text);
    } catch (const Error& e) {
        if (e.code() != Errc::BadInput) throw;
        throw UsageError(std::string("--structure: ") + e.what());
    }
}

inline css::SchemeDescriptor descriptorFrom(const Flags& fl) {
    if (!ff::isPrime(fl.p) || fl.p < 5) throw UsageError("--p must be a prime >= 5");
    css::BuildOptions opt;
    opt.seed = fl.seed;
    if (fl.variant == "geometric") opt.variant = css::Variant::Geometric;
    else if (fl.variant != "default") throw UsageError("--variant must be default or geometric");
    if (fl.fallback) opt.variant = css::Variant::Fallback;
    if (!fl.structure.empty()) {
        if (!fl.cls.empty()) throw UsageError("give either --structure or --class, not both");
        return css::buildScheme(structureFlag(fl.structure), fl.p, opt);
    }
    if (fl.cls.empty()) throw UsageError("a scheme needs --class G1..G12 or --structure \"{...}\"");
    access::ClassId c;
    try {
        c = access::parseClassId(fl.cls);
    } catch (const Error&) {
        throw UsageError("--class must be one of G1..G12, got \"" + fl.cls + "\"");
    }
    std::vector<std::size_t> sizes(access::blockCount(c), 1);
    if (!fl.blocks.empty()) {
        sizes = parseBlocks(fl.blocks);
        if (sizes.size() != access::blockCount(c))
            throw UsageError(access::className(c) + " has " + std::to_string(access::blockCount(c)) +
                             " blocks; --blocks lists " + std::to_string(sizes.size()));
    }
    return css::buildScheme(c, sizes, fl.p, opt);
}

inline std::string setText(const access::ParticipantSet& s) {
    std::string out;
    for (auto v : s) out += (out.empty() ? "" : " ") + std::to_string(v);
    return "{" + out + "}";
}

// ---- subcommands ----

inline Report doClassify(const Flags& fl) {
    if (fl.structure.empty()) throw UsageError("classify needs a structure, e.g. classify \"{1234,1267,456}\"");
    auto s = structureFlag(fl.structure);
    Report r;
    auto v = access::validate(s);
    auto kinds = access::kindPredicates(s);
    r.json["structure"] = access::toString(s);
    r.json["valid"] = v.ok();
    r.json["quantum"] = access::isQuantum(s);
    r.json["hyperstar"] = kinds.hyperstar;
    r.json["hypercycle"] = kinds.hypercycle;
    r.json["hyperpath"] = kinds.hyperpath;
    auto h = access::classify(s);
    auto rate = access::classRate(h.classId);
    r.json["class"] = access::className(h.classId);
    std::vector<std::string> blocks;
    for (const auto& b : h.blocks) blocks.push_back(setText(b));
    r.json["blocks"] = blocks;
    r.json["rate"] = rate ? ordered_json(toString(*rate)) : ordered_json("hyperstar");
    r.csv = "structure,class,quantum,rate\n\"" + access::toString(s) + "\"," + access::className(h.classId) + "," +
            (r.json["quantum"].get<bool>() ? "true" : "false") + "," + r.json["rate"].get<std::string>() + "\n";
    std::ostringstream t;
    t << access::toString(s) << "\n  class   " << access::className(h.classId) << "\n  quantum "
      << (r.json["quantum"].get<bool>() ? "yes" : "no") << "\n  rate    " << r.json["rate"].get<std::string>()
      << "\n  blocks ";
    for (std::size_t i = 0; i < blocks.size(); ++i) t << " A" << i + 1 << "=" << blocks[i];
    t << "\n";
    r.text = t.str();
    return r;
}

inline std::string layoutCsv(const css::SchemeDescriptor& d) {
    std::string csv = "participant,block,shares,tags\n";
    for (const auto& [v, n] : css::participantShareCounts(d)) {
        auto b = d.blockOf(v);
        std::string tags;
        for (auto l : d.leavesOfBlock(b)) tags += (tags.empty() ? "" : " ") + d.leaves[l].tag;
        csv += std::to_string(v) + "," + std::to_string(b + 1) + "," + std::to_string(n) + ",\"" + tags + "\"\n";
    }
    return csv;
}

inline Report doBuild(const Flags& fl) {
    auto d = descriptorFrom(fl);
    Report r;
    r.json = io::toJson(d);
    r.csv = layoutCsv(d);
    std::ostringstream t;
    t << access::toString(d.structure) << " class " << (d.classId ? access::className(*d.classId) : "?") << " ("
      << css::variantName(d.variant) << "), p=" << d.p << "\n  secret length " << d.secretLength
      << ", max shares " << css::maxShareCount(d) << ", rate " << toString(css::classicalRate(d)) << "\n";
    for (const auto& [v, n] : css::participantShareCounts(d)) {
        t << "  P" << v << ":";
        for (auto l : d.leavesOfBlock(d.blockOf(v))) t << " " << d.leaves[l].tag;
        t << "\n";
    }
    r.text = t.str();
    return r;
}

inline Report doVerify(const Flags& fl) {
    auto d = descriptorFrom(fl);
    css::VerifyOptions opt;
    opt.seed = fl.seed;
    opt.samples = fl.samples;
    auto rep = css::verifyPerfect(d, opt);
    Report r;
    r.json = io::toJson(rep);
    r.code = rep.recoverOk && rep.secrecyOk ? kOk : kDomainError;
    r.csv = "mode,recover,secrecy,transcripts,recoveryFailures,minPValue\n" + r.json["mode"].get<std::string>() + "," +
            (rep.recoverOk ? "ok" : "fail") + "," + (rep.secrecyOk ? "ok" : "fail") + "," +
            std::to_string(rep.transcripts) + "," + std::to_string(rep.recoveryFailures) + "," +
            std::to_string(rep.minPValue) + "\n";
    std::ostringstream t;
    t << (rep.exhaustive ? "exhaustive" : "sampled") << " over " << rep.transcripts << " deals\n  recovery  "
      << (rep.recoverOk ? "ok" : "FAIL") << " (" << rep.authorizedSubsets << " authorized sets)\n  secrecy   "
      << (rep.secrecyOk ? "ok" : "FAIL") << " (" << rep.unauthorizedSubsets << " maximal unauthorized sets)\n";
    for (const auto& f : rep.findings) t << "  - " << f << "\n";
    r.text = t.str();
    return r;
}

inline FVector secretFrom(const Flags& fl, const css::SchemeDescriptor& d, Rng& rng) {
    FVector s(d.secretLength);
    if (fl.secret.empty()) {
        for (auto& v : s) v = rng.uniform(d.p);
        return s;
    }
    auto parts = splitList(fl.secret);
    if (parts.size() != d.secretLength)
        throw UsageError("--secret needs " + std::to_string(d.secretLength) + " comma-separated values");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        unsigned long v = 0;
        try {
            v = std::stoul(parts[i]);
        } catch (const std::exception&) {
            throw UsageError("--secret values must be integers");
        }
        s[i] = static_cast<Elem>(v % d.p);
    }
    return s;
}

inline Report doDeal(const Flags& fl) {
    auto d = descriptorFrom(fl);
    ff::FieldCtx f(d.p);
    Rng rng(fl.seed);
    auto secret = secretFrom(fl, d, rng);
    auto b = css::dealSecret(d, secret, rng, f);
    Report r;
    r.json["secret"] = secret;
    r.json["shares"] = io::toJson(b);
    r.csv = "participant,tag,value\n";
    std::ostringstream t;
    t << "secret (";
    for (std::size_t i = 0; i < secret.size(); ++i) t << (i ? "," : "") << secret[i];
    t << ")\n";
    for (const auto& [v, shares] : b.shares) {
        t << "  P" << v << ":";
        for (const auto& s : shares) {
            t << " " << s.tag << "=" << s.value;
            r.csv += std::to_string(v) + "," + s.tag + "," + std::to_string(s.value) + "\n";
        }
        t << "\n";
    }
    r.text = t.str();
    return r;
}

inline protocol::EveModel eveFrom(const Flags& fl) {
    if (fl.eve == "none") return protocol::EveModel::none();
    if (fl.eve != "intercept") throw UsageError("--eve must be none or intercept");
    if (fl.eveBases == "protocol")
        return protocol::EveModel::interceptResend(protocol::EveBasisChoice::UniformOverProtocolBases);
    if (fl.eveBases == "all") return protocol::EveModel::interceptResend(protocol::EveBasisChoice::UniformOverAllBases);
    throw UsageError("--eve-bases must be protocol or all");
}

inline protocol::SessionConfig configFrom(const Flags& fl, css::SchemeDescriptor d, std::uint64_t seed) {
    if (fl.nInfo < 1) throw UsageError("--n-info must be at least 1");
    if (fl.threshold < 0 || fl.threshold > 1) throw UsageError("--threshold must lie in [0,1]");
    if (fl.mas < 1 || fl.mas > d.structure.edges.size())
        throw UsageError("--mas must be an edge number between 1 and " + std::to_string(d.structure.edges.size()));
    auto c = protocol::makeConfig(std::move(d), fl.nInfo, fl.nDecoy, seed);
    c.errorThreshold = fl.threshold;
    c.mas = fl.mas - 1;
    return c;
}

inline std::string vecText(const FVector& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return "(" + s + ")";
}

inline Report doSimulate(const Flags& fl) {
    auto c = configFrom(fl, descriptorFrom(fl), fl.seed);
    auto t = protocol::runSession(c, eveFrom(fl));
    Report r;
    r.json = io::toJson(t);
    r.code = t.aborted || !t.match ? kDomainError : kOk;
    r.csv = "phase,sender,receiver,tag,basis,nInfo,nDecoy,decoyErrors,verdict,intercepted,attempt\n";
    std::ostringstream tx;
    tx << "MAS " << setText(c.descriptor.structure.edges[c.mas]) << "\n";
    for (const auto& h : t.hops) {
        r.csv += std::string(protocol::phaseName(h.phase)) + "," + h.sender + "," + h.receiver + "," + h.tag + "," +
                 std::to_string(h.basisIndex) + "," + std::to_string(h.nInfo) + "," + std::to_string(h.nDecoy) + "," +
                 std::to_string(h.decoyErrors) + "," + protocol::verdictName(h.verdict) + "," +
                 (h.intercepted ? "true" : "false") + "," + std::to_string(h.attempt) + "\n";
        tx << "  " << std::left << std::setw(13) << protocol::phaseName(h.phase) << h.sender << " -> " << h.receiver
           << " [" << h.tag << "] decoy errors " << h.decoyErrors << "/" << h.nDecoy << " "
           << protocol::verdictName(h.verdict) << "\n";
    }
    tx << "dealt " << vecText(t.dealt) << " recovered " << (t.recovered ? vecText(*t.recovered) : "none")
       << " match " << (t.match ? "true" : "false");
    if (t.aborted) tx << " (" << t.failure << ")";
    tx << "\n";
    r.text = tx.str();
    return r;
}

struct TrialStats {
    bool aborted = false;
    bool match = false;
    std::uint64_t interceptedDecoys = 0;
    std::uint64_t decoyErrors = 0;
};

inline Report doAttack(const Flags& fl) {
    if (fl.trials < 1) throw UsageError("--trials must be at least 1");
    auto base = configFrom(fl, descriptorFrom(fl), fl.seed);
    auto eve = eveFrom(fl);
    std::vector<TrialStats> stats(fl.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < fl.trials; i = next++) {
            auto c = base;
            c.seed = deriveSeed(fl.seed, i);
            auto t = protocol::runSession(c, eve);
            TrialStats& s = stats[i];
            s.aborted = t.aborted;
            s.match = t.match;
            for (const auto& h : t.hops)
                if (h.intercepted) {
                    s.interceptedDecoys += h.nDecoy;
                    s.decoyErrors += h.decoyErrors;
                }
        }
    };
    std::size_t n = fl.threads ? fl.threads : std::max(1u, std::thread::hardware_concurrency());
    n = std::min(n, fl.trials);
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::uint64_t aborts = 0, matches = 0, decoys = 0, errors = 0;
    for (const auto& s : stats) {
        aborts += s.aborted;
        matches += s.match;
        decoys += s.interceptedDecoys;
        errors += s.decoyErrors;
    }
    double rate = decoys ? static_cast<double>(errors) / static_cast<double>(decoys) : 0.0;
    double abortRate = static_cast<double>(aborts) / static_cast<double>(fl.trials);
    Report r;
    r.json["trials"] = fl.trials;
    r.json["eve"] = fl.eve;
    r.json["aborts"] = aborts;
    r.json["abortRate"] = abortRate;
    r.json["matches"] = matches;
    r.json["interceptedDecoys"] = decoys;
    r.json["decoyErrors"] = errors;
    r.json["detectionRate"] = rate;
    r.code = kOk;
    r.csv = "trials,aborts,abortRate,matches,interceptedDecoys,decoyErrors,detectionRate\n" +
            std::to_string(fl.trials) + "," + std::to_string(aborts) + "," + std::to_string(abortRate) + "," +
            std::to_string(matches) + "," + std::to_string(decoys) + "," + std::to_string(errors) + "," +
            std::to_string(rate) + "\n";
    std::ostringstream t;
    t << fl.trials << " sessions, eve=" << fl.eve << "\n  aborted  " << aborts << " (" << abortRate
      << ")\n  matched  " << matches << "\n  decoys   " << errors << " of " << decoys
      << " intercepted decoys flagged (" << rate << ")\n";
    r.text = t.str();
    return r;
}

inline Report doCatalog(const Flags&) {
    Report r;
    r.json = ordered_json::array();
    r.csv = "serial,structure,bucket,class,quantum,rate\n";
    std::ostringstream t;
    for (const auto& row : access::catalog()) {
        auto j = io::toJson(row);
        auto h = access::classify(row.structure);
        bool q = access::isQuantum(row.structure);
        j["class"] = access::className(h.classId);
        j["quantum"] = q;
        std::string rate = j["rate"].get<std::string>();
        r.csv += std::to_string(row.serial) + ",\"" + row.text + "\"," + access::className(row.bucket) + "," +
                 access::className(h.classId) + "," + (q ? "true" : "false") + "," + rate + "\n";
        t << std::right << std::setw(3) << row.serial << "  " << std::left << std::setw(22) << row.text
          << access::className(h.classId) << "  " << rate << "\n";
        r.json.push_back(std::move(j));
    }
    r.text = t.str();
    return r;
}

inline Report doRates(const Flags& fl) {
    auto d = descriptorFrom(fl);
    if (fl.nInfo < 1) throw UsageError("--n-info must be at least 1");
    auto rr = metrics::rateReport(d, fl.nInfo);
    Report r;
    r.json["rates"] = io::toJson(rr);
    r.json["entropyBound"] = metrics::entropyBoundCheck(d);
    ordered_json eff = ordered_json::array();
    r.csv = "mas,c,qI,qE,b,eta,closedForm,matches\n";
    std::ostringstream t;
    t << "classical rate " << toString(rr.classicalRate) << ", idealized rate " << toString(rr.idealizedRate)
      << " (nInfo=" << fl.nInfo << ")\n";
    for (std::size_t m = 0; m < d.structure.edges.size(); ++m) {
        auto e = metrics::efficiency(d, m, fl.nInfo, fl.nDecoy);
        eff.push_back(io::toJson(e, d));
        std::string mas = setText(d.structure.edges[m]);
        r.csv += "\"" + mas + "\"," + std::to_string(e.c) + "," + std::to_string(e.qI) + "," + std::to_string(e.qE) +
                 "," + std::to_string(e.b) + "," + toString(e.eta) + "," + toString(e.closedForm) + "," +
                 (e.matchesClosedForm ? "true" : "false") + "\n";
        t << "  " << mas << " eta " << toString(e.eta) << " closed form " << toString(e.closedForm)
          << (e.matchesClosedForm ? "" : " (differs)") << "\n";
    }
    r.json["efficiency"] = eff;
    r.text = t.str();
    return r;
}

// ---- driver ----

inline int runCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Flags fl;
    CLI::App app{"hybrid quantum secret sharing toolkit"};
    app.require_subcommand(1);
    auto common = [&](CLI::App* s) {
        s->add_option("--p", fl.p, "field prime");
        s->add_option("--seed", fl.seed);
        s->add_option("--format", fl.format)->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_option("--out", fl.out, "write the report here instead of stdout");
    };
    auto scheme = [&](CLI::App* s) {
        s->add_option("--class", fl.cls, "G1..G12");
        s->add_option("--blocks", fl.blocks, "block sizes, e.g. 1,1,2");
        s->add_option("--structure", fl.structure, "minimal access structure, e.g. {1234,1267,456}");
        s->add_option("--variant", fl.variant)->check(CLI::IsMember({"default", "geometric"}));
        s->add_flag("--fallback", fl.fallback, "allow the hyperstar fallback decomposition");
    };
    auto session = [&](CLI::App* s) {
        s->add_option("--n-info", fl.nInfo);
        s->add_option("--n-decoy", fl.nDecoy);
        s->add_option("--threshold", fl.threshold, "tolerated decoy error rate");
        s->add_option("--eve", fl.eve)->check(CLI::IsMember({"none", "intercept"}));
        s->add_option("--eve-bases", fl.eveBases)->check(CLI::IsMember({"protocol", "all"}));
        s->add_option("--mas", fl.mas, "1-based edge used for recovery");
    };
    auto* classify = app.add_subcommand("classify", "classify a three-edge access structure");
    common(classify);
    classify->add_option("structure,--structure", fl.structure, "e.g. {1234,1267,456}");
    auto* build = app.add_subcommand("build", "build a scheme descriptor");
    common(build);
    scheme(build);
    auto* verify = app.add_subcommand("verify", "check recovery and secrecy of a scheme");
    common(verify);
    scheme(verify);
    verify->add_option("--samples", fl.samples);
    auto* deal = app.add_subcommand("deal", "deal one secret");
    common(deal);
    scheme(deal);
    deal->add_option("--secret", fl.secret, "comma-separated field elements");
    auto* simulate = app.add_subcommand("simulate", "run one protocol session");
    common(simulate);
    scheme(simulate);
    session(simulate);
    auto* attack = app.add_subcommand("attack", "run many sessions and tally detection");
    common(attack);
    scheme(attack);
    session(attack);
    attack->add_option("--trials", fl.trials);
    attack->add_option("--threads", fl.threads, "0 = hardware concurrency");
    auto* catalog = app.add_subcommand("catalog", "list the 83 catalog structures");
    common(catalog);
    auto* rates = app.add_subcommand("rates", "rate and efficiency report");
    common(rates);
    scheme(rates);
    rates->add_option("--n-info", fl.nInfo);
    rates->add_option("--n-decoy", fl.nDecoy);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kUsageError;
    }

    Report r;
    try {
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "classify") r = doClassify(fl);
        else if (name == "build") r = doBuild(fl);
        else if (name == "verify") r = doVerify(fl);
        else if (name == "deal") r = doDeal(fl);
        else if (name == "simulate") r = doSimulate(fl);
        else if (name == "attack") r = doAttack(fl);
        else if (name == "catalog") r = doCatalog(fl);
        else r = doRates(fl);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kDomainError;
    } catch (const nlohmann::json::exception& e) {
        err << "usage error: bad JSON input: " << e.what() << "\n";
        return kUsageError;
    }

    std::string body = fl.format == "json" ? r.json.dump(2) + "\n" : fl.format == "csv" ? r.csv : r.text;
    if (fl.out.empty()) {
        out << body;
    } else {
        std::ofstream f(fl.out, std::ios::binary);
        if (!f) {
            err << "cannot write " << fl.out << "\n";
            return kUsageError;
        }
        f << body;
    }
    return r.code;
}

} // namespace hqss::cli
