#pragma once

// JSON and CSV forms of search results, certification reports, and chain replays.

#include "rado/certificates.hpp"
#include "rado/proofchain.hpp"
#include "rado/solver.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

namespace rado {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kAlgorithmVersion = 1;

inline json triple_json(const SolutionTriple& t)
{
    return json{{"triple", {t.x, t.y, t.z}}, {"tag", t.equation_tag}};
}

inline json to_json(const PeriodicCertificate& cert)
{
    return json{{"period", cert.period}, {"residues", cert.pattern()}};
}

inline PeriodicCertificate certificate_from_json(const json& j)
{
    PeriodicCertificate cert;
    cert.period = j.at("period").get<Int>();
    for (char ch : j.at("residues").get<std::string>())
        cert.residue_colors.push_back(color_from_char(ch));
    if (!cert.well_formed())
        throw std::invalid_argument("certificate residues do not match its period");
    return cert;
}

inline json to_json(const SearchResult& r)
{
    if (const auto* f = std::get_if<FiniteResult>(&r))
        return json{{"kind", "finite"}, {"value", f->value}, {"witness", f->witness.to_string()}, {"nodes", f->nodes}};
    if (const auto* u = std::get_if<UnknownResult>(&r))
        return json{{"kind", "unknown"}, {"bound", u->bound}, {"witness", u->witness.to_string()}, {"nodes", u->nodes}};
    return json{{"kind", "infinite"}, {"certificate", to_json(std::get<InfiniteCertified>(r).certificate)}};
}

inline SearchResult search_result_from_json(const json& j)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "finite")
        return FiniteResult{j.at("value").get<Int>(), Coloring::from_string(j.at("witness").get<std::string>()),
                            j.at("nodes").get<std::uint64_t>()};
    if (kind == "unknown")
        return UnknownResult{j.at("bound").get<Int>(), Coloring::from_string(j.at("witness").get<std::string>()),
                             j.at("nodes").get<std::uint64_t>()};
    if (kind == "infinite")
        return InfiniteCertified{certificate_from_json(j.at("certificate"))};
    throw std::invalid_argument("unknown search result kind '" + kind + "'");
}

/// Short form for tables: the value, or UNKNOWN(bound), or INF.
inline std::string search_cell(const SearchResult& r)
{
    if (const auto* f = std::get_if<FiniteResult>(&r))
        return std::to_string(f->value);
    if (const auto* u = std::get_if<UnknownResult>(&r))
        return "UNKNOWN(" + std::to_string(u->bound) + ")";
    return "INF";
}

inline json formula_json(const FiniteOrInfinite& f)
{
    return f.is_finite() ? json(f.value()) : json("INF");
}

inline json to_json(const Verdict& v)
{
    json j{{"valid", v.valid()}, {"violation", nullptr}};
    if (v.violation) {
        j["violation"] = triple_json(v.violation->triple);
        j["violation"]["color"] = to_name(v.violation->color);
    }
    return j;
}

inline json to_json(const FamilyStatus& s)
{
    if (!s.in_family)
        return nullptr;
    return json{{"c", s.c},
                {"q", s.q},
                {"formula_applicable", s.formula_applicable},
                {"formula", s.formula ? formula_json(*s.formula) : json(nullptr)},
                {"note", s.note}};
}

/// "true", "false", or "true-via-certificate".
inline std::string agree_cell(const Report& rep)
{
    switch (rep.agreement) {
    case Agreement::Exact:
        return "true";
    case Agreement::ViaCertificate:
        return "true-via-certificate";
    case Agreement::Mismatch:
        break;
    }
    return "false";
}

inline json to_json(const Report& rep)
{
    json j{{"command", "certify"},
           {"tool_version", kToolVersion},
           {"c", rep.c},
           {"q", rep.q},
           {"bound", rep.bound},
           {"formula", formula_json(rep.formula)},
           {"solver", to_json(rep.solver)},
           {"construction", nullptr},
           {"certificate", rep.certificate ? to_json(*rep.certificate) : json(nullptr)},
           {"agree", rep.agree()},
           {"agreement", to_string(rep.agreement)},
           {"nodes", nodes_of(rep.solver)},
           {"notes", rep.notes}};
    if (rep.construction) {
        const auto& k = *rep.construction;
        j["construction"] = json{{"name", k.name},
                                 {"domain_top", k.domain_top},
                                 {"coloring", k.coloring.to_string()},
                                 {"verdict", to_json(k.verdict)}};
    }
    return j;
}

inline json to_json(const StepLog& s)
{
    return json{{"index", s.index},
                {"triple", {s.triple.x, s.triple.y, s.triple.z}},
                {"tag", s.triple.equation_tag},
                {"forced", s.forced_position},
                {"color", to_name(s.forced_color)},
                {"reassertion", s.reassertion},
                {"normalized", s.normalized},
                {"propagation_closed", s.propagation_closed},
                {"propagation_agrees", s.propagation_agrees}};
}

inline const char* replay_status(const ReplayResult& r)
{
    if (std::holds_alternative<ReplaySuccess>(r))
        return "success";
    if (std::holds_alternative<StepFailure>(r))
        return "step-failure";
    return "terminal-mismatch";
}

inline json to_json(const Chain& chain, Int c, Int q, Int n, const ReplayResult& r)
{
    json j{{"command", "replay"},
           {"tool_version", kToolVersion},
           {"case_id", chain.case_id},
           {"c", c},
           {"q", q},
           {"n", n},
           {"root_color", to_name(chain.root_color)},
           {"preconditions_hold", chain.preconditions.hold(c, q)},
           {"status", replay_status(r)},
           {"steps", json::array()},
           {"terminal", nullptr},
           {"failure", nullptr},
           {"notes", json::array()}};
    auto add_steps = [&](const std::vector<StepLog>& log) {
        for (const auto& s : log)
            j["steps"].push_back(to_json(s));
    };
    if (const auto* s = std::get_if<ReplaySuccess>(&r)) {
        add_steps(s->log);
        j["terminal"] = triple_json(s->terminal);
        j["terminal"]["color"] = to_name(s->terminal_color);
        j["notes"] = s->notes;
    } else if (const auto* f = std::get_if<StepFailure>(&r)) {
        add_steps(f->log);
        j["failure"] = json{{"step", f->step},
                            {"reason", to_string(f->reason)},
                            {"detail", f->detail},
                            {"monochromatic", f->monochromatic ? triple_json(*f->monochromatic) : json(nullptr)}};
    } else {
        const auto& m = std::get<TerminalMismatch>(r);
        add_steps(m.log);
        j["failure"] = json{{"step", nullptr}, {"reason", "terminal-mismatch"}, {"detail", m.detail},
                            {"monochromatic", nullptr}};
    }
    return j;
}

inline std::string utc_timestamp(std::chrono::system_clock::time_point tp = std::chrono::system_clock::now())
{
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

/// One cached run: what was asked, what came back, and when.
struct RunRecord {
    std::string kind; // "compute" or "certify"
    std::string red;
    std::string blue;
    Int bound = 0;
    int algorithm_version = kAlgorithmVersion;
    std::string tool_version = kToolVersion;
    json result;
    std::optional<std::string> formula;
    std::string started_at;
    std::string finished_at;
    std::uint64_t nodes = 0;
    std::int64_t millis = 0;

    [[nodiscard]] std::string key() const
    {
        return kind + "|" + red + "|" + blue + "|" + std::to_string(bound) + "|" + std::to_string(algorithm_version);
    }

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline json to_json(const RunRecord& r)
{
    return json{{"kind", r.kind},
                {"red", r.red},
                {"blue", r.blue},
                {"bound", r.bound},
                {"algorithm_version", r.algorithm_version},
                {"tool_version", r.tool_version},
                {"result", r.result},
                {"formula", r.formula ? json(*r.formula) : json(nullptr)},
                {"started_at", r.started_at},
                {"finished_at", r.finished_at},
                {"nodes", r.nodes},
                {"millis", r.millis}};
}

inline RunRecord run_record_from_json(const json& j)
{
    RunRecord r;
    r.kind = j.at("kind").get<std::string>();
    r.red = j.at("red").get<std::string>();
    r.blue = j.at("blue").get<std::string>();
    r.bound = j.at("bound").get<Int>();
    r.algorithm_version = j.at("algorithm_version").get<int>();
    r.tool_version = j.at("tool_version").get<std::string>();
    r.result = j.at("result");
    if (!j.at("formula").is_null())
        r.formula = j.at("formula").get<std::string>();
    r.started_at = j.at("started_at").get<std::string>();
    r.finished_at = j.at("finished_at").get<std::string>();
    r.nodes = j.at("nodes").get<std::uint64_t>();
    r.millis = j.at("millis").get<std::int64_t>();
    return r;
}

inline constexpr const char* kScanHeader = "c,q,formula,search,agree,nodes,millis";

} // namespace rado
