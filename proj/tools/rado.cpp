// rado: compute, certify, replay, and scan two-color off-diagonal Rado numbers.
//
// Exit codes: 0 ok, 2 bad input, 3 node budget exhausted, 4 formula/search disagreement,
// 5 chain replay failure.

#include "rado/cache.hpp"
#include "rado/certificates.hpp"
#include "rado/proofchain.hpp"
#include "rado/report.hpp"
#include "rado/solver.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace rado;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitDisagree = 4;
constexpr int kExitReplayFailed = 5;

struct CommonOptions {
    std::string format = "text";
    std::uint64_t node_budget = kDefaultNodeBudget;
    bool no_cache = false;
    std::string cache_dir;
};

std::unique_ptr<ResultCache> open_cache(const CommonOptions& opts)
{
    if (opts.no_cache)
        return nullptr;
    return std::make_unique<ResultCache>(opts.cache_dir.empty() ? default_cache_dir()
                                                                : std::filesystem::path(opts.cache_dir));
}

struct Timed {
    json payload;
    std::int64_t millis = 0;
    bool cached = false;
};

template <typename F>
Timed run_cached(ResultCache* cache, RunRecord rec, F&& compute)
{
    if (cache)
        if (auto hit = cache->get(rec.key()))
            return {hit->result, hit->millis, true};
    rec.started_at = utc_timestamp();
    const auto t0 = std::chrono::steady_clock::now();
    rec.result = compute();
    const auto t1 = std::chrono::steady_clock::now();
    rec.finished_at = utc_timestamp();
    rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    rec.nodes = rec.result.contains("nodes") ? rec.result.at("nodes").get<std::uint64_t>()
                                             : rec.result.at("result").value("nodes", std::uint64_t{0});
    if (cache)
        cache->put(rec);
    return {rec.result, rec.millis, false};
}

Timed run_certify(Int c, Int q, Int bound, const SearchOptions& opts, ResultCache* cache)
{
    const auto [red, blue] = family_equations(c, q);
    RunRecord rec;
    rec.kind = "certify";
    rec.red = red.to_string();
    rec.blue = blue.to_string();
    rec.bound = bound;
    rec.formula = formula_R2(c, q).to_string();
    return run_cached(cache, rec, [&] { return to_json(certify(c, q, bound, opts)); });
}

Int certify_bound(Int c, Int q, std::optional<Int> bound)
{
    if (bound)
        return *bound;
    const auto f = formula_R2(c, q);
    return f.is_finite() ? 4 * f.value() : 64;
}

void print_text_result(std::ostream& os, const json& result)
{
    const auto kind = result.at("kind").get<std::string>();
    if (kind == "finite") {
        os << "result:  finite " << result.at("value") << '\n';
        const auto w = result.at("witness").get<std::string>();
        os << "witness: [1," << w.size() << "] " << w << '\n';
    } else if (kind == "unknown") {
        os << "result:  unknown, no Unsat up to " << result.at("bound") << '\n';
        const auto w = result.at("witness").get<std::string>();
        os << "witness: [1," << w.size() << "] " << w << '\n';
    } else {
        os << "result:  infinite, certificate p=" << result.at("certificate").at("period") << ' '
           << result.at("certificate").at("residues").get<std::string>() << '\n';
    }
    if (result.contains("nodes"))
        os << "nodes:   " << result.at("nodes") << '\n';
}

int cmd_compute(const std::string& red_text, const std::string& blue_text, std::optional<Int> bound_opt,
                const CommonOptions& opts)
{
    LinearEquation red, blue;
    try {
        red = parse_equation(red_text);
        red.tag = "red";
        blue = parse_equation(blue_text);
        blue.tag = "blue";
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    const Int bound = bound_opt.value_or(default_bound(red, blue));
    if (bound < 1) {
        std::cerr << "error: --bound must be >= 1\n";
        return kExitBadInput;
    }
    const auto family = family_status(red, blue);
    auto cache = open_cache(opts);

    RunRecord rec;
    rec.kind = "compute";
    rec.red = red.to_string();
    rec.blue = blue.to_string();
    rec.bound = bound;
    if (family.formula)
        rec.formula = family.formula->to_string();
    Timed run;
    try {
        run = run_cached(cache.get(), rec, [&] {
            return json{{"result", to_json(compute_rado(red, blue, bound, SearchOptions{opts.node_budget}))}};
        });
    } catch (const ResourceExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    }

    json out{{"command", "compute"},
             {"tool_version", kToolVersion},
             {"red", red.to_string()},
             {"blue", blue.to_string()},
             {"bound", bound},
             {"result", run.payload.at("result")},
             {"family", to_json(family)},
             {"cached", run.cached},
             {"millis", run.millis}};
    if (opts.format == "json") {
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "red:     " << out["red"].get<std::string>() << " (no all-Red solution)\n"
                  << "blue:    " << out["blue"].get<std::string>() << " (no all-Blue solution)\n"
                  << "bound:   " << bound << '\n';
        print_text_result(std::cout, out["result"]);
        if (family.in_family) {
            std::cout << "family:  c=" << family.c << ", q=" << family.q;
            if (family.formula)
                std::cout << ", closed form " << family.formula->to_string();
            std::cout << " (" << family.note << ")\n";
        }
        if (run.cached)
            std::cout << "(cached)\n";
    }
    return kExitOk;
}

void print_report_text(std::ostream& os, const json& rep)
{
    os << "c=" << rep.at("c") << ", q=" << rep.at("q") << ", bound " << rep.at("bound") << '\n';
    os << "formula: " << (rep.at("formula").is_string() ? rep.at("formula").get<std::string>()
                                                         : rep.at("formula").dump())
       << '\n';
    print_text_result(os, rep.at("solver"));
    if (!rep.at("construction").is_null()) {
        const auto& k = rep.at("construction");
        os << "construction: " << k.at("name").get<std::string>() << " on [1," << k.at("domain_top") << "] "
           << (k.at("verdict").at("valid").get<bool>() ? "valid" : "INVALID") << '\n';
    }
    if (!rep.at("certificate").is_null())
        os << "certificate: period " << rep.at("certificate").at("period") << ", residues "
           << rep.at("certificate").at("residues").get<std::string>() << '\n';
    for (const auto& n : rep.at("notes"))
        os << "note: " << n.get<std::string>() << '\n';
    const bool agree = rep.at("agree").get<bool>();
    os << (agree ? "AGREE " : "DISAGREE ")
       << (rep.at("formula").is_string() ? rep.at("formula").get<std::string>() : rep.at("formula").dump()) << '\n';
}

int cmd_certify(Int c, Int q, std::optional<Int> bound_opt, const CommonOptions& opts)
{
    if (c < 1 || q < 1) {
        std::cerr << "error: certify requires c >= 1 and q >= 1 (the closed form is not claimed otherwise)\n";
        return kExitBadInput;
    }
    const Int bound = certify_bound(c, q, bound_opt);
    if (bound < 1) {
        std::cerr << "error: --bound must be >= 1\n";
        return kExitBadInput;
    }
    auto cache = open_cache(opts);
    Timed run;
    try {
        run = run_certify(c, q, bound, SearchOptions{opts.node_budget}, cache.get());
    } catch (const ResourceExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    }
    json rep = run.payload;
    rep["cached"] = run.cached;
    rep["millis"] = run.millis;
    if (opts.format == "json")
        std::cout << rep.dump(2) << '\n';
    else
        print_report_text(std::cout, rep);
    return rep.at("agree").get<bool>() ? kExitOk : kExitDisagree;
}

int cmd_replay(const std::string& case_id, Int c, Int q, std::optional<Int> n_opt, const std::string& fixtures,
               const std::string& format)
{
    std::vector<Chain> chains;
    try {
        chains = fixtures.empty() ? load_chain_fixtures() : load_chain_fixtures(fixtures);
    } catch (const FixtureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    const auto chain = find_chain(chains, case_id);
    if (!chain) {
        std::cerr << "error: no chain fixture with case id '" << case_id << "'\n";
        return kExitBadInput;
    }
    const Int n = n_opt.value_or(chain_domain(*chain, c, q));
    if (n < 1) {
        std::cerr << "error: replay domain must be >= 1\n";
        return kExitBadInput;
    }
    const auto result = replay_chain(*chain, c, q, n);
    const json j = to_json(*chain, c, q, n, result);

    if (format == "json") {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "chain " << chain->case_id << " (" << chain->notes << ") at c=" << c << ", q=" << q
                  << ", n=" << n << '\n';
        if (!j.at("preconditions_hold").get<bool>())
            std::cout << "warning: preconditions (" << chain->preconditions.describe() << ") do not hold\n";
        for (const auto& s : j.at("steps")) {
            const auto& t = s.at("triple");
            std::cout << "  step " << s.at("index") << ": (" << t[0] << ',' << t[1] << ',' << t[2] << ")_"
                      << s.at("tag").get<std::string>() << " => " << s.at("forced") << ' '
                      << s.at("color").get<std::string>();
            if (s.at("reassertion").get<bool>())
                std::cout << " [re-asserted]";
            if (s.at("normalized").get<bool>())
                std::cout << " [normalized]";
            if (s.at("propagation_closed").get<bool>())
                std::cout << " [propagation already closed]";
            else if (!s.at("propagation_agrees").get<bool>())
                std::cout << " [propagation DISAGREES]";
            std::cout << '\n';
        }
        for (const auto& note : j.at("notes"))
            std::cout << "note: " << note.get<std::string>() << '\n';
        if (const auto* s = std::get_if<ReplaySuccess>(&result)) {
            std::cout << "terminal: " << s->terminal << " all " << to_name(s->terminal_color) << '\n';
            std::cout << "result: success (" << s->log.size() << " steps)\n";
        } else {
            const auto& f = j.at("failure");
            std::cout << "result: " << j.at("status").get<std::string>();
            if (!f.at("step").is_null())
                std::cout << " at step " << f.at("step");
            std::cout << ", " << f.at("reason").get<std::string>() << ": " << f.at("detail").get<std::string>()
                      << '\n';
        }
    }
    return std::holds_alternative<ReplaySuccess>(result) ? kExitOk : kExitReplayFailed;
}

std::pair<Int, Int> parse_range(const std::string& text)
{
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const Int v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("range must be N or LO:HI, got '" + text + "'");
    }
}

int cmd_scan(const std::string& c_range, const std::string& q_range, const std::string& bound_text,
             const std::string& output, unsigned jobs, const CommonOptions& opts)
{
    std::pair<Int, Int> cr, qr;
    std::optional<Int> bound;
    try {
        cr = parse_range(c_range);
        qr = parse_range(q_range);
        if (bound_text != "auto")
            bound = std::stoll(bound_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    if (cr.first < 1 || qr.first < 1 || cr.first > cr.second || qr.first > qr.second || (bound && *bound < 1)) {
        std::cerr << "error: ranges must be nonempty with c, q >= 1, and bound >= 1\n";
        return kExitBadInput;
    }

    struct Cell {
        Int c, q;
        std::string row;
        bool aborted = false;
    };
    std::vector<Cell> cells;
    for (Int c = cr.first; c <= cr.second; ++c)
        for (Int q = qr.first; q <= qr.second; ++q)
            cells.push_back({c, q, {}});

    auto cache = open_cache(opts);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            auto& cell = cells[i];
            const auto formula = formula_R2(cell.c, cell.q);
            const Int b = certify_bound(cell.c, cell.q, bound);
            std::ostringstream row;
            row << cell.c << ',' << cell.q << ',' << formula.to_string() << ',';
            try {
                const auto run = run_certify(cell.c, cell.q, b, SearchOptions{opts.node_budget}, cache.get());
                const auto solver = search_result_from_json(run.payload.at("solver"));
                const auto agreement = run.payload.at("agreement").get<std::string>();
                row << search_cell(solver) << ','
                    << (agreement == "exact" ? "true" : agreement == "via-certificate" ? "true-via-certificate" : "false")
                    << ',' << run.payload.at("nodes").get<std::uint64_t>() << ',' << run.millis;
            } catch (const ResourceExhausted& e) {
                row << "ABORTED,false," << e.nodes() << ",0";
                cell.aborted = true;
            }
            cell.row = row.str();
        }
    };
    jobs = std::max(1U, jobs);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    std::ofstream file;
    if (output != "-") {
        file.open(output);
        if (!file) {
            std::cerr << "error: cannot open " << output << '\n';
            return kExitBadInput;
        }
    }
    std::ostream& os = output == "-" ? std::cout : file;
    os << kScanHeader << '\n';
    bool aborted = false;
    for (const auto& cell : cells) {
        os << cell.row << '\n';
        aborted = aborted || cell.aborted;
    }
    os.flush();
    if (aborted) {
        std::cerr << "error: node budget exhausted for at least one cell; partial results written\n";
        return kExitResource;
    }
    return kExitOk;
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_format = true)
{
    if (with_format)
        cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--node-budget", opts.node_budget, "Abort search beyond this many nodes");
    cmd->add_flag("--no-cache", opts.no_cache, "Neither read nor write the result cache");
    cmd->add_option("--cache-dir", opts.cache_dir, "Cache directory (default $RADO_CACHE_DIR or ~/.cache/rado)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-color off-diagonal Rado numbers for a*x+b*y+c=z equation pairs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CommonOptions common;
    std::string red, blue;
    std::optional<Int> bound;
    auto* compute = app.add_subcommand("compute", "Search for R2(red, blue) up to a bound");
    compute->add_option("--red", red, "Equation forbidden in Red, e.g. \"x+y+2=z\"")->required();
    compute->add_option("--blue", blue, "Equation forbidden in Blue, e.g. \"x+3*y=z\"")->required();
    compute->add_option("--bound", bound, "Largest N to decide (default from the closed form, else 64)");
    add_common(compute, common);

    Int c = 0, q = 0;
    auto* cert = app.add_subcommand("certify", "Check the closed form for x+y+c=z / x+q*y=z against search");
    cert->add_option("-c", c, "Constant of the red equation")->required();
    cert->add_option("-q", q, "Coefficient of y in the blue equation")->required();
    cert->add_option("--bound", bound, "Search bound (default 4 x closed form, or 64)");
    add_common(cert, common);

    std::string case_id, fixtures;
    std::optional<Int> domain;
    auto* replay = app.add_subcommand("replay", "Replay a forcing-chain fixture at concrete (c, q)");
    replay->add_option("--case", case_id, "Chain case id, e.g. 2.1 or 3.2.1")->required();
    replay->add_option("-c", c, "Parameter c")->required();
    replay->add_option("-q", q, "Parameter q")->required();
    replay->add_option("-n", domain, "Domain [1, n] (default: the case's closed form)");
    replay->add_option("--fixtures", fixtures, "Fixture directory (default $RADO_FIXTURE_DIR or built-in)");
    replay->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::string c_range = "1:4", q_range = "1:3", scan_bound = "auto", output = "-";
    unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
    auto* scan = app.add_subcommand("scan", "Certify a grid of (c, q) and write CSV");
    scan->add_option("--c-range", c_range, "c values, N or LO:HI");
    scan->add_option("--q-range", q_range, "q values, N or LO:HI");
    scan->add_option("--bound", scan_bound, "Search bound per cell, or auto");
    scan->add_option("-o,--output", output, "CSV path, or - for stdout");
    scan->add_option("-j,--jobs", jobs, "Cells certified in parallel");
    add_common(scan, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (*compute)
            return cmd_compute(red, blue, bound, common);
        if (*cert)
            return cmd_certify(c, q, bound, common);
        if (*replay)
            return cmd_replay(case_id, c, q, domain, fixtures, common.format);
        return cmd_scan(c_range, q_range, scan_bound, output, jobs, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
}
