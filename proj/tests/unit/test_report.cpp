#include "rado/cache.hpp"
#include "rado/report.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

using namespace rado;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path() /
               ("rado-test-" + std::to_string(std::random_device{}()) + "-" +
                std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

RunRecord sample_record(std::mt19937& rng)
{
    RunRecord r;
    r.kind = rng() % 2 ? "compute" : "certify";
    r.red = LinearEquation{1, 1, static_cast<Int>(rng() % 9)}.to_string();
    r.blue = LinearEquation{1, 1 + static_cast<Int>(rng() % 5), 0}.to_string();
    r.bound = 1 + static_cast<Int>(rng() % 100);
    std::string w;
    for (Int i = 0; i < r.bound; ++i)
        w += rng() % 2 ? 'R' : 'B';
    if (rng() % 2)
        r.result = to_json(SearchResult{FiniteResult{r.bound + 1, Coloring::from_string(w), rng()}});
    else
        r.result = to_json(SearchResult{UnknownResult{r.bound, Coloring::from_string(w), rng()}});
    if (rng() % 2)
        r.formula = std::to_string(rng() % 50);
    r.started_at = utc_timestamp();
    r.finished_at = utc_timestamp();
    r.nodes = rng();
    r.millis = static_cast<std::int64_t>(rng() % 10000);
    return r;
}

} // namespace

TEST(SearchResultJson, RoundTrips)
{
    const std::vector<SearchResult> results{
        FiniteResult{8, Coloring::from_string("RRRBBBB"), 17},
        UnknownResult{6, Coloring::from_string("BRBRBR"), 0},
        InfiniteCertified{parity_certificate()},
    };
    for (const auto& r : results) {
        const auto back = search_result_from_json(json::parse(to_json(r).dump()));
        EXPECT_EQ(to_json(back), to_json(r));
    }
    EXPECT_EQ(search_cell(results[0]), "8");
    EXPECT_EQ(search_cell(results[1]), "UNKNOWN(6)");
    EXPECT_EQ(search_cell(results[2]), "INF");
    EXPECT_THROW(search_result_from_json(json{{"kind", "maybe"}}), std::invalid_argument);
}

TEST(RunRecord, JsonRoundTripProperty)
{
    std::mt19937 rng(19);
    for (int i = 0; i < 200; ++i) {
        const auto rec = sample_record(rng);
        EXPECT_EQ(run_record_from_json(json::parse(to_json(rec).dump())), rec);
    }
}

TEST(RunRecord, KeyCoversInputsAndVersion)
{
    RunRecord r;
    r.kind = "compute";
    r.red = "x+y+2=z";
    r.blue = "x+y=z";
    r.bound = 20;
    EXPECT_EQ(r.key(), "compute|x+y+2=z|x+y=z|20|" + std::to_string(kAlgorithmVersion));
}

TEST(ResultCache, PutThenReloadFromDisk)
{
    TempDir dir;
    std::mt19937 rng(23);
    std::vector<RunRecord> recs;
    {
        ResultCache cache(dir.path);
        EXPECT_EQ(cache.size(), 0U);
        for (int i = 0; i < 20; ++i) {
            recs.push_back(sample_record(rng));
            cache.put(recs.back());
        }
    }
    ResultCache reloaded(dir.path);
    for (const auto& r : recs) {
        const auto got = reloaded.get(r.key());
        ASSERT_TRUE(got.has_value());
        // Later puts under the same key win; compare against the last one written.
        const auto last = std::find_if(recs.rbegin(), recs.rend(), [&](const RunRecord& o) { return o.key() == r.key(); });
        EXPECT_EQ(*got, *last);
    }
    EXPECT_FALSE(reloaded.get("compute|nothing|here|1|1").has_value());
}

TEST(ResultCache, IgnoresForeignVersionsAndBadLines)
{
    TempDir dir;
    std::mt19937 rng(29);
    auto old = sample_record(rng);
    old.tool_version = "0.0.0-old";
    {
        std::ofstream out(dir.path / "results.jsonl");
        out << to_json(old).dump() << "\n{not json\n\n";
    }
    ResultCache cache(dir.path);
    EXPECT_FALSE(cache.get(old.key()).has_value());
    EXPECT_EQ(cache.skipped_lines(), 1U);
}

TEST(ResultCache, DirectoryFromEnvironment)
{
    ::setenv("RADO_CACHE_DIR", "/tmp/rado-env-probe", 1);
    EXPECT_EQ(default_cache_dir(), std::filesystem::path("/tmp/rado-env-probe"));
    ::unsetenv("RADO_CACHE_DIR");
    ::setenv("XDG_CACHE_HOME", "/tmp/xdg", 1);
    EXPECT_EQ(default_cache_dir(), std::filesystem::path("/tmp/xdg/rado"));
    ::unsetenv("XDG_CACHE_HOME");
}

TEST(ReplayJson, CarriesStatusAndNormalizationNotes)
{
    const auto chains = load_chain_fixtures();
    const auto ch = find_chain(chains, "3.2.1");
    ASSERT_TRUE(ch.has_value());
    const auto r = replay_chain(*ch, 9, 8);
    const auto j = to_json(*ch, 9, 8, chain_domain(*ch, 9, 8), r);
    EXPECT_EQ(j.at("command"), "replay");
    EXPECT_EQ(j.at("status"), "success");
    EXPECT_EQ(j.at("steps").size(), ch->steps.size());
    EXPECT_EQ(j.at("steps").at(20).at("normalized"), true);
}

TEST(CertifyJson, Shape)
{
    const auto j = to_json(certify(2, 1, 20));
    EXPECT_EQ(j.at("command"), "certify");
    EXPECT_EQ(j.at("agreement"), "exact");
    EXPECT_EQ(j.at("solver").at("kind"), "finite");
    EXPECT_EQ(j.at("solver").at("value"), 8);
}
