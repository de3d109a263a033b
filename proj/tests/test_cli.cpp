#include "doctest.h"
#include "ppsum/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace ppsum;
using namespace ppsum::cli;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.push_back("--quiet");
    std::ostringstream out, err;
    int status = 0;
    try {
        status = run(parse_args(args), out, err);
    } catch (const InvalidArgument& e) {
        err << e.what();
        status = kInvalidArguments;
    } catch (const ResourceLimit& e) {
        err << e.what();
        status = kResourceLimit;
    }
    return {status, out.str(), err.str()};
}

Json result_of(const Result& r) { return Json::parse(r.out).at("result"); }

std::string strip_timestamp(const std::string& s) {
    Json j = Json::parse(s);
    j["meta"].erase("timestamp");
    return j.dump();
}

}  // namespace

TEST_CASE("parse_natural accepts underscore separators") {
    CHECK(parse_natural("10_000_000", "--to") == 10'000'000);
    CHECK(parse_natural("0", "x") == 0);
    CHECK(parse_natural("18446744073709551615", "x") == ~std::uint64_t{0});
    CHECK_THROWS_WITH_AS(parse_natural("18446744073709551616", "--to"), doctest::Contains("--to"), InvalidArgument);
    CHECK_THROWS_AS(parse_natural("_1", "x"), InvalidArgument);
    CHECK_THROWS_AS(parse_natural("1_", "x"), InvalidArgument);
    CHECK_THROWS_AS(parse_natural("1__0", "x"), InvalidArgument);
    CHECK_THROWS_AS(parse_natural("-5", "x"), InvalidArgument);
    CHECK_THROWS_AS(parse_natural("1e6", "x"), InvalidArgument);
    CHECK_THROWS_AS(parse_natural("", "x"), InvalidArgument);
    CHECK(parse_natural_list("10_000,1000000", "--limits") == std::vector<std::uint64_t>{10'000, 1'000'000});
    CHECK_THROWS_AS(parse_natural_list("10,,20", "--limits"), InvalidArgument);
}

TEST_CASE("parse_args builds a validated config") {
    const auto c = parse_args({"verify", "--from", "24", "--to", "1_000", "--max-terms", "4", "--threads", "2"});
    CHECK(c.subcommand == Subcommand::verify);
    CHECK(c.from == 24);
    CHECK(c.to == 1000);
    CHECK(c.max_terms == 4);
    CHECK(c.threads == 2);

    const auto s = parse_args({"--format", "csv", "sample", "--count", "10"});
    CHECK(s.format == Format::csv);
    CHECK(s.from == 1'500'000);
    CHECK(s.to == 10'000'000'000ull);
    CHECK(s.seed == std::optional<std::uint64_t>(1));

    const auto st = parse_args({"stats"});
    CHECK(st.limits == std::vector<std::uint64_t>{10'000, 1'000'000, 100'000'000});

    CHECK_THROWS_AS(parse_args({}), InvalidArgument);
    CHECK_THROWS_AS(parse_args({"verify"}), InvalidArgument);
    CHECK_THROWS_WITH_AS(parse_args({"verify", "--from", "10", "--to", "5"}), doctest::Contains("--from"), InvalidArgument);
    CHECK_THROWS_WITH_AS(parse_args({"decompose", "3"}), doctest::Contains("n must be >= 4"), InvalidArgument);
    CHECK_THROWS_AS(parse_args({"decompose", "abc"}), InvalidArgument);
    CHECK_THROWS_AS(parse_args({"--format", "xml", "stats"}), InvalidArgument);
    CHECK_THROWS_AS(parse_args({"gaps", "--limit", "7"}), InvalidArgument);
    CHECK_THROWS_AS(parse_args({"--help"}), HelpRequested);
}

TEST_CASE("memory budget from flag and environment") {
    CHECK_THROWS_AS(parse_args({"--memory-budget", "1000", "verify", "--to", "1000000"}), ResourceLimit);
    ::setenv(kMemoryBudgetEnv, "2_000", 1);
    CHECK(parse_args({"stats", "--limits", "100"}).memory_budget == 2000);
    CHECK_THROWS_AS(parse_args({"verify", "--to", "1000000"}), ResourceLimit);
    CHECK(parse_args({"--memory-budget", "5000000", "verify", "--to", "1000000"}).memory_budget == 5'000'000);
    ::unsetenv(kMemoryBudgetEnv);
}

TEST_CASE("verify reports empty exceptions above the threshold") {
    const auto r = invoke({"verify", "--from", "24", "--to", "1000000", "--max-terms", "5"});
    CHECK(r.status == kOk);
    const Json j = Json::parse(r.out);
    CHECK(j.at("meta").at("tool_version") == kToolVersion);
    CHECK(j.at("meta").at("config_echo").at("to") == 1'000'000);
    CHECK(j.at("result").at("exceptions").empty());
    CHECK(j.at("result").at("conjecture_pass") == true);
}

TEST_CASE("verify exit code on a conjecture violation") {
    const auto r = invoke({"verify", "--to", "2000", "--max-terms", "2"});
    CHECK(r.status == kConjectureViolation);
    CHECK(result_of(r).at("conjecture_pass") == false);
}

TEST_CASE("decompose through the CLI") {
    const auto r = invoke({"decompose", "78869"});
    CHECK(r.status == kOk);
    const Json res = result_of(r);
    CHECK(res.at("found") == true);
    const auto rep = representation_from_json(res.at("representation"));
    CHECK(rep.target == 78869);
    CHECK(rep.term_count() <= 4);
    CHECK(validate(rep));

    const auto fail = invoke({"decompose", "23"});
    CHECK(fail.status == kDecompositionFailure);
    CHECK(result_of(fail).at("found") == false);

    CHECK(invoke({"decompose", "2"}).status == kInvalidArguments);
}

TEST_CASE("stats CSV matches the density table layout") {
    const auto r = invoke({"stats", "--limits", "10000,1000000,100000000", "--format", "csv"});
    CHECK(r.status == kOk);
    CHECK(r.out ==
          "limit,prime_count,prime_power_count\n"
          "10000,1229,51\n"
          "1000000,78498,236\n"
          "100000000,5761455,1404\n");
}

TEST_CASE("square-gap through the CLI") {
    const auto ok = invoke({"square-gap", "3", "5"});
    CHECK(ok.status == kOk);
    CHECK(result_of(ok).at("record").at("gap") == "16");
    CHECK(result_of(ok).at("consecutive") == true);

    const auto big = invoke({"square-gap", "18361375334787046697", "18361375334787048247"});
    CHECK(big.status == kOk);
    CHECK(result_of(big).at("record").at("gap") == "56920263537839847163200");

    const auto composite = invoke({"square-gap", "18361375334787046697", "18361375334787048269"});
    CHECK(composite.status == kInvalidArguments);
    CHECK(composite.err.find("q=18361375334787048269 is not prime (divisible by 17)") != std::string::npos);
}

TEST_CASE("gaps and check-fixtures") {
    const auto g = invoke({"gaps", "--limit", "30"});
    CHECK(g.status == kOk);
    CHECK(gap_record_from_json(result_of(g)).gap == 9);

    const auto f = invoke({"check-fixtures", "--format", "text"});
    CHECK(f.status == kOk);
    CHECK(f.out.find("pass  3000000001 = 54767^2 + 743^2 + 5^6 + 17^3 + 5^5") != std::string::npos);
}

TEST_CASE("check_fixtures flags a tampered fixture") {
    const auto results = check_fixtures();
    REQUIRE(results.size() == 11);
    for (const auto& r : results) CHECK(r.ok);

    auto tampered = published_fixtures();
    tampered[3].values.back() = 255;
    const auto bad = check_fixtures(tampered);
    CHECK_FALSE(bad[3].ok);
    CHECK(bad[3].diagnostic.find("255") != std::string::npos);
    CHECK(bad[3].parts.empty());
}

TEST_CASE("identical configs give byte-identical reports") {
    const std::vector<std::string> args = {"sample", "--count", "50", "--seed", "9", "--keep-representations"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    CHECK(a.status == kOk);
    CHECK(strip_timestamp(a.out) == strip_timestamp(b.out));
    CHECK(Json::parse(a.out).at("meta").at("prng_id") == kPrngId);

    const auto c1 = invoke({"verify", "--to", "5000", "--format", "csv"});
    const auto c2 = invoke({"verify", "--to", "5000", "--format", "csv"});
    CHECK(c1.out == c2.out);
}

TEST_CASE("output file and checkpoint resume through the CLI") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto report_path = (dir / "ppsum_cli_report.json").string();
    const auto ckpt = (dir / "ppsum_cli_resume.ckpt").string();
    std::filesystem::remove(ckpt);

    // A partial run left on disk is picked up and completed.
    SumsetLayers partial(20'000, 5);
    partial.advance();
    partial.advance();
    write_checkpoint_file(ckpt, partial.save_checkpoint());

    const auto resumed = invoke({"verify", "--to", "20000", "--checkpoint", ckpt, "-o", report_path});
    CHECK(resumed.status == kOk);
    CHECK(resumed.out.empty());
    std::ifstream in(report_path);
    const Json j = Json::parse(in);
    const auto fresh = invoke({"verify", "--to", "20000"});
    CHECK(range_report_from_json(j.at("result")) == range_report_from_json(result_of(fresh)));
    CHECK(read_checkpoint_file(ckpt).completed_levels == 5);

    const auto mismatch = invoke({"verify", "--to", "30000", "--checkpoint", ckpt});
    CHECK(mismatch.status == kCheckpointError);
    CHECK(mismatch.err.find("hi=20000") != std::string::npos);

    {
        std::ofstream trunc(ckpt, std::ios::binary | std::ios::trunc);
        trunc << "PPSUMCKP garbage";
    }
    const auto corrupt = invoke({"verify", "--to", "20000", "--checkpoint", ckpt});
    CHECK(corrupt.status == kCheckpointError);
    CHECK(corrupt.err.find(ckpt) != std::string::npos);

    std::filesystem::remove(ckpt);
    std::filesystem::remove(report_path);
}

TEST_CASE("JSON round trip for every report type") {
    std::mt19937_64 rng(5);

    for (int i = 0; i < 20; ++i) {
        RangeReport r;
        r.lo = rng() % 1000 + 1;
        r.hi = r.lo + rng() % 100000;
        r.max_terms = 1 + rng() % 7;
        r.strict_min_two = rng() & 1;
        for (unsigned t = 1; t <= r.max_terms; ++t) r.histogram[t] = rng() % 100000;
        for (std::uint64_t e = 0; e < rng() % 5; ++e) r.exceptions.push_back(r.lo + e);
        r.conjecture_pass = rng() & 1;
        CHECK(range_report_from_json(Json::parse(to_json(r).dump())) == r);
    }

    const Decomposer d;
    SampleOptions keep;
    keep.retain_representations = true;
    const SampleRun run = sample(d, 10'000'000'000'000'000'000ull, 18'000'000'000'000'000'000ull, 6, 77, 5, keep);
    CHECK(sample_run_from_json(Json::parse(to_json(run).dump())) == run);
    const SampleRun lean = sample(d, 4, 40, 30, 1, 5);
    CHECK(sample_run_from_json(Json::parse(to_json(lean).dump())) == lean);

    for (const auto& rep : *run.representations) {
        const Json j = to_json(rep);
        CHECK(j.at("target").is_string());
        CHECK(representation_from_json(Json::parse(j.dump())) == rep);
    }

    StatsReport stats;
    stats.rows = density_table({100, 10'000});
    stats.estimates = {estimate_prime_power_count(100), estimate_prime_power_count(10'000)};
    stats.two_term_estimates = {estimate_two_term_combinations(10'000)};
    CHECK(stats_report_from_json(Json::parse(to_json(stats).dump())) == stats);
    CHECK(to_json(stats).at("prime_power_estimates")[1].at("square_term_display") == "21.71");

    const GapRecord g = square_gap(18361375334787046697ull, 18361375334787048247ull);
    const Json gj = to_json(g);
    CHECK(gj.at("gap") == "56920263537839847163200");
    CHECK(gap_record_from_json(Json::parse(gj.dump())) == g);

    SquareGapReport sq{3, 5, square_gap(3, 5), true, true, 0, 0};
    CHECK(square_gap_report_from_json(Json::parse(to_json(sq).dump())) == sq);

    for (const auto& f : check_fixtures()) CHECK(fixture_result_from_json(Json::parse(to_json(f).dump())) == f);

    CHECK_THROWS_AS(range_report_from_json(Json::parse("{\"lo\": 1}")), InvalidArgument);
    CHECK_THROWS_AS(representation_from_json(Json::parse("{\"target\": 5, \"parts\": [], \"term_count\": 0}")),
                    InvalidArgument);
}

TEST_CASE("sig4 formatting") {
    CHECK(sig4(144.764827) == "144.8");
    CHECK(sig4(10478.4276) == "1.048e+04");
    CHECK(sig4(235.7646) == "235.8");
}
