// acceptance.cpp
// Exit criteria, one PASS/FAIL line each. `acceptance --criterion N` runs a
// single criterion; `--stretch` adds the full 10^7 exhaustive run.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ppsum/cli.hpp"

using namespace ppsum;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        notes.push_back((ok ? "ok: " : "FAILED: ") + what);
        pass = pass && ok;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CliResult {
    int status;
    std::string out;
};

CliResult run_cli(std::vector<std::string> args) {
    args.push_back("--quiet");
    std::ostringstream out, err;
    const int status = cli::run(cli::parse_args(args), out, err);
    return {status, out.str()};
}

const std::vector<std::uint64_t> kSmallExceptions = {1, 2, 3, 5, 6, 7, 10, 11, 14, 15, 19, 23};

// 1. Density table through `stats --limits 10000,1000000,100000000`.
Outcome density_table_criterion() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto r = run_cli({"stats", "--limits", "10000,1000000,100000000", "--format", "csv"});
    const double elapsed = seconds_since(t0);
    o.require(r.status == cli::kOk, "exit status 0");
    const std::string expected =
        "limit,prime_count,prime_power_count\n"
        "10000,1229,51\n"
        "1000000,78498,236\n"
        "100000000,5761455,1404\n";
    o.require(r.out == expected, "(1229, 51), (78498, 236), (5761455, 1404) exactly");
    o.require(elapsed < 120.0, "runtime " + std::to_string(elapsed) + " s < 120 s");
    return o;
}

// 2. `verify --from 1 --to 1000000`, with the small exceptions confirmed by brute force.
Outcome verification_criterion(bool stretch) {
    Outcome o;
    auto t0 = Clock::now();
    const auto r = run_cli({"verify", "--from", "1", "--to", "1000000"});
    double elapsed = seconds_since(t0);
    o.require(r.status == cli::kOk, "exit status 0");
    const auto rep = range_report_from_json(Json::parse(r.out).at("result"));
    o.require(rep.exceptions == kSmallExceptions, "exceptions == {1,2,3,5,6,7,10,11,14,15,19,23}");
    o.require(rep.conjecture_pass, "conjecture_pass true");

    oracle::MinimalTerms brute(oracle::prime_powers_upto(200), 5);
    std::vector<std::uint64_t> brute_exceptions;
    for (std::uint64_t n = 1; n <= 200; ++n)
        if (!brute(n)) brute_exceptions.push_back(n);
    o.require(brute_exceptions == kSmallExceptions, "brute-force oracle finds the same exceptions in [1, 200]");
    o.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s < 60 s");

    if (stretch) {
        t0 = Clock::now();
        const auto full = run_cli({"verify", "--from", "1", "--to", "10_000_000"});
        elapsed = seconds_since(t0);
        const auto full_rep = range_report_from_json(Json::parse(full.out).at("result"));
        o.require(full_rep.exceptions == kSmallExceptions && full_rep.conjecture_pass,
                  "stretch: [1, 10^7] has the same exceptions (" + std::to_string(elapsed) + " s)");
    }
    return o;
}

// 3. Published representations.
Outcome fixture_criterion() {
    Outcome o;
    const auto results = cli::check_fixtures();
    o.require(results.size() == 11, "11 fixtures");
    for (const auto& r : results) {
        std::uint64_t sum = 0;
        for (auto v : r.values) sum += v;
        bool exponents_ok = r.parts.size() == r.values.size();
        for (const auto& p : r.parts) exponents_ok = exponents_ok && p.exponent >= 2 && is_prime(p.base);
        o.require(r.ok && sum == r.target && exponents_ok,
                  std::to_string(r.target) + (r.ok ? "" : " (" + r.diagnostic + ")"));
    }
    return o;
}

// 4. DP minimal counts against the memoised DFS for every n <= 10^4.
Outcome oracle_criterion() {
    Outcome o;
    const auto t0 = Clock::now();
    SumsetLayers dp(10'000, 5);
    dp.run();
    oracle::MinimalTerms brute(oracle::prime_powers_upto(10'000), 5);
    std::uint64_t mismatches = 0;
    for (std::uint64_t n = 0; n <= 10'000; ++n) mismatches += dp.minimal_terms(n) != brute(n);
    const double elapsed = seconds_since(t0);
    o.require(mismatches == 0, std::to_string(mismatches) + " mismatches over [0, 10^4]");
    o.require(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s < 30 s");
    return o;
}

// 5. Published targets plus 1000 seeded samples from [1.5e6, 1e10].
Outcome decomposition_criterion() {
    Outcome o;
    const auto t0 = Clock::now();
    const Decomposer d;
    for (const auto& f : cli::published_fixtures()) {
        const auto out = d.decompose(f.target, 5);
        o.require(out.representation && out.representation->term_count() <= 5 && validate(*out.representation),
                  "decompose " + std::to_string(f.target));
    }
    SampleOptions keep;
    keep.retain_representations = true;
    const auto run = sample(d, 1'500'000, 10'000'000'000ull, 1000, 1, 5, keep);
    bool all_valid = run.representations.has_value();
    for (const auto& rep : *run.representations) all_valid = all_valid && rep.term_count() <= 5 && validate(rep);
    o.require(run.successes == 1000 && run.failures.empty(),
              std::to_string(run.successes) + "/1000 samples represented (seed 1, " + run.prng + ")");
    o.require(all_valid, "every sampled representation validates with <= 5 terms");
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 300.0, "runtime " + std::to_string(elapsed) + " s < 300 s");
    return o;
}

// 6. Gap arithmetic on the published consecutive-prime pair.
Outcome gap_criterion() {
    Outcome o;
    const auto t0 = Clock::now();
    const std::uint64_t p = 18361375334787046697ull;
    const std::uint64_t q = 18361375334787048269ull;
    const std::string expected = "57728164052570477286552";

    std::string gap;
    try {
        gap = to_string(square_gap(p, q).gap);
    } catch (const InvalidArgument& e) {
        gap = std::string("error: ") + e.what();
    }
    o.require(gap == expected, "square_gap(p, q) == " + expected + " (got " + gap + ")");
    o.require(to_string(square_difference(p, q)) == expected, "(q - p)(q + p) == " + expected);
    o.require(is_prime(p), "p = " + std::to_string(p) + " is prime");
    const auto factor = small_factor(q);
    o.require(is_prime(q), "q = " + std::to_string(q) + " is prime" +
                               (factor ? " (q = " + std::to_string(*factor) + " * " + std::to_string(q / *factor) + ")"
                                       : ""));
    const auto check = check_consecutive_primes(p, q);
    o.require(check.consecutive, "no prime strictly between p and q" +
                                     (check.consecutive ? std::string()
                                                        : " (" + std::to_string(check.first_prime_between) + " is prime)"));
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 10.0, "runtime " + std::to_string(elapsed) + " s < 10 s");
    return o;
}

// 7. Property suites.
Outcome property_criterion() {
    Outcome o;

    bool round_trip = true;
    for (const auto& pp : enumerate_prime_powers(100'000)) round_trip = round_trip && classify(pp.value) == pp;
    o.require(round_trip, "classify round-trips all prime powers <= 10^5");

    const auto wide = verify_range(1, 100, 5);
    const auto narrow = verify_range(1, 50, 5);
    std::vector<std::uint64_t> restricted;
    for (auto e : wide.exceptions)
        if (e <= 50) restricted.push_back(e);
    o.require(restricted == narrow.exceptions, "exceptions of [1,100] restricted to [1,50] equal those of [1,50]");

    SumsetLayers whole(200'000, 5);
    whole.run();
    SumsetLayers partial(200'000, 5);
    for (int i = 0; i < 3; ++i) partial.advance();
    std::stringstream buf;
    write_checkpoint(buf, partial.save_checkpoint());
    auto resumed = SumsetLayers::resume_from(read_checkpoint(buf), 200'000, 5);
    resumed.run();
    o.require(resumed.save_checkpoint() == whole.save_checkpoint() &&
                  resumed.report(1, 200'000, false) == whole.report(1, 200'000, false),
              "checkpoint after layer 3 resumes bit-identically");

    const Decomposer d;
    SampleOptions keep;
    keep.retain_representations = true;
    const auto a = sample(d, 1'500'000, 10'000'000'000ull, 100, 2024, 5, keep);
    const auto b = sample(d, 1'500'000, 10'000'000'000ull, 100, 2024, 5, keep);
    o.require(a == b, "identical seed gives an identical sample run");

    const auto r1 = run_cli({"sample", "--count", "25", "--seed", "3"});
    const auto r2 = run_cli({"sample", "--count", "25", "--seed", "3"});
    Json j1 = Json::parse(r1.out), j2 = Json::parse(r2.out);
    j1["meta"].erase("timestamp");
    j2["meta"].erase("timestamp");
    o.require(j1.dump() == j2.dump(), "identical CLI config gives identical reports apart from the timestamp");

    bool json_ok = range_report_from_json(Json::parse(to_json(wide).dump())) == wide &&
                   sample_run_from_json(Json::parse(to_json(a).dump())) == a;
    for (const auto& rep : *a.representations)
        json_ok = json_ok && representation_from_json(Json::parse(to_json(rep).dump())) == rep;
    const auto rows = density_table({10'000, 1'000'000});
    for (const auto& row : rows) json_ok = json_ok && density_row_from_json(Json::parse(to_json(row).dump())) == row;
    const auto g = largest_gap(1'000'000);
    json_ok = json_ok && gap_record_from_json(Json::parse(to_json(g).dump())) == g;
    o.require(json_ok, "JSON round trip for range, sample, representation, density and gap reports");
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    bool stretch = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--stretch") == 0) stretch = true;
    }

    const std::vector<Criterion> criteria = {
        {1, "density table reproduced exactly", density_table_criterion},
        {2, "exhaustive verification of [1, 10^6]", [&] { return verification_criterion(stretch); }},
        {3, "published representations validate", fixture_criterion},
        {4, "DP equals brute-force oracle for n <= 10^4", oracle_criterion},
        {5, "large-target decomposition", decomposition_criterion},
        {6, "prime-square gap arithmetic and endpoint primality", gap_criterion},
        {7, "property suites", property_criterion},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.title << "\n";
        for (const auto& n : o.notes) std::cout << "         " << n << "\n";
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
