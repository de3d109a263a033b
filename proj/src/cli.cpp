// cli.cpp

#include "ppsum/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ppsum/arithmetic.hpp"

namespace ppsum::cli {

namespace {

// Throttled progress lines on the diagnostic stream.
class Progress {
public:
    Progress(std::ostream& err, bool quiet) : err_(err), quiet_(quiet) {}

    void note(const std::string& msg, bool force = false) {
        if (quiet_) return;
        const auto now = std::chrono::steady_clock::now();
        if (!force && now - last_ < std::chrono::seconds(1)) return;
        last_ = now;
        err_ << "ppsum: " << msg << "\n" << std::flush;
    }

private:
    std::ostream& err_;
    bool quiet_;
    std::chrono::steady_clock::time_point last_{};
};

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Rendered {
    Json json;
    std::string csv;
    std::string text;
    int status = kOk;
};

Rendered do_verify(const RunConfig& c, Progress& progress) {
    std::optional<SumsetLayers> state;
    if (c.checkpoint_path) {
        std::ifstream probe(*c.checkpoint_path, std::ios::binary);
        if (probe) {
            probe.close();
            state.emplace(SumsetLayers::resume_from(read_checkpoint_file(*c.checkpoint_path), c.to, c.max_terms,
                                                    c.memory_budget));
            progress.note("resumed " + *c.checkpoint_path + " at layer " +
                              std::to_string(state->completed_levels()) + "/" + std::to_string(c.max_terms),
                          true);
        }
    }
    if (!state) state.emplace(c.to, c.max_terms, c.memory_budget);

    state->run(c.threads, [&](unsigned done, unsigned total) {
        if (c.checkpoint_path) write_checkpoint_file(*c.checkpoint_path, state->save_checkpoint());
        progress.note("layer " + std::to_string(done) + "/" + std::to_string(total) + " complete", done == total);
    });

    const RangeReport rep = state->report(c.from, c.to, c.strict_min_two);
    return {to_json(rep), range_report_csv(rep), range_report_text(rep),
            rep.conjecture_pass ? kOk : kConjectureViolation};
}

DecomposeOptions decompose_options(const RunConfig& c) {
    DecomposeOptions opt;
    opt.width = c.width;
    opt.table_bound = c.table_bound;
    opt.memory_budget = c.memory_budget;
    opt.threads = c.threads;
    return opt;
}

Rendered do_decompose(const RunConfig& c, Progress& progress) {
    progress.note("building lookup table up to " + std::to_string(c.table_bound), true);
    const Decomposer decomposer(decompose_options(c));
    const DecomposeOutcome outcome = decomposer.decompose(c.n, c.max_terms, c.strict_min_two);

    Json j{{"target", std::to_string(c.n)},
           {"max_terms", c.max_terms},
           {"strict_min_two", c.strict_min_two},
           {"found", outcome.representation.has_value()},
           {"representation", outcome.representation ? to_json(*outcome.representation) : Json(nullptr)},
           {"width", c.width},
           {"width_cap_hit", outcome.width_cap_hit},
           {"nodes", outcome.nodes}};
    if (outcome.representation) {
        const auto& rep = *outcome.representation;
        return {j, representation_csv(rep), representation_text(rep), kOk};
    }
    std::string text = "no representation of " + std::to_string(c.n) + " with <= " + std::to_string(c.max_terms) +
                       " prime powers found" + (outcome.width_cap_hit ? " (width cap hit)" : "") + "\n";
    return {j, "target,index,value,base,exponent\n", text, kDecompositionFailure};
}

Rendered do_sample(const RunConfig& c, Progress& progress) {
    progress.note("building lookup table up to " + std::to_string(c.table_bound), true);
    const Decomposer decomposer(decompose_options(c));
    SampleOptions opt;
    opt.threads = c.threads;
    opt.retain_representations = c.keep_representations;
    opt.strict_min_two = c.strict_min_two;
    progress.note("decomposing " + std::to_string(c.count) + " sampled targets", true);
    const SampleRun run = sample(decomposer, c.from, c.to, c.count, c.seed.value_or(1), c.max_terms, opt);
    return {to_json(run), sample_run_csv(run), sample_run_text(run),
            run.failures.empty() ? kOk : kDecompositionFailure};
}

Rendered do_stats(const RunConfig& c, Progress& progress) {
    progress.note("sieving up to " + std::to_string(*std::max_element(c.limits.begin(), c.limits.end())), true);
    StatsReport rep;
    rep.rows = density_table(c.limits, c.memory_budget);
    for (std::uint64_t x : c.limits) {
        if (x >= 4) rep.estimates.push_back(estimate_prime_power_count(x));
        if (x >= 16) rep.two_term_estimates.push_back(estimate_two_term_combinations(x));
    }
    return {to_json(rep), density_csv(rep.rows), stats_text(rep), kOk};
}

Rendered do_gaps(const RunConfig& c, Progress&) {
    const GapRecord rec = largest_gap(c.limit, c.memory_budget);
    return {to_json(rec), gap_record_csv(rec), gap_record_text(rec), kOk};
}

Rendered do_square_gap(const RunConfig& c, Progress& progress) {
    SquareGapReport rep;
    rep.p = c.p;
    rep.q = c.q;
    rep.record = square_gap(c.p, c.q);
    if (c.check_consecutive) {
        progress.note("testing candidates between p and q", true);
        const auto check = check_consecutive_primes(c.p, c.q);
        rep.consecutive_checked = true;
        rep.consecutive = check.consecutive;
        rep.candidates_tested = check.candidates_tested;
        rep.first_prime_between = check.first_prime_between;
    }
    return {to_json(rep), square_gap_csv(rep), square_gap_text(rep), kOk};
}

Rendered do_check_fixtures(const RunConfig&, Progress&) {
    const auto results = check_fixtures();
    Json list = Json::array();
    std::uint64_t passed = 0;
    for (const auto& r : results) {
        list.push_back(to_json(r));
        passed += r.ok;
    }
    Json j{{"fixtures", list}, {"passed", passed}, {"failed", results.size() - passed}};
    return {j, fixtures_csv(results), fixtures_text(results), passed == results.size() ? kOk : kFixtureFailure};
}

}  // namespace

const char* to_string(Subcommand s) noexcept {
    switch (s) {
        case Subcommand::verify: return "verify";
        case Subcommand::decompose: return "decompose";
        case Subcommand::sample: return "sample";
        case Subcommand::stats: return "stats";
        case Subcommand::gaps: return "gaps";
        case Subcommand::square_gap: return "square-gap";
        case Subcommand::check_fixtures: return "check-fixtures";
    }
    return "?";
}

const char* to_string(Format f) noexcept {
    switch (f) {
        case Format::json: return "json";
        case Format::csv: return "csv";
        case Format::text: return "text";
    }
    return "?";
}

std::uint64_t parse_natural(std::string_view text, std::string_view param) {
    std::string digits;
    bool prev_sep = true;  // rejects a leading '_'
    for (char ch : text) {
        if (ch == '_') {
            if (prev_sep) break;
            prev_sep = true;
            continue;
        }
        prev_sep = false;
        digits.push_back(ch);
    }
    auto fail = [&](const char* why) {
        return InvalidArgument(std::string(param) + ": " + why + " \"" + std::string(text) + "\"");
    };
    if (digits.empty() || prev_sep) throw fail("expected a natural number, got");
    for (char ch : digits)
        if (ch < '0' || ch > '9') throw fail("expected a natural number, got");
    u128 v = 0;
    for (char ch : digits) {
        v = v * 10 + static_cast<unsigned>(ch - '0');
        if (v > ~std::uint64_t{0}) throw fail("value exceeds 2^64-1:");
    }
    return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> parse_natural_list(std::string_view text, std::string_view param) {
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_natural(text.substr(start, comma - start), param));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Sums of prime powers p^k (k >= 2): verification, decomposition and statistics", "ppsum"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json", budget, threads;
    std::string output, checkpoint;
    bool quiet = false;
    app.add_option("--format", format, "Report format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("-o,--output", output, "Write the report to this file instead of stdout");
    app.add_option("--memory-budget", budget,
                   std::string("Byte ceiling for sieves and DP layers (default: $") + kMemoryBudgetEnv +
                       " or 1 GiB)");
    app.add_option("--threads", threads, "Worker threads (default: hardware concurrency)");
    app.add_flag("-q,--quiet", quiet, "Suppress progress output");

    std::string from, to, max_terms, width, table_bound, count, seed, limits, limit, n, p, q;
    bool strict = false, keep = false, no_consecutive = false;

    auto* verify = app.add_subcommand("verify", "Exhaustive minimal-summand counts over [from, to]");
    verify->add_option("--from", from, "Lower end of the reported range (default 1)");
    verify->add_option("--to", to, "Upper end of the range")->required();
    verify->add_option("--max-terms", max_terms, "Summand budget (default 5)");
    verify->add_flag("--strict-min-two", strict, "Require at least two summands");
    verify->add_option("--checkpoint", checkpoint, "Resume from / save layers to this file");

    auto* decompose = app.add_subcommand("decompose", "Find a representation of one target");
    decompose->add_option("n", n, "Target (>= 4)")->required();
    decompose->add_option("--max-terms", max_terms, "Summand budget (default 5)");
    decompose->add_flag("--strict-min-two", strict, "Require at least two summands");
    decompose->add_option("--width", width, "Candidates per recursion level (default 200)");
    decompose->add_option("--table-bound", table_bound, "Remainder lookup table bound (default 2_000_000)");

    auto* samp = app.add_subcommand("sample", "Decompose uniformly sampled targets");
    samp->add_option("--from", from, "Lower bound (default 1_500_000)");
    samp->add_option("--to", to, "Upper bound (default 10_000_000_000)");
    samp->add_option("--count", count, "Number of targets (default 1000)");
    samp->add_option("--seed", seed, "PRNG seed (default 1)");
    samp->add_option("--max-terms", max_terms, "Summand budget (default 5)");
    samp->add_flag("--strict-min-two", strict, "Require at least two summands");
    samp->add_option("--width", width, "Candidates per recursion level (default 200)");
    samp->add_option("--table-bound", table_bound, "Remainder lookup table bound (default 2_000_000)");
    samp->add_flag("--keep-representations", keep, "Include every representation in the report");

    auto* stats = app.add_subcommand("stats", "Prime and prime-power counts with asymptotic estimates");
    stats->add_option("--limits", limits, "Comma-separated limits (default 10000,1000000,100000000)");

    auto* gaps = app.add_subcommand("gaps", "Largest gap between consecutive prime powers <= limit");
    gaps->add_option("--limit", limit, "Upper bound (>= 8)")->required();

    auto* sq = app.add_subcommand("square-gap", "q^2 - p^2 for primes p < q");
    sq->add_option("p", p, "Smaller prime")->required();
    sq->add_option("q", q, "Larger prime")->required();
    sq->add_flag("--no-consecutive-check", no_consecutive, "Skip testing the candidates between p and q");

    auto* fixtures = app.add_subcommand("check-fixtures", "Validate the published example representations");

    std::vector<std::string> storage{"ppsum"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream out, err;
        app.exit(e, out, err);
        throw HelpRequested{out.str()};
    } catch (const CLI::ParseError& e) {
        throw InvalidArgument(e.what());
    }

    RunConfig c;
    if (verify->parsed()) c.subcommand = Subcommand::verify;
    else if (decompose->parsed()) c.subcommand = Subcommand::decompose;
    else if (samp->parsed()) c.subcommand = Subcommand::sample;
    else if (stats->parsed()) c.subcommand = Subcommand::stats;
    else if (gaps->parsed()) c.subcommand = Subcommand::gaps;
    else if (sq->parsed()) c.subcommand = Subcommand::square_gap;
    else if (fixtures->parsed()) c.subcommand = Subcommand::check_fixtures;

    c.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
    if (!output.empty()) c.output_path = output;
    if (!checkpoint.empty()) c.checkpoint_path = checkpoint;
    c.quiet = quiet;

    if (!budget.empty()) {
        c.memory_budget = parse_natural(budget, "--memory-budget");
    } else if (const char* env = std::getenv(kMemoryBudgetEnv); env && *env) {
        c.memory_budget = parse_natural(env, kMemoryBudgetEnv);
    }
    c.threads = threads.empty() ? std::max(1u, std::thread::hardware_concurrency())
                                : static_cast<unsigned>(std::min<std::uint64_t>(parse_natural(threads, "--threads"), 4096));

    auto small = [](const std::string& s, const char* name) {
        const std::uint64_t v = parse_natural(s, name);
        if (v > 1'000'000) throw InvalidArgument(std::string(name) + ": value " + s + " is too large");
        return static_cast<unsigned>(v);
    };
    if (!max_terms.empty()) c.max_terms = small(max_terms, "--max-terms");
    if (!width.empty()) c.width = small(width, "--width");
    if (!table_bound.empty()) c.table_bound = parse_natural(table_bound, "--table-bound");
    c.strict_min_two = strict;

    switch (c.subcommand) {
        case Subcommand::verify:
            c.from = from.empty() ? 1 : parse_natural(from, "--from");
            c.to = parse_natural(to, "--to");
            break;
        case Subcommand::decompose:
            c.n = parse_natural(n, "n");
            break;
        case Subcommand::sample:
            c.from = from.empty() ? 1'500'000 : parse_natural(from, "--from");
            c.to = to.empty() ? 10'000'000'000ull : parse_natural(to, "--to");
            if (!count.empty()) c.count = parse_natural(count, "--count");
            c.seed = seed.empty() ? 1 : parse_natural(seed, "--seed");
            c.keep_representations = keep;
            break;
        case Subcommand::stats:
            c.limits = limits.empty() ? std::vector<std::uint64_t>{10'000, 1'000'000, 100'000'000}
                                      : parse_natural_list(limits, "--limits");
            break;
        case Subcommand::gaps:
            c.limit = parse_natural(limit, "--limit");
            break;
        case Subcommand::square_gap:
            c.p = parse_natural(p, "p");
            c.q = parse_natural(q, "q");
            c.check_consecutive = !no_consecutive;
            break;
        case Subcommand::check_fixtures:
            break;
    }
    validate(c);
    return c;
}

void validate(const RunConfig& c) {
    auto bad = [](const std::string& msg) { return InvalidArgument(msg); };
    if (c.threads == 0) throw bad("--threads must be >= 1");
    if (c.memory_budget == 0) throw bad("--memory-budget must be >= 1");
    switch (c.subcommand) {
        case Subcommand::verify:
            if (c.from < 1) throw bad("--from must be >= 1");
            if (c.from > c.to) throw bad("--from (" + std::to_string(c.from) + ") exceeds --to (" + std::to_string(c.to) + ")");
            if (c.max_terms < 1) throw bad("--max-terms must be >= 1");
            require_budget("verify --to " + std::to_string(c.to), SumsetLayers::bytes_for(c.to, c.max_terms),
                           c.memory_budget);
            break;
        case Subcommand::decompose:
            if (c.n < 4) throw bad("n must be >= 4, got " + std::to_string(c.n));
            [[fallthrough]];
        case Subcommand::sample:
            if (c.max_terms < 1) throw bad("--max-terms must be >= 1");
            if (c.width < 1) throw bad("--width must be >= 1");
            if (c.subcommand == Subcommand::sample) {
                if (c.from < 4) throw bad("--from must be >= 4");
                if (c.from > c.to) throw bad("--from (" + std::to_string(c.from) + ") exceeds --to (" + std::to_string(c.to) + ")");
                if (c.count < 1) throw bad("--count must be >= 1");
            }
            require_budget("--table-bound " + std::to_string(c.table_bound),
                           SumsetLayers::bytes_for(c.table_bound, kDefaultMaxTerms), c.memory_budget);
            break;
        case Subcommand::stats:
            if (c.limits.empty()) throw bad("--limits must name at least one limit");
            for (auto l : c.limits)
                require_budget("--limits " + std::to_string(l), PrimeTable::bytes_for(l), c.memory_budget);
            break;
        case Subcommand::gaps:
            if (c.limit < 8) throw bad("--limit must be >= 8 (two prime powers), got " + std::to_string(c.limit));
            break;
        case Subcommand::square_gap:
            if (c.p >= c.q) throw bad("p (" + std::to_string(c.p) + ") must be less than q (" + std::to_string(c.q) + ")");
            break;
        case Subcommand::check_fixtures:
            break;
    }
}

Json config_echo(const RunConfig& c) {
    Json j{{"subcommand", to_string(c.subcommand)}, {"format", to_string(c.format)}};
    switch (c.subcommand) {
        case Subcommand::verify:
            j["from"] = c.from;
            j["to"] = c.to;
            j["max_terms"] = c.max_terms;
            j["strict_min_two"] = c.strict_min_two;
            j["checkpoint"] = c.checkpoint_path ? Json(*c.checkpoint_path) : Json(nullptr);
            break;
        case Subcommand::decompose:
            j["n"] = std::to_string(c.n);
            j["max_terms"] = c.max_terms;
            j["strict_min_two"] = c.strict_min_two;
            j["width"] = c.width;
            j["table_bound"] = c.table_bound;
            break;
        case Subcommand::sample:
            j["from"] = std::to_string(c.from);
            j["to"] = std::to_string(c.to);
            j["count"] = c.count;
            j["seed"] = std::to_string(c.seed.value_or(1));
            j["max_terms"] = c.max_terms;
            j["strict_min_two"] = c.strict_min_two;
            j["width"] = c.width;
            j["table_bound"] = c.table_bound;
            j["keep_representations"] = c.keep_representations;
            break;
        case Subcommand::stats:
            j["limits"] = c.limits;
            break;
        case Subcommand::gaps:
            j["limit"] = c.limit;
            break;
        case Subcommand::square_gap:
            j["p"] = std::to_string(c.p);
            j["q"] = std::to_string(c.q);
            j["check_consecutive"] = c.check_consecutive;
            break;
        case Subcommand::check_fixtures:
            break;
    }
    j["memory_budget"] = c.memory_budget;
    return j;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Progress progress(err, c.quiet);
    Rendered rendered;
    try {
        validate(c);
        switch (c.subcommand) {
            case Subcommand::verify: rendered = do_verify(c, progress); break;
            case Subcommand::decompose: rendered = do_decompose(c, progress); break;
            case Subcommand::sample: rendered = do_sample(c, progress); break;
            case Subcommand::stats: rendered = do_stats(c, progress); break;
            case Subcommand::gaps: rendered = do_gaps(c, progress); break;
            case Subcommand::square_gap: rendered = do_square_gap(c, progress); break;
            case Subcommand::check_fixtures: rendered = do_check_fixtures(c, progress); break;
        }
    } catch (const InvalidArgument& e) {
        err << "ppsum " << to_string(c.subcommand) << ": invalid argument: " << e.what() << "\n";
        return kInvalidArguments;
    } catch (const ResourceLimit& e) {
        err << "ppsum " << to_string(c.subcommand) << ": resource limit: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const CheckpointError& e) {
        err << "ppsum " << to_string(c.subcommand) << ": checkpoint: " << e.what() << "\n";
        return kCheckpointError;
    } catch (const std::exception& e) {
        err << "ppsum " << to_string(c.subcommand) << ": error: " << e.what() << "\n";
        return kInternalError;
    }

    std::string body;
    switch (c.format) {
        case Format::json: {
            Json meta{{"tool_version", kToolVersion},
                      {"timestamp", utc_timestamp()},
                      {"config_echo", config_echo(c)},
                      {"prng_id", c.subcommand == Subcommand::sample ? Json(kPrngId) : Json(nullptr)}};
            body = Json{{"meta", meta}, {"result", rendered.json}}.dump(2) + "\n";
            break;
        }
        case Format::csv: body = rendered.csv; break;
        case Format::text: body = rendered.text; break;
    }

    if (c.output_path) {
        std::ofstream file(*c.output_path, std::ios::trunc);
        if (!file || !(file << body)) {
            err << "ppsum: cannot write report to --output " << *c.output_path << "\n";
            return kInvalidArguments;
        }
    } else {
        out << body << std::flush;
    }
    if (rendered.status == kConjectureViolation)
        err << "ppsum verify: exception above " << kConjectureThreshold << " found\n";
    else if (rendered.status == kDecompositionFailure)
        err << "ppsum " << to_string(c.subcommand) << ": no representation found\n";
    else if (rendered.status == kFixtureFailure)
        err << "ppsum check-fixtures: fixture validation failed\n";
    return rendered.status;
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    RunConfig config;
    try {
        config = parse_args(args);
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return kOk;
    } catch (const InvalidArgument& e) {
        std::cerr << "ppsum: invalid argument: " << e.what() << "\n";
        return kInvalidArguments;
    } catch (const ResourceLimit& e) {
        std::cerr << "ppsum: resource limit: " << e.what() << "\n";
        return kResourceLimit;
    }
    return run(config, std::cout, std::cerr);
}

// -------------------------------------------------------
// Published fixtures
// -------------------------------------------------------

const std::vector<Fixture>& published_fixtures() {
    static const std::vector<Fixture> fixtures = {
        {24, {8, 16}},
        {26, {9, 9, 4, 4}},
        {78869, {69169, 6859, 2809, 32}},
        {512550, {502681, 7921, 1331, 361, 256}},
        {701721, {687241, 12769, 961, 625, 125}},
        {2500050, {2493241, 5329, 625, 512, 343}},
        {12000728, {11992369, 6889, 841, 625, 4}},
        {50000162, {49970761, 24389, 2809, 2187, 16}},
        {250000558, {249924481, 73441, 1369, 1024, 243}},
        {2500000710, {2499900001, 96721, 2401, 1331, 256}},
        {3000000001, {2999424289, 552049, 15625, 4913, 3125}},
    };
    return fixtures;
}

std::vector<FixtureResult> check_fixtures(const std::vector<Fixture>& fixtures) {
    std::vector<FixtureResult> results;
    for (const auto& f : fixtures) {
        FixtureResult r;
        r.target = f.target;
        r.values = f.values;
        const auto verdict = ppsum::validate(f.target, f.values);
        r.ok = verdict.ok;
        r.diagnostic = verdict.diagnostic;
        if (r.ok)
            for (auto v : f.values) r.parts.push_back(*classify(v));
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace ppsum::cli
