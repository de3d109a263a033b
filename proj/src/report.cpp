// report.cpp

#include "ppsum/report.hpp"

#include <cstdio>
#include <sstream>

namespace ppsum {

namespace {

std::string dec(std::uint64_t v) { return std::to_string(v); }

std::uint64_t u64_from(const Json& j, const char* field) {
    const Json& v = j.at(field);
    if (!v.is_string()) throw InvalidArgument(std::string("field '") + field + "' must be a decimal string");
    const u128 x = parse_u128(v.get<std::string>());
    if (x > ~std::uint64_t{0}) throw InvalidArgument(std::string("field '") + field + "' exceeds 64 bits");
    return static_cast<std::uint64_t>(x);
}

u128 u128_from(const Json& j, const char* field) {
    const Json& v = j.at(field);
    if (!v.is_string()) throw InvalidArgument(std::string("field '") + field + "' must be a decimal string");
    return parse_u128(v.get<std::string>());
}

// Wraps nlohmann's type/key errors so every malformed document surfaces as
// InvalidArgument.
template <class F>
auto parsing(const char* what, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

std::string join_values(const std::vector<PrimePower>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += dec(parts[i].value);
    }
    return s;
}

std::string join_powers(const std::vector<PrimePower>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += dec(parts[i].base) + "^" + std::to_string(parts[i].exponent);
    }
    return s;
}

}  // namespace

std::string sig4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// -------------------------------------------------------
// to_json
// -------------------------------------------------------

Json to_json(const PrimePower& pp) {
    return Json{{"value", dec(pp.value)}, {"base", dec(pp.base)}, {"exponent", pp.exponent}};
}

Json to_json(const RangeReport& r) {
    Json hist = Json::object();
    for (const auto& [t, n] : r.histogram) hist[std::to_string(t)] = n;
    return Json{{"lo", r.lo},
                {"hi", r.hi},
                {"max_terms", r.max_terms},
                {"strict_min_two", r.strict_min_two},
                {"histogram", hist},
                {"exceptions", r.exceptions},
                {"conjecture_pass", r.conjecture_pass}};
}

Json to_json(const Representation& r) {
    Json parts = Json::array();
    for (const auto& p : r.parts) parts.push_back(to_json(p));
    return Json{{"target", dec(r.target)}, {"term_count", r.term_count()}, {"parts", parts}};
}

Json to_json(const SampleRun& r) {
    Json failures = Json::array();
    for (auto f : r.failures) failures.push_back(dec(f));
    Json j{{"seed", dec(r.seed)},
           {"prng", r.prng},
           {"distribution", r.distribution},
           {"range_lo", dec(r.range_lo)},
           {"range_hi", dec(r.range_hi)},
           {"count", r.count},
           {"max_terms", r.max_terms},
           {"strict_min_two", r.strict_min_two},
           {"successes", r.successes},
           {"failures", failures},
           {"width_cap_hits", r.width_cap_hits}};
    if (r.representations) {
        Json reps = Json::array();
        for (const auto& rep : *r.representations) reps.push_back(to_json(rep));
        j["representations"] = reps;
    } else {
        j["representations"] = nullptr;
    }
    return j;
}

Json to_json(const DensityRow& r) {
    return Json{{"limit", r.limit}, {"prime_count", r.prime_count}, {"prime_power_count", r.prime_power_count}};
}

Json to_json(const GapRecord& r) {
    return Json{{"lower", to_string(r.lower)},
                {"upper", to_string(r.upper)},
                {"gap", to_string(r.gap)},
                {"kind", to_string(r.kind)}};
}

Json to_json(const PrimePowerEstimate& e) {
    Json terms = Json::array();
    for (const auto& t : e.terms)
        terms.push_back(Json{{"exponent", t.exponent}, {"root", t.root}, {"value", t.value}, {"exact_pi", t.exact}});
    return Json{{"x", dec(e.x)},
                {"formula", e.formula},
                {"total", e.total},
                {"total_display", sig4(e.total)},
                {"square_term", e.square_term},
                {"square_term_display", sig4(e.square_term)},
                {"terms", terms}};
}

Json to_json(const TwoTermEstimate& e) {
    return Json{{"x", dec(e.x)}, {"formula", e.formula}, {"value", e.value}, {"display", sig4(e.value)}};
}

Json to_json(const StatsReport& r) {
    Json rows = Json::array(), est = Json::array(), two = Json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    for (const auto& e : r.estimates) est.push_back(to_json(e));
    for (const auto& e : r.two_term_estimates) two.push_back(to_json(e));
    return Json{{"density", rows}, {"prime_power_estimates", est}, {"two_term_estimates", two}};
}

Json to_json(const SquareGapReport& r) {
    Json j{{"p", dec(r.p)}, {"q", dec(r.q)}, {"record", to_json(r.record)}, {"consecutive_checked", r.consecutive_checked}};
    if (r.consecutive_checked) {
        j["consecutive"] = r.consecutive;
        j["candidates_tested"] = r.candidates_tested;
        j["first_prime_between"] = r.first_prime_between ? Json(dec(r.first_prime_between)) : Json(nullptr);
    }
    return j;
}

Json to_json(const FixtureResult& r) {
    Json values = Json::array(), parts = Json::array();
    for (auto v : r.values) values.push_back(dec(v));
    for (const auto& p : r.parts) parts.push_back(to_json(p));
    return Json{{"target", dec(r.target)}, {"values", values}, {"ok", r.ok}, {"diagnostic", r.diagnostic}, {"parts", parts}};
}

// -------------------------------------------------------
// from_json
// -------------------------------------------------------

PrimePower prime_power_from_json(const Json& j) {
    return parsing("prime power", [&] {
        return PrimePower{u64_from(j, "base"), j.at("exponent").get<unsigned>(), u64_from(j, "value")};
    });
}

RangeReport range_report_from_json(const Json& j) {
    return parsing("range report", [&] {
        RangeReport r;
        r.lo = j.at("lo").get<std::uint64_t>();
        r.hi = j.at("hi").get<std::uint64_t>();
        r.max_terms = j.at("max_terms").get<unsigned>();
        r.strict_min_two = j.at("strict_min_two").get<bool>();
        for (const auto& [k, v] : j.at("histogram").items())
            r.histogram[static_cast<unsigned>(parse_u128(k))] = v.get<std::uint64_t>();
        r.exceptions = j.at("exceptions").get<std::vector<std::uint64_t>>();
        r.conjecture_pass = j.at("conjecture_pass").get<bool>();
        return r;
    });
}

Representation representation_from_json(const Json& j) {
    return parsing("representation", [&] {
        Representation r;
        r.target = u64_from(j, "target");
        for (const auto& p : j.at("parts")) r.parts.push_back(prime_power_from_json(p));
        if (j.at("term_count").get<std::size_t>() != r.parts.size())
            throw InvalidArgument("representation term_count does not match parts");
        return r;
    });
}

SampleRun sample_run_from_json(const Json& j) {
    return parsing("sample run", [&] {
        SampleRun r;
        r.seed = u64_from(j, "seed");
        r.prng = j.at("prng").get<std::string>();
        r.distribution = j.at("distribution").get<std::string>();
        r.range_lo = u64_from(j, "range_lo");
        r.range_hi = u64_from(j, "range_hi");
        r.count = j.at("count").get<std::uint64_t>();
        r.max_terms = j.at("max_terms").get<unsigned>();
        r.strict_min_two = j.at("strict_min_two").get<bool>();
        r.successes = j.at("successes").get<std::uint64_t>();
        for (const auto& f : j.at("failures")) {
            if (!f.is_string()) throw InvalidArgument("sample failures must be decimal strings");
            r.failures.push_back(static_cast<std::uint64_t>(parse_u128(f.get<std::string>())));
        }
        r.width_cap_hits = j.at("width_cap_hits").get<std::uint64_t>();
        if (!j.at("representations").is_null()) {
            r.representations.emplace();
            for (const auto& rep : j.at("representations")) r.representations->push_back(representation_from_json(rep));
        }
        return r;
    });
}

DensityRow density_row_from_json(const Json& j) {
    return parsing("density row", [&] {
        return DensityRow{j.at("limit").get<std::uint64_t>(), j.at("prime_count").get<std::uint64_t>(),
                          j.at("prime_power_count").get<std::uint64_t>()};
    });
}

GapRecord gap_record_from_json(const Json& j) {
    return parsing("gap record", [&] {
        return GapRecord{u128_from(j, "lower"), u128_from(j, "upper"), u128_from(j, "gap"),
                         parse_gap_kind(j.at("kind").get<std::string>())};
    });
}

SquareGapReport square_gap_report_from_json(const Json& j) {
    return parsing("square gap", [&] {
        SquareGapReport r;
        r.p = u64_from(j, "p");
        r.q = u64_from(j, "q");
        r.record = gap_record_from_json(j.at("record"));
        r.consecutive_checked = j.at("consecutive_checked").get<bool>();
        if (r.consecutive_checked) {
            r.consecutive = j.at("consecutive").get<bool>();
            r.candidates_tested = j.at("candidates_tested").get<std::uint64_t>();
            r.first_prime_between = j.at("first_prime_between").is_null() ? 0 : u64_from(j, "first_prime_between");
        }
        return r;
    });
}

FixtureResult fixture_result_from_json(const Json& j) {
    return parsing("fixture", [&] {
        FixtureResult r;
        r.target = u64_from(j, "target");
        for (const auto& v : j.at("values")) r.values.push_back(static_cast<std::uint64_t>(parse_u128(v.get<std::string>())));
        r.ok = j.at("ok").get<bool>();
        r.diagnostic = j.at("diagnostic").get<std::string>();
        for (const auto& p : j.at("parts")) r.parts.push_back(prime_power_from_json(p));
        return r;
    });
}

PrimePowerEstimate estimate_from_json(const Json& j) {
    return parsing("estimate", [&] {
        PrimePowerEstimate e;
        e.x = u64_from(j, "x");
        e.formula = j.at("formula").get<std::string>();
        e.total = j.at("total").get<double>();
        e.square_term = j.at("square_term").get<double>();
        for (const auto& t : j.at("terms"))
            e.terms.push_back({t.at("exponent").get<unsigned>(), t.at("root").get<double>(),
                               t.at("value").get<double>(), t.at("exact_pi").get<bool>()});
        return e;
    });
}

TwoTermEstimate two_term_estimate_from_json(const Json& j) {
    return parsing("two-term estimate", [&] {
        return TwoTermEstimate{u64_from(j, "x"), j.at("value").get<double>(), j.at("formula").get<std::string>()};
    });
}

StatsReport stats_report_from_json(const Json& j) {
    return parsing("stats", [&] {
        StatsReport r;
        for (const auto& row : j.at("density")) r.rows.push_back(density_row_from_json(row));
        for (const auto& e : j.at("prime_power_estimates")) r.estimates.push_back(estimate_from_json(e));
        for (const auto& e : j.at("two_term_estimates")) r.two_term_estimates.push_back(two_term_estimate_from_json(e));
        return r;
    });
}

// -------------------------------------------------------
// CSV
// -------------------------------------------------------

std::string density_csv(const std::vector<DensityRow>& rows) {
    std::string s = "limit,prime_count,prime_power_count\n";
    for (const auto& r : rows) s += dec(r.limit) + "," + dec(r.prime_count) + "," + dec(r.prime_power_count) + "\n";
    return s;
}

std::string range_report_csv(const RangeReport& r) {
    std::string s = "kind,key,value\n";
    s += "range,lo," + dec(r.lo) + "\nrange,hi," + dec(r.hi) + "\n";
    s += "range,max_terms," + std::to_string(r.max_terms) + "\n";
    s += std::string("range,strict_min_two,") + (r.strict_min_two ? "true" : "false") + "\n";
    for (const auto& [t, n] : r.histogram) s += "histogram," + std::to_string(t) + "," + dec(n) + "\n";
    for (auto e : r.exceptions) s += "exception,n," + dec(e) + "\n";
    s += std::string("range,conjecture_pass,") + (r.conjecture_pass ? "true" : "false") + "\n";
    return s;
}

std::string representation_csv(const Representation& r) {
    std::string s = "target,index,value,base,exponent\n";
    for (std::size_t i = 0; i < r.parts.size(); ++i)
        s += dec(r.target) + "," + std::to_string(i + 1) + "," + dec(r.parts[i].value) + "," + dec(r.parts[i].base) +
             "," + std::to_string(r.parts[i].exponent) + "\n";
    return s;
}

std::string sample_run_csv(const SampleRun& r) {
    std::string s = "seed,prng,range_lo,range_hi,count,max_terms,successes,failures,width_cap_hits\n";
    s += dec(r.seed) + "," + r.prng + "," + dec(r.range_lo) + "," + dec(r.range_hi) + "," + dec(r.count) + "," +
         std::to_string(r.max_terms) + "," + dec(r.successes) + "," + dec(r.failures.size()) + "," +
         dec(r.width_cap_hits) + "\n";
    return s;
}

std::string gap_record_csv(const GapRecord& r) {
    return "kind,lower,upper,gap\n" + std::string(to_string(r.kind)) + "," + to_string(r.lower) + "," +
           to_string(r.upper) + "," + to_string(r.gap) + "\n";
}

std::string square_gap_csv(const SquareGapReport& r) {
    std::string s = "p,q,p_squared,q_squared,gap,consecutive\n";
    s += dec(r.p) + "," + dec(r.q) + "," + to_string(r.record.lower) + "," + to_string(r.record.upper) + "," +
         to_string(r.record.gap) + "," + (r.consecutive_checked ? (r.consecutive ? "true" : "false") : "unchecked") +
         "\n";
    return s;
}

std::string fixtures_csv(const std::vector<FixtureResult>& results) {
    std::string s = "target,ok,parts,diagnostic\n";
    for (const auto& r : results) {
        std::string values;
        for (std::size_t i = 0; i < r.values.size(); ++i) values += (i ? "+" : "") + dec(r.values[i]);
        s += dec(r.target) + "," + (r.ok ? "pass" : "fail") + "," + values + ",\"" + r.diagnostic + "\"\n";
    }
    return s;
}

// -------------------------------------------------------
// Text
// -------------------------------------------------------

std::string range_report_text(const RangeReport& r) {
    std::ostringstream os;
    os << "range [" << r.lo << ", " << r.hi << "], max_terms " << r.max_terms
       << (r.strict_min_two ? ", at least two summands" : "") << "\n";
    for (const auto& [t, n] : r.histogram) os << "  r(n) = " << t << ": " << n << "\n";
    os << "  exceptions (" << r.exceptions.size() << "):";
    for (auto e : r.exceptions) os << " " << e;
    os << "\n  conjecture " << (r.conjecture_pass ? "holds" : "VIOLATED") << " on this range\n";
    return os.str();
}

std::string representation_text(const Representation& r) {
    return dec(r.target) + " = " + join_powers(r.parts, " + ") + " = " + join_values(r.parts, " + ") + " (" +
           std::to_string(r.term_count()) + " terms)\n";
}

std::string sample_run_text(const SampleRun& r) {
    std::ostringstream os;
    os << "sampled " << r.count << " targets uniformly from [" << r.range_lo << ", " << r.range_hi << "] (seed "
       << r.seed << ", " << r.prng << ")\n"
       << "  represented with <= " << r.max_terms << " terms: " << r.successes << "\n"
       << "  failures: " << r.failures.size() << "\n";
    for (auto f : r.failures) os << "    " << f << "\n";
    if (r.width_cap_hits) os << "  searches that hit the width cap: " << r.width_cap_hits << "\n";
    return os.str();
}

std::string stats_text(const StatsReport& r) {
    std::ostringstream os;
    os << "limit            primes       prime powers (p^k, k>=2)\n";
    for (const auto& row : r.rows) {
        char line[96];
        std::snprintf(line, sizeof line, "%-16llu %-12llu %llu\n", static_cast<unsigned long long>(row.limit),
                      static_cast<unsigned long long>(row.prime_count),
                      static_cast<unsigned long long>(row.prime_power_count));
        os << line;
    }
    for (const auto& e : r.estimates)
        os << "estimate x=" << e.x << ": total " << sig4(e.total) << ", squares " << sig4(e.square_term) << "  ["
           << e.formula << "]\n";
    for (const auto& e : r.two_term_estimates)
        os << "two-term sums x=" << e.x << ": " << sig4(e.value) << "  [" << e.formula << "]\n";
    return os.str();
}

std::string gap_record_text(const GapRecord& r) {
    return std::string(to_string(r.kind)) + ": " + to_string(r.lower) + " -> " + to_string(r.upper) + ", gap " +
           to_string(r.gap) + "\n";
}

std::string square_gap_text(const SquareGapReport& r) {
    std::string s = dec(r.q) + "^2 - " + dec(r.p) + "^2 = " + to_string(r.record.gap) + "\n";
    if (r.consecutive_checked) {
        s += r.consecutive ? "  consecutive primes (" + dec(r.candidates_tested) + " candidates tested)\n"
                           : "  NOT consecutive: " + dec(r.first_prime_between) + " is prime\n";
    }
    return s;
}

std::string fixtures_text(const std::vector<FixtureResult>& results) {
    std::string s;
    for (const auto& r : results) {
        s += (r.ok ? "pass  " : "FAIL  ") + dec(r.target) + " = ";
        if (r.ok) {
            s += join_powers(r.parts, " + ");
        } else {
            for (std::size_t i = 0; i < r.values.size(); ++i) s += (i ? " + " : "") + dec(r.values[i]);
            s += "  (" + r.diagnostic + ")";
        }
        s += "\n";
    }
    return s;
}

}  // namespace ppsum
