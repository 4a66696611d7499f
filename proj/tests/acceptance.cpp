// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "logcloak/errors.hpp"
#include "logcloak/grid.hpp"
#include "logcloak/pipeline.hpp"
#include "test_support.hpp"

using namespace logcloak;
using logcloak::support::fixture;
using logcloak::support::rules_file;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double ac1_seconds = 1.0;
constexpr double ac2_render_tolerance = 5e-5;
constexpr double ac3_tolerance = 1e-6;
constexpr int property_cases = 1000;
constexpr double ac6_seconds = 60.0;
constexpr double ac7_min_saving = 0.80;
constexpr double ac7_min_mean_length = 90.0;
constexpr std::size_t ac8_lines = 100000;
constexpr std::size_t ac8_workers = 4;

fs::path work_dir;
int failures = 0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(const std::string& id, const std::string& what, const std::function<std::string()>& check) {
    std::string detail;
    bool ok = false;
    try {
        detail = check();
        ok = detail.rfind("FAIL", 0) != 0;
    } catch (const std::exception& e) {
        detail = std::string("FAIL exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ' ' << what << " : " << detail << std::endl;
}

std::string fail(const std::string& why) { return "FAIL " + why; }

RunConfig run_config(const std::string& input, const std::string& rules, const std::string& sub) {
    RunConfig cfg;
    cfg.inputs = {input};
    cfg.rules_path = rules_file(rules);
    cfg.out_dir = work_dir / sub;
    return cfg;
}

RuleSet cron_rules(Mode mode) {
    RuleSet r = load_rules(rules_file("cron.rules"));
    r.set_mode(mode);
    return r;
}

std::string ac1() {
    const auto t0 = Clock::now();
    std::ostringstream sink;
    auto cfg = run_config(fixture("cron.log"), "cron.rules", "ac1");
    const auto anon = run_anonymize(cfg, sink);
    const auto reports = run_usefulness(cfg, sink);
    const double elapsed = seconds_since(t0);
    const auto& rows = reports.at(0).second.rows;
    if (anon.distinct_categories != 6 || rows.size() != 6)
        return fail(std::to_string(rows.size()) + " categories");
    std::multiset<Rational> got, want = {Rational(1, 2), Rational(1, 10), Rational(1, 10), Rational(1, 10),
                                         Rational(1, 10), Rational(1, 10)};
    for (const auto& r : rows) got.insert(r.dominance);
    if (got != want) return fail("dominance multiset differs");
    if (elapsed >= ac1_seconds) return fail("took " + std::to_string(elapsed) + " s");
    return "6 categories, D = {1/2, 1/10 x5}, " + std::to_string(elapsed) + " s";
}

std::string ac2() {
    const auto corpus = support::read_corpus(fixture("cron.log"));
    const std::vector<std::tuple<Mode, Rational, double>> expected = {
        {Mode::Global, Rational(37, 60), 0.6167}, {Mode::Group, Rational(47, 60), 0.7833}, {Mode::Individual, 1, 1.0}};
    std::string detail;
    for (const auto& [mode, exact, shown] : expected) {
        const Rational u = support::accumulate(corpus, cron_rules(mode)).report("").usefulness;
        if (u != exact) return fail(std::string(to_string(mode)) + " U = " + u.str());
        const double rendered = std::stod(to_decimal(u));
        if (std::abs(rendered - shown) > ac2_render_tolerance)
            return fail(std::string(to_string(mode)) + " renders " + to_decimal(u));
        detail += std::string(to_string(mode)) + "=" + u.str() + " (" + to_decimal(u) + ") ";
    }
    return detail;
}

std::string ac3() {
    const Rational d43 = parse_rational("0.43"), d09 = parse_rational("0.09"), d05 = parse_rational("0.05");
    const Rational r14 = parse_rational("1/14");
    std::vector<SummaryRow> rows = {{d43, 1}, {d09, r14}, {d09, r14}, {d05, 1}, {d05, 1}};
    const double head = to_double(usefulness_from_summary(rows));
    rows.push_back({parse_rational("0.28"), 1});
    rows.push_back({parse_rational("0.01"), 0});
    const double full = to_double(usefulness_from_summary(rows));
    if (std::abs(head - 0.542857142857) > ac3_tolerance) return fail("head " + std::to_string(head));
    if (std::abs(full - 0.822857142857) > ac3_tolerance) return fail("full " + std::to_string(full));
    return "head " + std::to_string(head) + ", full " + std::to_string(full);
}

std::string ac4() {
    const auto corpus = support::read_corpus(fixture("cmdpair.log"));
    const std::vector<std::pair<std::string, std::optional<std::string>>> rows = {
        {"Raw", std::nullopt},
        {"Global", "degree_global.rules"},
        {"Type1", "degree_type1.rules"},
        {"Type2", "degree_type2.rules"},
        {"Type3", "degree_type3.rules"}};
    const std::string want = "NYNNN";
    std::string got;
    for (const auto& [name, file] : rows) {
        const RuleSet rules = file ? load_rules(rules_file(*file)) : RuleSet({}, Mode::Global);
        Deidentifier deid(rules);
        Encoder enc(EncoderConfig{});
        const auto a = enc.encode(deid.deidentify(corpus[0]), event_pattern(corpus[0], rules));
        const auto b = enc.encode(deid.deidentify(corpus[1]), event_pattern(corpus[1], rules));
        got += a.hash_key == b.hash_key ? 'Y' : 'N';
    }
    if (got != want) return fail("equality column " + got + ", expected " + want);
    return "Raw/Global/Type1/Type2/Type3 = " + got;
}

std::string ac5a() {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<Timestamp> ts(0, 4'000'000'000LL);
    for (int i = 0; i < property_cases; ++i) {
        const RawLogEntry e{ts(rng), support::random_source(rng), support::random_message(rng)};
        if (parse_line(render_entry(e)) != e) return fail("round trip broke on case " + std::to_string(i));
    }
    return std::to_string(property_cases) + " cases";
}

std::string ac5b() {
    std::mt19937_64 rng(103);
    const RuleSet rules = parse_rules(support::property_rules);
    std::uniform_int_distribution<std::size_t> size(1, 200);
    for (int i = 0; i < property_cases; ++i) {
        const auto corpus = support::property_corpus(rng, size(rng));
        std::set<std::string> raw;
        for (const auto& e : corpus) raw.insert(e.message);
        const auto g = support::distinct_deid(corpus, rules, Mode::Global);
        const auto gr = support::distinct_deid(corpus, rules, Mode::Group);
        const auto in = support::distinct_deid(corpus, rules, Mode::Individual);
        if (!(g <= gr && gr <= in && in <= raw.size())) return fail("case " + std::to_string(i));
    }
    return std::to_string(property_cases) + " corpora";
}

std::string ac5c() {
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<std::uint64_t> freq(1, 50), nval(1, 9);
    std::uniform_int_distribution<int> patterns(1, 6), terms(0, 3);
    for (int c = 0; c < property_cases; ++c) {
        std::vector<PatternStats> stats;
        std::uint64_t n_e = 0;
        for (int p = patterns(rng); p > 0; --p) {
            PatternStats s{"k" + std::to_string(p), "", freq(rng), {}};
            for (int t = terms(rng); t > 0; --t) {
                const std::uint64_t v = nval(rng);
                s.per_term.push_back({"T", v, std::uniform_int_distribution<std::uint64_t>(1, v)(rng)});
            }
            n_e += s.f_p;
            stats.push_back(std::move(s));
        }
        const Rational u = usefulness(stats, n_e).usefulness;
        if (!(u > 0 && u <= 1)) return fail("U out of range: " + u.str());
        for (auto& s : stats)
            for (auto& t : s.per_term)
                if (t.n_s < t.n_val) {
                    ++t.n_s;
                    if (!(usefulness(stats, n_e).usefulness > u)) return fail("not monotone in N_s");
                    --t.n_s;
                }
    }
    return std::to_string(property_cases) + " cases";
}

std::string ac5d() {
    std::mt19937_64 rng(109);
    const GridWindow w{0, 6, 0, 30, 1483228800};
    std::uniform_int_distribution<Timestamp> ts(w.epoch_day0 - 86400, w.epoch_day0 + 8 * 86400);
    std::uniform_int_distribution<int> count(0, 200);
    for (int c = 0; c < property_cases; ++c) {
        OccurrenceGrid a("A", w), b("B", w);
        for (int i = count(rng); i > 0; --i) a.record(ts(rng));
        for (int i = count(rng); i > 0; --i) b.record(ts(rng));
        const auto sim = similarity_grid(a, b), diff = difference_grid(a, b);
        for (std::size_t d = 0; d < a.days(); ++d)
            for (std::size_t m = 0; m < a.minutes(); ++m) {
                const bool x = a.occupied(d, m), y = b.occupied(d, m);
                if (sim.occupied(d, m) != (x && y) || diff.occupied(d, m) != (x != y))
                    return fail("cell law broken in case " + std::to_string(c));
                if (sim.occupied(d, m) && diff.occupied(d, m)) return fail("sim and diff overlap");
                if ((x || y) != (sim.occupied(d, m) || diff.occupied(d, m))) return fail("union not covered");
            }
    }
    return std::to_string(property_cases) + " grid pairs";
}

std::string ac5e() {
    std::mt19937_64 rng(113);
    const RuleSet base = parse_rules(support::property_rules);
    std::uniform_int_distribution<std::size_t> size(1, 400);
    std::size_t largest = 0;
    for (int c = 0; c < property_cases; ++c) {
        const std::size_t n = c == 0 ? 10000 : size(rng);
        largest = std::max(largest, n);
        const auto corpus = support::property_corpus(rng, n);
        RuleSet rules = base;
        rules.set_mode(static_cast<Mode>(c % 3));
        if (support::accumulate(corpus, rules).report("").usefulness != support::brute_force_usefulness(corpus, rules))
            return fail("case " + std::to_string(c));
    }
    return std::to_string(property_cases) + " corpora, up to " + std::to_string(largest) + " entries";
}

std::string ac5f(const std::vector<SyntheticEntry>& corpus) {
    const RuleSet rules = default_ruleset();
    Deidentifier deid(rules);
    Encoder enc(EncoderConfig{});
    for (const auto& s : corpus) enc.encode(deid.deidentify(s.entry), event_pattern(s.entry, rules));
    std::string detail = std::to_string(enc.hashes().size()) + " hash texts, " +
                         std::to_string(enc.categories().size()) + " categories, no 4-byte collision";
    PatternDictionary tiny(1);
    try {
        for (int i = 0; i < 300; ++i) tiny.add("forced " + std::to_string(i));
    } catch (const CollisionDetected& e) {
        return detail + "; 1-byte collision raised on key " + e.key();
    }
    return fail("no collision raised with 1-byte keys");
}

std::string ac6(const std::vector<SyntheticEntry>& corpus, std::size_t patterns, double gen_seconds) {
    const auto t0 = Clock::now();
    const RuleSet rules = default_ruleset();
    PatternDictionary categories(4);
    std::unordered_map<std::string, PatternStats> by_key;
    for (const auto& s : corpus) {
        std::string p = event_pattern(s.entry, rules);
        auto& st = by_key[categories.add(p)];
        ++st.f_p;
    }
    std::vector<PatternStats> stats;
    for (auto& [k, s] : by_key) {
        s.category_key = k;
        stats.push_back(s);
    }
    std::vector<std::size_t> ks = {1, 5, 10, 25, 50, 100, 500, 1000, 5000, 10000, 50000};
    const CoverageTable table = top_k_coverage(stats, ks);
    const double elapsed = seconds_since(t0) + gen_seconds;

    std::map<std::size_t, std::uint64_t> by_label;
    for (const auto& s : corpus) ++by_label[s.pattern];
    std::vector<std::uint64_t> counts;
    for (const auto& [l, n] : by_label) counts.push_back(n);
    std::sort(counts.rbegin(), counts.rend());
    if (table.pattern_count != counts.size())
        return fail(std::to_string(table.pattern_count) + " event patterns vs " + std::to_string(counts.size()) +
                    " generator patterns");
    Rational previous = 0;
    std::string detail;
    for (const auto& row : table.rows) {
        std::uint64_t covered = 0;
        for (std::size_t i = 0; i < std::min(row.k, counts.size()); ++i) covered += counts[i];
        if (row.coverage != Rational(BigInt(covered), BigInt(corpus.size())))
            return fail("K=" + std::to_string(row.k) + " differs from oracle");
        if (row.coverage < previous) return fail("coverage not monotone at K=" + std::to_string(row.k));
        previous = row.coverage;
        if (row.k == 1 || row.k == 50 || row.k == 1000)
            detail += "K=" + std::to_string(row.k) + ":" + to_decimal(row.coverage * 100, 2) + "% ";
    }
    if (elapsed >= ac6_seconds) return fail("took " + std::to_string(elapsed) + " s");
    return std::to_string(corpus.size()) + " entries, " + std::to_string(table.pattern_count) + "/" +
           std::to_string(patterns) + " patterns, " + detail + std::to_string(elapsed) + " s";
}

std::string ac7() {
    SynthConfig cfg;
    cfg.seed = 7;
    cfg.entries = 50000;
    cfg.patterns = 2000;
    cfg.padding_bytes = 48;
    const auto corpus = generate_corpus(cfg);
    std::vector<RawLogEntry> raw;
    for (const auto& s : corpus) raw.push_back(s.entry);
    const RuleSet rules = default_ruleset();
    Deidentifier deid(rules);
    Encoder enc(EncoderConfig{});
    std::vector<EncodedEntry> encoded;
    for (const auto& e : raw) encoded.push_back(enc.encode(deid.deidentify(e), event_pattern(e, rules)));
    const auto meanings = enc.meanings();
    const StorageReport r = storage_stats(raw, encoded, meanings);
    const double mean_len = static_cast<double>(r.raw_message_bytes) / static_cast<double>(r.entries);
    const double saving = to_double(r.saving_without_dictionary);
    if (mean_len < ac7_min_mean_length) return fail("mean message length " + std::to_string(mean_len));
    if (saving < ac7_min_saving) return fail("saving " + std::to_string(saving));

    const auto fixture_rows = support::read_corpus(fixture("cron.log"));
    const RuleSet cr = cron_rules(Mode::Global);
    Deidentifier d5(cr);
    Encoder e5(EncoderConfig{});
    std::vector<EncodedEntry> enc5;
    for (const auto& e : fixture_rows) enc5.push_back(e5.encode(d5.deidentify(e), event_pattern(e, cr)));
    const StorageReport f = storage_stats(fixture_rows, enc5, e5.meanings());
    if (f.saving_without_dictionary != Rational(309, 649)) return fail("fixture saving " + f.saving_without_dictionary.str());
    return "mean length " + std::to_string(mean_len) + ", saving " + to_decimal(r.saving_without_dictionary * 100, 2) +
           "% (with dictionary " + to_decimal(r.saving_with_dictionary * 100, 2) + "%); fixture saving = 309/649";
}

std::string ac8() {
    SynthConfig gen;
    gen.seed = 8;
    gen.entries = ac8_lines;
    gen.patterns = 5000;
    const fs::path corpus = work_dir / "ac8_corpus.log";
    run_gen(gen, corpus, std::nullopt);
    std::string outputs[2];
    for (int i = 0; i < 2; ++i) {
        auto cfg = run_config(corpus.string(), "default.rules", "ac8_w" + std::to_string(i));
        cfg.workers = i == 0 ? 1 : ac8_workers;
        cfg.mode = Mode::Individual;
        cfg.emit_dictionary = true;
        cfg.emit_meanings = true;
        std::ostringstream sink;
        run_anonymize(cfg, sink);
        for (const char* f : {"encoded.log", "dictionary.tsv", "meanings.tsv", "report.txt"}) {
            const std::string content = support::slurp((cfg.out_dir / f).string());
            if (content.empty() && std::string(f) != "dictionary.tsv") return fail(std::string(f) + " is empty");
            outputs[i] += content + '\x1f';
        }
    }
    if (outputs[0] != outputs[1]) return fail("outputs differ between 1 and " + std::to_string(ac8_workers) + " workers");
    return std::to_string(ac8_lines) + " lines, workers 1 vs " + std::to_string(ac8_workers) + " byte-identical";
}

} // namespace

int main(int argc, char** argv) {
    work_dir = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "logcloak_acceptance";
    fs::remove_all(work_dir);
    fs::create_directories(work_dir);

    report("AC1", "sample corpus yields 6 categories", ac1);
    report("AC2", "usefulness per mode on sample corpus", ac2);
    report("AC3", "usefulness from summary rows", ac3);
    report("AC4", "hash-key equality by de-identification degree", ac4);
    report("AC5a", "parse/render round trip", ac5a);
    report("AC5b", "granularity monotonicity", ac5b);
    report("AC5c", "usefulness bounds and monotonicity", ac5c);
    report("AC5d", "similarity/difference partition laws", ac5d);
    report("AC5e", "streaming equals brute-force usefulness", ac5e);

    SynthConfig zipf;
    zipf.seed = 6;
    zipf.entries = 1'000'000;
    zipf.patterns = 50'000;
    zipf.zipf_exponent = 1.0;
    const auto t0 = Clock::now();
    const auto corpus = generate_corpus(zipf);
    const double gen_seconds = seconds_since(t0);
    report("AC5f", "no 4-byte collisions, forced collision detected", [&] { return ac5f(corpus); });
    report("AC6", "top-K coverage on Zipf corpus", [&] { return ac6(corpus, zipf.patterns, gen_seconds); });
    report("AC7", "storage saving", ac7);
    report("AC8", "determinism across worker counts", ac8);

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
