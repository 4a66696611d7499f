#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "logcloak/log_model.hpp"
#include "logcloak/encoder.hpp"
#include "logcloak/ruleset.hpp"
#include "logcloak/tokenizer.hpp"
#include "logcloak/usefulness.hpp"

namespace logcloak::support {

inline std::string fixture(const std::string& name) { return std::string(LOGCLOAK_TEST_DATA) + "/" + name; }
inline std::string rules_file(const std::string& name) { return std::string(LOGCLOAK_RULES_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::vector<RawLogEntry> read_corpus(const std::string& path) {
    std::vector<RawLogEntry> out;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) out.push_back(parse_line(line));
    return out;
}

// Random printable message drawn from an alphabet that exercises spaces,
// parentheses, digits, slashes and multi-byte UTF-8.
inline std::string random_message(std::mt19937_64& rng, std::size_t max_len = 60) {
    static const std::vector<std::string> pieces = {
        "a", "Z", "0", "7", " ", "  ", "(", ")", "/", ".", "-", "_", ":", "#", "é", "日本", "CMD", "root",
        "/usr/bin/x", "10.0.0.1", "2018-01-30", "for ", "sshd", "\t"};
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    std::string s;
    const std::size_t n = len(rng);
    while (s.size() < n) s += pieces[pick(rng)];
    return s;
}

inline std::string random_source(std::mt19937_64& rng) {
    static const std::string chars = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_.:";
    std::uniform_int_distribution<std::size_t> len(1, 12);
    std::uniform_int_distribution<std::size_t> pick(0, chars.size() - 1);
    std::string s(len(rng), 'x');
    for (auto& c : s) c = chars[pick(rng)];
    return s;
}

inline UsefulnessAccumulator accumulate(const std::vector<RawLogEntry>& corpus, const RuleSet& rules) {
    Deidentifier deid(rules);
    UsefulnessAccumulator acc;
    for (const auto& e : corpus) {
        const std::string pattern = event_pattern(e, rules);
        acc.add(deid.deidentify(e), pattern, hash_text(pattern, 4));
    }
    return acc;
}

// cron-like corpus over a small user population with group labels
inline const char* property_rules = R"(
[rule USER]
pattern = (?<=^\()u\d+(?=\) )
significant = true
group.u0 = a
group.u1 = a
group.u2 = b
default_group = c

[rule PATH]
pattern = (?<![\w.~-])/[^\s()]+
significant = false

[rule NUM]
pattern = \b\d+\b
significant = true
group.0 = z
default_group = nz
)";

inline std::vector<RawLogEntry> property_corpus(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> user(0, 7), path(0, 5), num(0, 4), shape(0, 3);
    std::vector<RawLogEntry> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string u = "u" + std::to_string(user(rng));
        const std::string p = "/opt/job" + std::to_string(path(rng));
        std::string msg;
        switch (shape(rng)) {
        case 0: msg = "(" + u + ") CMD (" + p + ")"; break;
        case 1: msg = "(" + u + ") CMD (" + p + " " + std::to_string(num(rng)) + ")"; break;
        case 2: msg = "Normal exit (" + std::to_string(num(rng)) + " jobs run)"; break;
        default: msg = "Jobs will be executed sequentially"; break;
        }
        out.push_back({static_cast<Timestamp>(i), "n" + std::to_string(i % 3), msg});
    }
    return out;
}

// Direct evaluation of the definition: group entries by pattern, count the
// distinct values and symbols of every significant slot.
inline Rational brute_force_usefulness(const std::vector<RawLogEntry>& corpus, const RuleSet& rules) {
    Deidentifier deid(rules);
    std::map<std::string, std::vector<DeidentifiedEntry>> by_pattern;
    for (const auto& e : corpus) by_pattern[event_pattern(e, rules)].push_back(deid.deidentify(e));
    Rational u = 0;
    for (const auto& [pattern, members] : by_pattern) {
        Rational r = 1;
        for (std::size_t slot = 0; slot < members.front().significant_values.size(); ++slot) {
            std::vector<std::string> values, symbols;
            for (const auto& m : members) {
                values.push_back(m.significant_values[slot].original_value);
                symbols.push_back(m.significant_values[slot].symbol);
            }
            std::sort(values.begin(), values.end());
            std::sort(symbols.begin(), symbols.end());
            const auto nv = std::unique(values.begin(), values.end()) - values.begin();
            const auto ns = std::unique(symbols.begin(), symbols.end()) - symbols.begin();
            r *= Rational(BigInt(ns), BigInt(nv));
        }
        u += Rational(BigInt(members.size()), BigInt(corpus.size())) * r;
    }
    return u;
}

inline std::size_t distinct_deid(const std::vector<RawLogEntry>& corpus, RuleSet rules, Mode mode) {
    rules.set_mode(mode);
    Deidentifier deid(rules);
    std::set<std::string> seen;
    for (const auto& e : corpus) seen.insert(deid.deidentify(e).deid_message);
    return seen.size();
}

} // namespace logcloak::support
