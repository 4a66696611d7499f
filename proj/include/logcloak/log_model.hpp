#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace logcloak {

using Timestamp = std::int64_t;

/// One raw syslog entry: `<timestamp> <source> <message>`.
struct RawLogEntry {
    Timestamp timestamp = 0;
    std::string source;
    std::string message;

    friend bool operator==(const RawLogEntry&, const RawLogEntry&) = default;
};

enum class TermClass { Constant, VariableSignificant, VariableInsignificant };

/// Half-open byte range [start, end) inside a message.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - start; }
    friend bool operator==(const Span&, const Span&) = default;
};

struct Term {
    static constexpr std::size_t no_rule = static_cast<std::size_t>(-1);

    std::string text;
    Span span;
    TermClass kind = TermClass::Constant;
    std::size_t rule = no_rule; // index into the RuleSet for variable terms

    bool is_variable() const noexcept { return kind != TermClass::Constant; }
    friend bool operator==(const Term&, const Term&) = default;
};

struct SignificantValue {
    std::size_t term_position = 0; // index of the term in the tokenized message
    std::string original_value;
    std::string symbol;
    std::string rule_name;

    friend bool operator==(const SignificantValue&, const SignificantValue&) = default;
};

struct DeidentifiedEntry {
    Timestamp timestamp = 0;
    std::string source;
    std::string deid_message;
    std::vector<SignificantValue> significant_values;

    friend bool operator==(const DeidentifiedEntry&, const DeidentifiedEntry&) = default;
};

struct EncodedEntry {
    Timestamp timestamp = 0;
    std::string source;
    std::string hash_key;
    std::string category_key;

    friend bool operator==(const EncodedEntry&, const EncodedEntry&) = default;
};

bool is_valid_utf8(std::string_view bytes) noexcept;

/// Parses `<timestamp> <source> <message>`. The message is everything after the
/// single separator following the source, kept verbatim. Throws MalformedLine.
RawLogEntry parse_line(std::string_view line);

/// Parses the four-column encoded layout `<timestamp> <source> <hash> <category>`.
EncodedEntry parse_encoded_line(std::string_view line);

std::string render_entry(const RawLogEntry& entry);
std::string render_entry(const EncodedEntry& entry);

} // namespace logcloak
