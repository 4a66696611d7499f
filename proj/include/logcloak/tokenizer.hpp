#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "logcloak/log_model.hpp"
#include "logcloak/ruleset.hpp"

namespace logcloak {

/// Splits a message into constant and variable terms. Each variable term is
/// a rule match; existing symbols such as `#PATH#` are left as constants.
std::vector<Term> tokenize(std::string_view message, const RuleSet& rules);

/// Spans of `#NAME...#` symbols whose NAME prefix is a rule of `rules`.
std::vector<Span> find_symbols(std::string_view message, const RuleSet& rules);

/// Renders the message with every variable term globally de-identified
/// (`#NAME_#` for significant and `#NAME#` for insignificant terms).
std::string render_pattern(std::string_view message, const std::vector<Term>& terms, const RuleSet& rules);

/// Event pattern of an entry: the ruleset's mode and per-rule overrides are ignored.
std::string event_pattern(const RawLogEntry& entry, const RuleSet& rules);

std::string insignificant_symbol(std::string_view name);
std::string global_symbol(std::string_view name);

/// Rewrites entries under a ruleset. Individual-mode indices are dense per
/// rule and assigned in first-occurrence order, so entries must be fed in
/// stream order. Not thread-safe; the pipeline serialises this stage.
class Deidentifier {
public:
    explicit Deidentifier(RuleSet rules);

    const RuleSet& rules() const noexcept { return rules_; }

    DeidentifiedEntry deidentify(const RawLogEntry& entry);

    /// Same as deidentify() for an entry already tokenized with rules().
    DeidentifiedEntry apply(const RawLogEntry& entry, const std::vector<Term>& terms);

    /// Distinct (symbol, original value) pairs in first-emission order.
    const std::vector<std::pair<std::string, std::string>>& disclosures() const noexcept { return disclosures_; }

private:
    std::string symbol_for(std::size_t rule, const std::string& value);

    RuleSet rules_;
    std::vector<std::unordered_map<std::string, std::size_t>> individual_; // per rule: value -> k
    std::set<std::pair<std::string, std::string>> disclosed_;
    std::vector<std::pair<std::string, std::string>> disclosures_;
};

} // namespace logcloak
