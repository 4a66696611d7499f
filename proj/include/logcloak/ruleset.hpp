#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/regex.hpp>

namespace logcloak {

/// De-identification granularity for significant variable terms.
enum class Mode { Individual, Group, Global };

Mode parse_mode(std::string_view text);
std::string_view to_string(Mode mode) noexcept;

/// One substitution rule. Matches are searched with Perl syntax; when the
/// pattern has a capture group, group 1 delimits the term and the rest of the
/// match only provides context.
struct TermRule {
    std::string name;
    std::string pattern;
    bool significant = false;
    std::optional<Mode> mode_override;
    std::map<std::string, std::string> group_map;
    std::optional<std::string> default_group;

    boost::regex matcher; // compiled from `pattern` by RuleSet

    bool has_group_map() const noexcept { return !group_map.empty() || default_group.has_value(); }
};

/// Ordered rules plus the corpus-wide default mode. Construction validates
/// names, patterns and group labels and throws ConfigError.
class RuleSet {
public:
    RuleSet() = default;
    RuleSet(std::vector<TermRule> rules, Mode mode);

    const std::vector<TermRule>& rules() const noexcept { return rules_; }
    std::size_t size() const noexcept { return rules_.size(); }
    const TermRule& operator[](std::size_t i) const { return rules_[i]; }

    Mode mode() const noexcept { return mode_; }
    void set_mode(Mode mode) noexcept { mode_ = mode; }

    Mode effective_mode(std::size_t rule) const noexcept {
        return rules_[rule].mode_override.value_or(mode_);
    }

    std::optional<std::size_t> find(std::string_view name) const noexcept;

    /// Longest rule name that prefixes `text`; used to recognise symbols.
    std::optional<std::size_t> match_symbol_name(std::string_view text) const noexcept;

private:
    std::vector<TermRule> rules_;
    Mode mode_ = Mode::Global;
};

/// Parses the rule file format documented in README.md ("Rule files").
RuleSet parse_rules(std::string_view text);
RuleSet load_rules(const std::string& path);

/// Text of the built-in ruleset; identical to rules/default.rules.
std::string_view default_rules_text() noexcept;
RuleSet default_ruleset();

} // namespace logcloak
