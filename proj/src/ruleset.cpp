#include "logcloak/ruleset.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "logcloak/errors.hpp"

namespace logcloak {

namespace {

constexpr std::string_view builtin_rules =
#include "default_rules.inc"
    ;

std::string_view trim(std::string_view s) noexcept {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_alnum(char c) noexcept { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

void validate_name(const std::string& name) {
    bool ok = !name.empty() && name.size() <= 8 && std::isupper(static_cast<unsigned char>(name[0]));
    for (char c : name) ok = ok && is_alnum(c);
    if (!ok)
        throw ConfigError("rule name '" + name +
                          "' must be 1-8 ASCII letters/digits starting with an uppercase letter");
}

void validate_label(const std::string& rule, const std::string& label) {
    bool ok = !label.empty();
    for (char c : label) ok = ok && is_alnum(c);
    if (!ok) throw ConfigError("rule " + rule + ": group label '" + label + "' must be ASCII letters/digits");
}

bool parse_bool(std::string_view v, int line) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError("line " + std::to_string(line) + ": expected true/false, got '" + std::string(v) + "'");
}

} // namespace

Mode parse_mode(std::string_view text) {
    if (text == "individual") return Mode::Individual;
    if (text == "group") return Mode::Group;
    if (text == "global") return Mode::Global;
    throw ConfigError("unknown mode '" + std::string(text) + "' (individual|group|global)");
}

std::string_view to_string(Mode mode) noexcept {
    switch (mode) {
    case Mode::Individual: return "individual";
    case Mode::Group: return "group";
    case Mode::Global: return "global";
    }
    return "?";
}

RuleSet::RuleSet(std::vector<TermRule> rules, Mode mode) : rules_(std::move(rules)), mode_(mode) {
    std::set<std::string> seen;
    for (auto& rule : rules_) {
        validate_name(rule.name);
        if (!seen.insert(rule.name).second) throw ConfigError("duplicate rule name '" + rule.name + "'");
        if (rule.pattern.empty()) throw ConfigError("rule " + rule.name + ": empty pattern");
        try {
            rule.matcher = boost::regex(rule.pattern, boost::regex::perl);
        } catch (const boost::regex_error& e) {
            throw ConfigError("rule " + rule.name + ": bad pattern: " + e.what());
        }
        if (boost::regex_match(std::string(), rule.matcher))
            throw ConfigError("rule " + rule.name + ": pattern matches the empty string");
        for (const auto& [value, label] : rule.group_map) validate_label(rule.name, label);
        if (rule.default_group) validate_label(rule.name, *rule.default_group);
    }
}

std::optional<std::size_t> RuleSet::find(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < rules_.size(); ++i)
        if (rules_[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> RuleSet::match_symbol_name(std::string_view text) const noexcept {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const auto& n = rules_[i].name;
        if (text.starts_with(n) && (!best || n.size() > rules_[*best].name.size())) best = i;
    }
    return best;
}

RuleSet parse_rules(std::string_view text) {
    std::vector<TermRule> rules;
    Mode mode = Mode::Global;
    TermRule* current = nullptr;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated section");
            const std::string_view inner = trim(line.substr(1, line.size() - 2));
            if (!inner.starts_with("rule ") && !inner.starts_with("rule\t"))
                throw ConfigError("line " + std::to_string(line_no) + ": expected [rule NAME]");
            TermRule rule;
            rule.name = std::string(trim(inner.substr(5)));
            rules.push_back(std::move(rule));
            current = &rules.back();
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        if (current == nullptr) {
            if (key == "mode") mode = parse_mode(value);
            else throw ConfigError("line " + std::to_string(line_no) + ": unknown top-level key '" + std::string(key) + "'");
            continue;
        }
        if (key == "pattern") current->pattern = std::string(value);
        else if (key == "significant") current->significant = parse_bool(value, line_no);
        else if (key == "mode") current->mode_override = parse_mode(value);
        else if (key == "default_group") current->default_group = std::string(value);
        else if (key.starts_with("group.") && key.size() > 6)
            current->group_map[std::string(key.substr(6))] = std::string(value);
        else throw ConfigError("line " + std::to_string(line_no) + ": unknown rule key '" + std::string(key) + "'");
    }
    return RuleSet(std::move(rules), mode);
}

RuleSet load_rules(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open rule file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rules(buf.str());
}

std::string_view default_rules_text() noexcept { return builtin_rules; }

RuleSet default_ruleset() { return parse_rules(builtin_rules); }

} // namespace logcloak
