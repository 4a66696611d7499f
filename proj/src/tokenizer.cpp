#include "logcloak/tokenizer.hpp"

#include <algorithm>
#include <limits>

#include "logcloak/errors.hpp"

namespace logcloak {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

bool is_symbol_char(char c) noexcept {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

// First match of one rule at or after a position.
struct Candidate {
    std::size_t match_start = npos; // start of the whole regex match
    std::size_t start = npos;       // term span
    std::size_t end = npos;
    bool exhausted = false;
};

Candidate search(const TermRule& rule, std::string_view message, std::size_t from,
                 const std::vector<Span>& symbols) {
    const char* base = message.data();
    const char* last = base + message.size();
    const bool use_group = rule.matcher.mark_count() >= 1;
    boost::cmatch m;
    while (from <= message.size()) {
        auto flags = boost::match_default | boost::match_not_null;
        if (from > 0) flags |= boost::match_prev_avail;
        if (!boost::regex_search(base + from, last, m, rule.matcher, flags, base)) return {npos, npos, npos, true};

        const auto match_start = static_cast<std::size_t>(m[0].first - base);
        std::size_t s = match_start;
        std::size_t e = static_cast<std::size_t>(m[0].second - base);
        if (use_group) {
            if (!m[1].matched || m[1].first == m[1].second) {
                from = match_start + 1;
                continue;
            }
            s = static_cast<std::size_t>(m[1].first - base);
            e = static_cast<std::size_t>(m[1].second - base);
        }
        const auto hit = std::find_if(symbols.begin(), symbols.end(),
                                      [&](const Span& sym) { return s < sym.end && sym.start < e; });
        if (hit == symbols.end()) return {match_start, s, e, false};
        from = (s >= hit->start) ? std::max(hit->end, match_start + 1) : match_start + 1;
    }
    return {npos, npos, npos, true};
}

std::string sanitize_constant(std::string_view text, const RuleSet& rules) {
    if (text.find('#') == std::string_view::npos) return std::string(text);
    const auto symbols = find_symbols(text, rules);
    std::string out(text);
    std::size_t k = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        while (k < symbols.size() && symbols[k].end <= i) ++k;
        const bool inside = k < symbols.size() && symbols[k].start <= i && i < symbols[k].end;
        if (!inside && out[i] == '#') out[i] = '?';
    }
    return out;
}

} // namespace

std::string insignificant_symbol(std::string_view name) { return "#" + std::string(name) + "#"; }
std::string global_symbol(std::string_view name) { return "#" + std::string(name) + "_#"; }

std::vector<Span> find_symbols(std::string_view message, const RuleSet& rules) {
    std::vector<Span> out;
    std::size_t i = message.find('#');
    while (i != std::string_view::npos && i + 1 < message.size()) {
        std::size_t j = i + 1;
        while (j < message.size() && is_symbol_char(message[j])) ++j;
        if (j < message.size() && message[j] == '#' && j > i + 1 &&
            rules.match_symbol_name(message.substr(i + 1, j - i - 1))) {
            out.push_back({i, j + 1});
            i = message.find('#', j + 1);
        } else {
            i = message.find('#', i + 1);
        }
    }
    return out;
}

std::vector<Term> tokenize(std::string_view message, const RuleSet& rules) {
    std::vector<Term> terms;
    if (message.empty()) return terms;

    const auto symbols = find_symbols(message, rules);
    // Matchers see symbols as runs of word characters, so text next to a symbol
    // is matched the same way it was next to the term the symbol replaced.
    std::string masked;
    std::string_view haystack = message;
    if (!symbols.empty()) {
        masked.assign(message);
        for (const auto& sym : symbols) std::fill(masked.begin() + sym.start, masked.begin() + sym.end, 'x');
        haystack = masked;
    }
    std::vector<Candidate> cache(rules.size());
    std::vector<bool> fresh(rules.size(), false);
    std::size_t pos = 0;
    std::size_t const_start = 0;

    while (pos < message.size()) {
        std::size_t best = npos;
        for (std::size_t r = 0; r < rules.size(); ++r) {
            Candidate& c = cache[r];
            if (c.exhausted) continue;
            if (!fresh[r] || c.match_start < pos) {
                c = search(rules[r], haystack, pos, symbols);
                fresh[r] = true;
                if (c.exhausted) continue;
            }
            if (best == npos) {
                best = r;
                continue;
            }
            const Candidate& b = cache[best];
            if (c.start < b.start || (c.start == b.start && c.end > b.end)) best = r;
        }
        if (best == npos) break;

        const Candidate chosen = cache[best];
        if (chosen.start > const_start)
            terms.push_back({std::string(message.substr(const_start, chosen.start - const_start)),
                             {const_start, chosen.start},
                             TermClass::Constant,
                             Term::no_rule});
        terms.push_back({std::string(message.substr(chosen.start, chosen.end - chosen.start)),
                         {chosen.start, chosen.end},
                         rules[best].significant ? TermClass::VariableSignificant : TermClass::VariableInsignificant,
                         best});
        pos = chosen.end;
        const_start = pos;
    }
    if (const_start < message.size())
        terms.push_back({std::string(message.substr(const_start)), {const_start, message.size()}, TermClass::Constant,
                         Term::no_rule});
    return terms;
}

std::string render_pattern(std::string_view, const std::vector<Term>& terms, const RuleSet& rules) {
    std::string out;
    for (const auto& t : terms) {
        switch (t.kind) {
        case TermClass::Constant: out += sanitize_constant(t.text, rules); break;
        case TermClass::VariableSignificant: out += global_symbol(rules[t.rule].name); break;
        case TermClass::VariableInsignificant: out += insignificant_symbol(rules[t.rule].name); break;
        }
    }
    return out;
}

std::string event_pattern(const RawLogEntry& entry, const RuleSet& rules) {
    return render_pattern(entry.message, tokenize(entry.message, rules), rules);
}

Deidentifier::Deidentifier(RuleSet rules) : rules_(std::move(rules)), individual_(rules_.size()) {}

std::string Deidentifier::symbol_for(std::size_t r, const std::string& value) {
    const TermRule& rule = rules_[r];
    switch (rules_.effective_mode(r)) {
    case Mode::Global: return global_symbol(rule.name);
    case Mode::Group: {
        if (!rule.has_group_map()) return global_symbol(rule.name);
        if (const auto it = rule.group_map.find(value); it != rule.group_map.end())
            return "#" + rule.name + it->second + "#";
        if (rule.default_group) return "#" + rule.name + *rule.default_group + "#";
        throw GroupMapIncomplete(rule.name, value);
    }
    case Mode::Individual: {
        auto& registry = individual_[r];
        const auto [it, inserted] = registry.try_emplace(value, registry.size() + 1);
        return "#" + rule.name + std::to_string(it->second) + "#";
    }
    }
    return global_symbol(rule.name);
}

DeidentifiedEntry Deidentifier::deidentify(const RawLogEntry& entry) {
    return apply(entry, tokenize(entry.message, rules_));
}

DeidentifiedEntry Deidentifier::apply(const RawLogEntry& entry, const std::vector<Term>& terms) {
    DeidentifiedEntry out{entry.timestamp, entry.source, {}, {}};
    out.deid_message.reserve(entry.message.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Term& t = terms[i];
        switch (t.kind) {
        case TermClass::Constant: out.deid_message += sanitize_constant(t.text, rules_); break;
        case TermClass::VariableInsignificant: out.deid_message += insignificant_symbol(rules_[t.rule].name); break;
        case TermClass::VariableSignificant: {
            std::string symbol = symbol_for(t.rule, t.text);
            out.deid_message += symbol;
            if (disclosed_.emplace(symbol, t.text).second) disclosures_.emplace_back(symbol, t.text);
            out.significant_values.push_back({i, t.text, std::move(symbol), rules_[t.rule].name});
            break;
        }
        }
    }
    return out;
}

} // namespace logcloak
