#include "logcloak/usefulness.hpp"

#include <algorithm>

#include "logcloak/errors.hpp"

namespace logcloak {

namespace {

Rational ratio(std::uint64_t num, std::uint64_t den) { return Rational(BigInt(num), BigInt(den)); }

bool by_frequency(const PatternStats& a, const PatternStats& b) {
    if (a.f_p != b.f_p) return a.f_p > b.f_p;
    return a.category_key < b.category_key;
}

} // namespace

Rational dominance(std::uint64_t f_p, std::uint64_t n_e) {
    if (n_e == 0) throw DomainError("dominance over an empty window (N_e = 0)");
    if (f_p < 1 || f_p > n_e)
        throw DomainError("pattern frequency " + std::to_string(f_p) + " outside [1, " + std::to_string(n_e) + "]");
    return ratio(f_p, n_e);
}

Rational pattern_ratio(std::span<const TermCardinality> per_term) {
    BigInt symbols = 1;
    BigInt values = 1;
    for (const auto& t : per_term) {
        if (t.n_s < 1 || t.n_s > t.n_val)
            throw DomainError("term " + t.rule_name + ": need 1 <= N_s <= N_val, got N_s=" + std::to_string(t.n_s) +
                              " N_val=" + std::to_string(t.n_val));
        symbols *= t.n_s;
        values *= t.n_val;
    }
    return Rational(symbols, values);
}

UsefulnessReport usefulness(std::span<const PatternStats> stats, std::uint64_t n_e, std::string mode) {
    std::uint64_t total = 0;
    for (const auto& p : stats) total += p.f_p;
    if (total != n_e)
        throw CoverageError("pattern frequencies sum to " + std::to_string(total) + ", expected N_e = " +
                            std::to_string(n_e));

    std::vector<PatternStats> sorted(stats.begin(), stats.end());
    std::sort(sorted.begin(), sorted.end(), by_frequency);

    UsefulnessReport report;
    report.n_e = n_e;
    report.mode = std::move(mode);
    report.usefulness = 0;
    for (auto& p : sorted) {
        UsefulnessRow row;
        row.dominance = dominance(p.f_p, n_e);
        row.ratio = pattern_ratio(p.per_term);
        row.contribution = row.dominance * row.ratio;
        report.usefulness += row.contribution;
        row.category_key = std::move(p.category_key);
        row.pattern_text = std::move(p.pattern_text);
        row.f_p = p.f_p;
        report.rows.push_back(std::move(row));
    }
    return report;
}

Rational usefulness_from_summary(std::span<const SummaryRow> rows, std::optional<SummaryRow> residual) {
    Rational total_d = 0;
    Rational u = 0;
    auto take = [&](const SummaryRow& r) {
        if (r.dominance < 0) throw DomainError("negative dominance");
        if (r.ratio < 0 || r.ratio > 1) throw DomainError("ratio outside [0, 1]");
        total_d += r.dominance;
        u += r.dominance * r.ratio;
    };
    for (const auto& r : rows) take(r);
    if (residual) take(*residual);
    if (total_d > 1) throw DomainError("dominance degrees sum to " + to_decimal(total_d, 6) + " > 1");
    return u;
}

CoverageTable top_k_coverage(std::span<const PatternStats> stats, std::span<const std::size_t> ks) {
    std::vector<std::uint64_t> counts;
    {
        std::vector<const PatternStats*> order;
        order.reserve(stats.size());
        for (const auto& p : stats) order.push_back(&p);
        std::sort(order.begin(), order.end(), [](const PatternStats* a, const PatternStats* b) { return by_frequency(*a, *b); });
        counts.reserve(order.size());
        for (const auto* p : order) counts.push_back(p->f_p);
    }
    std::vector<std::uint64_t> prefix(counts.size() + 1, 0);
    for (std::size_t i = 0; i < counts.size(); ++i) prefix[i + 1] = prefix[i] + counts[i];

    CoverageTable table;
    table.n_e = prefix.back();
    table.pattern_count = counts.size();
    for (std::size_t k : ks) {
        if (k < 1) throw DomainError("K must be at least 1");
        const std::uint64_t covered = prefix[std::min(k, counts.size())];
        table.rows.push_back({k, table.n_e == 0 ? Rational(0) : ratio(covered, table.n_e)});
    }
    return table;
}

void UsefulnessAccumulator::add(const DeidentifiedEntry& entry, const std::string& pattern,
                                const std::string& category_key) {
    auto [it, inserted] = patterns_.try_emplace(pattern);
    Accum& acc = it->second;
    if (inserted) {
        acc.category_key = category_key;
        for (const auto& sv : entry.significant_values) acc.slots.push_back({sv.rule_name, {}, {}});
    } else if (acc.slots.size() != entry.significant_values.size()) {
        throw DomainError("pattern '" + pattern + "' seen with differing significant terms");
    }
    ++acc.f_p;
    ++n_e_;
    for (std::size_t i = 0; i < entry.significant_values.size(); ++i) {
        acc.slots[i].values.insert(entry.significant_values[i].original_value);
        acc.slots[i].symbols.insert(entry.significant_values[i].symbol);
    }
}

void UsefulnessAccumulator::merge(const UsefulnessAccumulator& other) {
    for (const auto& [pattern, theirs] : other.patterns_) {
        auto [it, inserted] = patterns_.try_emplace(pattern, theirs);
        if (inserted) continue;
        Accum& mine = it->second;
        if (mine.slots.size() != theirs.slots.size())
            throw DomainError("pattern '" + pattern + "' seen with differing significant terms");
        mine.f_p += theirs.f_p;
        for (std::size_t i = 0; i < mine.slots.size(); ++i) {
            mine.slots[i].values.insert(theirs.slots[i].values.begin(), theirs.slots[i].values.end());
            mine.slots[i].symbols.insert(theirs.slots[i].symbols.begin(), theirs.slots[i].symbols.end());
        }
    }
    n_e_ += other.n_e_;
}

std::vector<PatternStats> UsefulnessAccumulator::stats() const {
    std::vector<PatternStats> out;
    out.reserve(patterns_.size());
    for (const auto& [pattern, acc] : patterns_) {
        PatternStats p{acc.category_key, pattern, acc.f_p, {}};
        for (const auto& slot : acc.slots) p.per_term.push_back({slot.rule_name, slot.values.size(), slot.symbols.size()});
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(), by_frequency);
    return out;
}

UsefulnessReport UsefulnessAccumulator::report(std::string mode) const {
    const auto s = stats();
    return usefulness(s, n_e_, std::move(mode));
}

} // namespace logcloak
