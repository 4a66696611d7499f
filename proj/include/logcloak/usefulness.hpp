#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "logcloak/log_model.hpp"
#include "logcloak/rational.hpp"

namespace logcloak {

/// Distinct observed values (practical domain) and distinct emitted symbols
/// for one significant term slot of a pattern.
struct TermCardinality {
    std::string rule_name;
    std::uint64_t n_val = 1;
    std::uint64_t n_s = 1;
};

struct PatternStats {
    std::string category_key;
    std::string pattern_text;
    std::uint64_t f_p = 0;
    std::vector<TermCardinality> per_term;
};

struct UsefulnessRow {
    std::string category_key;
    std::string pattern_text;
    std::uint64_t f_p = 0;
    Rational dominance;
    Rational ratio;
    Rational contribution;
};

struct UsefulnessReport {
    std::uint64_t n_e = 0;
    std::string mode;
    std::vector<UsefulnessRow> rows; // by f_p descending, then category key
    Rational usefulness;
};

/// f_p / N_e. Throws DomainError unless 1 <= f_p <= N_e.
Rational dominance(std::uint64_t f_p, std::uint64_t n_e);

/// prod(N_s) / prod(N_val); 1 for a pattern without significant terms.
Rational pattern_ratio(std::span<const TermCardinality> per_term);

/// Dominance-weighted sum of pattern ratios. Throws CoverageError when the
/// pattern frequencies do not add up to N_e.
UsefulnessReport usefulness(std::span<const PatternStats> stats, std::uint64_t n_e, std::string mode = {});

struct SummaryRow {
    Rational dominance;
    Rational ratio;
};

/// Usefulness from externally supplied (D_p, ratio) pairs, for corpora where
/// only the head of the pattern distribution has been characterised.
Rational usefulness_from_summary(std::span<const SummaryRow> rows, std::optional<SummaryRow> residual = std::nullopt);

struct CoverageRow {
    std::size_t k = 0;
    Rational coverage; // fraction of N_e covered by the k most frequent patterns
};

struct CoverageTable {
    std::uint64_t n_e = 0;
    std::size_t pattern_count = 0;
    std::vector<CoverageRow> rows;
};

CoverageTable top_k_coverage(std::span<const PatternStats> stats, std::span<const std::size_t> ks);

/// Streaming accumulation of per-pattern statistics. Accumulators over
/// disjoint shards merge into the same result as one pass over the union.
class UsefulnessAccumulator {
public:
    void add(const DeidentifiedEntry& entry, const std::string& pattern, const std::string& category_key);
    void merge(const UsefulnessAccumulator& other);

    std::uint64_t entries() const noexcept { return n_e_; }
    std::vector<PatternStats> stats() const;
    UsefulnessReport report(std::string mode) const;

private:
    struct Slot {
        std::string rule_name;
        std::unordered_set<std::string> values;
        std::unordered_set<std::string> symbols;
    };
    struct Accum {
        std::string category_key;
        std::uint64_t f_p = 0;
        std::vector<Slot> slots;
    };

    std::unordered_map<std::string, Accum> patterns_;
    std::uint64_t n_e_ = 0;
};

} // namespace logcloak
