#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "logcloak/encoder.hpp"
#include "logcloak/grid.hpp"
#include "logcloak/ruleset.hpp"
#include "logcloak/synth.hpp"
#include "logcloak/usefulness.hpp"

namespace logcloak {

/// Options shared by the command-line subcommands.
struct RunConfig {
    std::vector<std::string> inputs; // "-" reads standard input
    std::optional<std::string> rules_path;
    std::optional<Mode> mode; // overrides the rule file's mode
    std::size_t digest_bytes = 4;
    bool emit_dictionary = false;
    bool emit_meanings = false;
    bool per_day = false;
    Timestamp epoch_day0 = 0;
    int window_start = 0;
    int window_end = 240;
    std::int64_t first_day = 0;
    std::int64_t last_day = 365;
    bool strict = false;
    bool encoded_input = false;
    std::filesystem::path out_dir = ".";
    GridFormat format = GridFormat::Csv;
    std::size_t workers = 1;

    /// Throws ConfigError. Creates the output directory.
    void validate() const;
    RuleSet load_ruleset() const;
    EncoderConfig encoder_config() const;
    GridWindow grid_window() const;
};

struct AnonymizeResult {
    std::uint64_t lines = 0;
    std::uint64_t skipped = 0;
    std::size_t distinct_hashes = 0;
    std::size_t distinct_categories = 0;
    StorageReport storage;
};

/// parse -> de-identify -> encode. Writes encoded.log (plus dictionary.tsv and
/// meanings.tsv when requested) and report.txt into the output directory.
AnonymizeResult run_anonymize(const RunConfig& cfg, std::ostream& console);

/// One report for the whole corpus, or one per day with per_day set.
/// Writes usefulness.csv or usefulness_day<N>.csv.
std::vector<std::pair<std::optional<std::int64_t>, UsefulnessReport>> run_usefulness(const RunConfig& cfg,
                                                                                     std::ostream& console);

/// Writes coverage.csv.
CoverageTable run_patterns(const RunConfig& cfg, const std::vector<std::size_t>& ks, std::ostream& console);

struct CompareResult {
    OccurrenceGrid a;
    OccurrenceGrid b;
    OccurrenceGrid similarity;
    OccurrenceGrid difference;
    std::vector<std::filesystem::path> files;
};

/// Writes <A>_grid, <B>_grid, <A>_vs_<B>_similarity and <A>_vs_<B>_difference.
CompareResult run_compare(const RunConfig& cfg, const std::string& node_a, const std::string& node_b,
                          std::ostream& console);

/// Writes the synthetic corpus, and optionally one generator pattern id per line.
void run_gen(const SynthConfig& cfg, const std::filesystem::path& out,
             const std::optional<std::filesystem::path>& labels);

std::string render_storage_report(const AnonymizeResult& result);
void write_usefulness_csv(const UsefulnessReport& report, std::ostream& out);
void write_usefulness_table(const UsefulnessReport& report, std::ostream& out);
void write_coverage_csv(const CoverageTable& table, std::ostream& out);

} // namespace logcloak
