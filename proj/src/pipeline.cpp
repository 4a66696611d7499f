#include "logcloak/pipeline.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "logcloak/errors.hpp"
#include "logcloak/tokenizer.hpp"

namespace logcloak {

namespace {

constexpr std::size_t chunk_lines = 16384;

struct Line {
    std::string text;
    std::string location; // file:line
};

class LineSource {
public:
    explicit LineSource(const std::vector<std::string>& inputs) : inputs_(inputs) {}

    bool next(Line& line) {
        while (true) {
            if (!current_) {
                if (index_ >= inputs_.size()) return false;
                open(inputs_[index_++]);
            }
            if (std::getline(*current_, line.text)) {
                ++line_no_;
                if (!line.text.empty() && line.text.back() == '\r') line.text.pop_back();
                line.location = name_ + ":" + std::to_string(line_no_);
                return true;
            }
            if (current_->bad()) throw Error("read failed for " + name_);
            current_ = nullptr;
            file_.close();
        }
    }

private:
    void open(const std::string& path) {
        name_ = path;
        line_no_ = 0;
        if (path == "-") {
            current_ = &std::cin;
            return;
        }
        file_ = std::ifstream(path, std::ios::binary);
        if (!file_) throw ConfigError("cannot open input '" + path + "'");
        current_ = &file_;
    }

    const std::vector<std::string>& inputs_;
    std::size_t index_ = 0;
    std::ifstream file_;
    std::istream* current_ = nullptr;
    std::string name_;
    std::uint64_t line_no_ = 0;
};

struct Parsed {
    std::optional<RawLogEntry> entry;
    std::string error;
    std::vector<Term> terms;
};

// Parses (and optionally tokenizes) a chunk over `workers` threads. Output
// order equals input order, so later sequential stages see the stream order.
void parse_chunk(const std::vector<Line>& lines, std::vector<Parsed>& out, const RuleSet* rules,
                 std::size_t workers) {
    out.assign(lines.size(), Parsed{});
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                out[i].entry = parse_line(lines[i].text);
                if (rules) out[i].terms = tokenize(out[i].entry->message, *rules);
            } catch (const MalformedLine& e) {
                out[i].entry.reset();
                out[i].error = e.reason();
            }
        }
    };
    workers = std::max<std::size_t>(1, std::min(workers, lines.size()));
    if (workers == 1) {
        work(0, lines.size());
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t per = (lines.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * per;
        const std::size_t end = std::min(lines.size(), begin + per);
        if (begin < end) pool.emplace_back(work, begin, end);
    }
}

// Drives LineSource through parse_chunk and hands each entry to `sink` in order.
template <typename Sink>
std::pair<std::uint64_t, std::uint64_t> stream_entries(const RunConfig& cfg, const RuleSet* rules, Sink&& sink) {
    LineSource source(cfg.inputs);
    std::vector<Line> lines;
    std::vector<Parsed> parsed;
    std::uint64_t total = 0;
    std::uint64_t skipped = 0;
    bool more = true;
    while (more) {
        lines.clear();
        Line line;
        while (lines.size() < chunk_lines && (more = source.next(line))) lines.push_back(std::move(line));
        if (lines.empty()) break;
        parse_chunk(lines, parsed, rules, cfg.workers);
        for (std::size_t i = 0; i < parsed.size(); ++i) {
            ++total;
            if (!parsed[i].entry) {
                if (cfg.strict) throw MalformedLine(lines[i].location + ": " + parsed[i].error);
                ++skipped;
                continue;
            }
            sink(*parsed[i].entry, parsed[i].terms);
        }
    }
    return {total, skipped};
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

std::string percent(const Rational& fraction) { return to_decimal(fraction * 100, 2) + "%"; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::int64_t day_of(Timestamp ts, Timestamp epoch_day0) {
    const std::int64_t off = ts - epoch_day0;
    return off >= 0 ? off / seconds_per_day : -((-off + seconds_per_day - 1) / seconds_per_day);
}

} // namespace

void RunConfig::validate() const {
    if (inputs.empty()) throw ConfigError("no input files");
    for (const auto& in : inputs)
        if (in != "-" && !std::filesystem::exists(in)) throw ConfigError("input '" + in + "' does not exist");
    if (rules_path && !std::filesystem::exists(*rules_path))
        throw ConfigError("rule file '" + *rules_path + "' does not exist");
    if (emit_meanings && !emit_dictionary) throw ConfigError("--emit-meanings requires --emit-dictionary");
    if (workers < 1) throw ConfigError("--workers must be at least 1");
    encoder_config().validate();
    grid_window().validate();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir))
        throw ConfigError("cannot create output directory '" + out_dir.string() + "'");
}

RuleSet RunConfig::load_ruleset() const {
    RuleSet rules = rules_path ? load_rules(*rules_path) : default_ruleset();
    if (mode) rules.set_mode(*mode);
    return rules;
}

EncoderConfig RunConfig::encoder_config() const { return EncoderConfig{digest_bytes, emit_meanings}; }

GridWindow RunConfig::grid_window() const {
    return GridWindow{first_day, last_day, window_start, window_end, epoch_day0};
}

std::string render_storage_report(const AnonymizeResult& r) {
    std::ostringstream out;
    out << "entries read: " << r.lines << '\n'
        << "entries encoded: " << r.storage.entries << '\n'
        << "entries skipped: " << r.skipped << '\n'
        << "distinct hash keys: " << r.distinct_hashes << '\n'
        << "distinct categories: " << r.distinct_categories << '\n'
        << "raw message bytes: " << r.storage.raw_message_bytes << '\n'
        << "encoded bytes: " << r.storage.encoded_bytes << '\n'
        << "dictionary bytes: " << r.storage.dictionary_bytes << '\n'
        << "saving without dictionary: " << percent(r.storage.saving_without_dictionary) << '\n'
        << "saving with dictionary: " << percent(r.storage.saving_with_dictionary) << '\n';
    return out.str();
}

AnonymizeResult run_anonymize(const RunConfig& cfg, std::ostream& console) {
    cfg.validate();
    Deidentifier deid(cfg.load_ruleset());
    Encoder encoder(cfg.encoder_config());
    StorageCounter storage;

    auto encoded_out = open_output(cfg.out_dir / "encoded.log");
    const auto [lines, skipped] = stream_entries(cfg, &deid.rules(), [&](const RawLogEntry& e, const std::vector<Term>& terms) {
        const DeidentifiedEntry d = deid.apply(e, terms);
        const std::string pattern = render_pattern(e.message, terms, deid.rules());
        const EncodedEntry enc = encoder.encode(d, pattern);
        encoded_out << render_entry(enc) << '\n';
        storage.add(e, enc);
    });
    encoded_out.close();
    if (!encoded_out) throw Error("write failed for encoded.log");

    const auto meanings = encoder.meanings();
    if (cfg.emit_dictionary) {
        auto dict = open_output(cfg.out_dir / "dictionary.tsv");
        for (const auto& [symbol, value] : deid.disclosures()) dict << symbol << '\t' << value << '\n';
    }
    if (cfg.emit_meanings) {
        auto out = open_output(cfg.out_dir / "meanings.tsv");
        for (const auto& m : meanings) out << m.key << '\t' << m.text << '\n';
    }

    AnonymizeResult result;
    result.lines = lines;
    result.skipped = skipped;
    result.distinct_hashes = encoder.hashes().size();
    result.distinct_categories = encoder.categories().size();
    result.storage = storage.finish(meanings);

    const std::string report = render_storage_report(result);
    open_output(cfg.out_dir / "report.txt") << report;
    console << report;
    return result;
}

void write_usefulness_csv(const UsefulnessReport& report, std::ostream& out) {
    out << "category,pattern,f_p,D_p,ratio,contribution\n";
    for (const auto& row : report.rows)
        out << row.category_key << ',' << csv_field(row.pattern_text) << ',' << row.f_p << ','
            << to_decimal(row.dominance) << ',' << to_decimal(row.ratio) << ',' << to_decimal(row.contribution)
            << '\n';
    out << "TOTAL,," << report.n_e << ",1.0000,," << to_decimal(report.usefulness) << '\n';
}

void write_usefulness_table(const UsefulnessReport& report, std::ostream& out) {
    out << "mode: " << report.mode << "  entries: " << report.n_e << "  patterns: " << report.rows.size() << '\n';
    out << std::left << std::setw(18) << "category" << std::right << std::setw(10) << "f_p" << std::setw(8)
        << "D_p" << std::setw(8) << "ratio" << std::setw(8) << "contrib" << "  pattern\n";
    for (const auto& row : report.rows)
        out << std::left << std::setw(18) << row.category_key << std::right << std::setw(10) << row.f_p
            << std::setw(8) << to_decimal(row.dominance) << std::setw(8) << to_decimal(row.ratio) << std::setw(8)
            << to_decimal(row.contribution) << "  " << row.pattern_text << '\n';
    out << "U = " << to_decimal(report.usefulness) << " (" << report.usefulness.str() << ")\n";
}

std::vector<std::pair<std::optional<std::int64_t>, UsefulnessReport>> run_usefulness(const RunConfig& cfg,
                                                                                     std::ostream& console) {
    cfg.validate();
    Deidentifier deid(cfg.load_ruleset());
    PatternDictionary categories(cfg.digest_bytes);
    std::map<std::int64_t, UsefulnessAccumulator> windows;

    stream_entries(cfg, &deid.rules(), [&](const RawLogEntry& e, const std::vector<Term>& terms) {
        const DeidentifiedEntry d = deid.apply(e, terms);
        const std::string pattern = render_pattern(e.message, terms, deid.rules());
        const std::string category = categories.add(pattern);
        const std::int64_t window = cfg.per_day ? day_of(e.timestamp, cfg.epoch_day0) : 0;
        windows[window].add(d, pattern, category);
    });

    const std::string mode(to_string(deid.rules().mode()));
    std::vector<std::pair<std::optional<std::int64_t>, UsefulnessReport>> out;
    if (!cfg.per_day) {
        const auto it = windows.find(0);
        if (it == windows.end()) throw DomainError("no entries: usefulness is undefined for an empty corpus");
        out.emplace_back(std::nullopt, it->second.report(mode));
    } else {
        for (const auto& [day, acc] : windows) out.emplace_back(day, acc.report(mode));
    }
    for (const auto& [day, report] : out) {
        const std::string name = day ? "usefulness_day" + std::to_string(*day) + ".csv" : "usefulness.csv";
        auto csv = open_output(cfg.out_dir / name);
        write_usefulness_csv(report, csv);
        if (day) console << "day " << *day << '\n';
        write_usefulness_table(report, console);
    }
    return out;
}

void write_coverage_csv(const CoverageTable& table, std::ostream& out) {
    out << "#Raw log entries," << table.n_e << '\n';
    out << "#Event patterns," << table.pattern_count << '\n';
    out << "K,coverage_percent\n";
    for (const auto& row : table.rows) out << row.k << ',' << to_decimal(row.coverage * 100, 2) << '\n';
}

CoverageTable run_patterns(const RunConfig& cfg, const std::vector<std::size_t>& ks, std::ostream& console) {
    cfg.validate();
    if (ks.empty()) throw ConfigError("at least one K is required");
    std::unordered_map<std::string, PatternStats> by_category;

    if (cfg.encoded_input) {
        LineSource source(cfg.inputs);
        Line line;
        while (source.next(line)) {
            EncodedEntry e;
            try {
                e = parse_encoded_line(line.text);
            } catch (const MalformedLine& err) {
                if (cfg.strict) throw MalformedLine(line.location + ": " + err.reason());
                continue;
            }
            auto& p = by_category[e.category_key];
            p.category_key = e.category_key;
            ++p.f_p;
        }
    } else {
        const RuleSet rules = cfg.load_ruleset();
        PatternDictionary categories(cfg.digest_bytes);
        stream_entries(cfg, &rules, [&](const RawLogEntry& e, const std::vector<Term>& terms) {
            std::string pattern = render_pattern(e.message, terms, rules);
            const std::string key = categories.add(pattern);
            auto& p = by_category[key];
            if (p.f_p == 0) {
                p.category_key = key;
                p.pattern_text = std::move(pattern);
            }
            ++p.f_p;
        });
    }

    std::vector<PatternStats> stats;
    stats.reserve(by_category.size());
    for (auto& [key, p] : by_category) stats.push_back(std::move(p));
    const CoverageTable table = top_k_coverage(stats, ks);
    auto csv = open_output(cfg.out_dir / "coverage.csv");
    write_coverage_csv(table, csv);
    write_coverage_csv(table, console);
    return table;
}

CompareResult run_compare(const RunConfig& cfg, const std::string& node_a, const std::string& node_b,
                          std::ostream& console) {
    cfg.validate();
    const GridWindow window = cfg.grid_window();
    OccurrenceGrid a(node_a, window);
    OccurrenceGrid b(node_b, window);
    // only timestamp and source matter, so raw and encoded files are both accepted
    stream_entries(cfg, nullptr, [&](const RawLogEntry& e, const std::vector<Term>&) {
        if (e.source == node_a) a.record(e.timestamp);
        if (e.source == node_b) b.record(e.timestamp);
    });
    for (const auto* g : {&a, &b})
        if (g->empty()) std::cerr << "warning: no entries for node " << g->node() << " inside the window\n";

    CompareResult result{a, b, similarity_grid(a, b), difference_grid(a, b), {}};
    const std::string ext = extension(cfg.format);
    const std::string pair = node_a + "_vs_" + node_b;
    const std::vector<std::pair<const OccurrenceGrid*, std::string>> outputs = {
        {&result.a, node_a + "_grid"},
        {&result.b, node_b + "_grid"},
        {&result.similarity, pair + "_similarity"},
        {&result.difference, pair + "_difference"},
    };
    for (const auto& [grid, stem] : outputs) {
        const auto path = cfg.out_dir / (stem + "." + ext);
        emit_grid(*grid, cfg.format, path);
        result.files.push_back(path);
        console << stem << ": " << grid->occupied_cells() << " occupied cells -> " << path.string() << '\n';
    }
    return result;
}

void run_gen(const SynthConfig& cfg, const std::filesystem::path& out,
             const std::optional<std::filesystem::path>& labels) {
    SyntheticLogGenerator gen(cfg);
    auto corpus = open_output(out);
    std::ofstream label_out;
    if (labels) label_out = open_output(*labels);
    while (!gen.done()) {
        const SyntheticEntry e = gen.next();
        corpus << render_entry(e.entry) << '\n';
        if (labels) label_out << e.pattern << '\n';
    }
}

} // namespace logcloak
