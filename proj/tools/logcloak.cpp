// logcloak: anonymize syslog corpora and measure what the anonymized data is still good for.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "logcloak/errors.hpp"
#include "logcloak/pipeline.hpp"

namespace {

enum ExitCode : int { ok = 0, failure = 1, config_error = 2, collision = 3, parse_failure = 4 };

std::pair<int, int> parse_window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw logcloak::ConfigError("window must be <start>:<end>, got '" + text + "'");
    try {
        return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw logcloak::ConfigError("window must be <start>:<end>, got '" + text + "'");
    }
}

std::vector<std::size_t> parse_ks(const std::string& text) {
    std::vector<std::size_t> ks;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            const long long k = std::stoll(item);
            if (k < 1) throw std::out_of_range("k");
            ks.push_back(static_cast<std::size_t>(k));
        } catch (const std::exception&) {
            throw logcloak::ConfigError("K list must be positive integers, got '" + text + "'");
        }
    }
    return ks;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rule-based de-identification, SHAKE-128 encoding and usefulness metrics for syslog corpora"};
    app.require_subcommand(1);

    logcloak::RunConfig cfg;
    std::string mode;
    std::string window = "0:240";
    std::string days = "0:365";
    std::string format = "csv";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("inputs", cfg.inputs, "Input log files ('-' for standard input)")->required();
        sub->add_option("--rules", cfg.rules_path, "Rule file (default: built-in ruleset)");
        sub->add_option("--mode", mode, "De-identification mode: individual|group|global");
        sub->add_option("--digest-bytes", cfg.digest_bytes, "Digest length in bytes (4-32)");
        sub->add_flag("--strict", cfg.strict, "Abort on the first malformed line");
        sub->add_option("--out", cfg.out_dir, "Output directory");
        sub->add_option("--workers", cfg.workers, "Parser/tokenizer threads");
    };

    auto* anonymize = app.add_subcommand("anonymize", "Encode raw logs into hash and category keys");
    add_common(anonymize);
    anonymize->add_flag("--emit-dictionary", cfg.emit_dictionary, "Write symbol<TAB>original-value disclosures");
    anonymize->add_flag("--emit-meanings", cfg.emit_meanings, "Write hash_key<TAB>de-identified message");

    auto* usefulness = app.add_subcommand("usefulness", "Data usefulness of the de-identified corpus");
    add_common(usefulness);
    usefulness->add_flag("--per-day", cfg.per_day, "One report per day instead of the whole corpus");
    usefulness->add_option("--epoch-day0", cfg.epoch_day0, "UNIX time of day 0 for --per-day");

    std::string ks = "5,25,50";
    auto* patterns = app.add_subcommand("patterns", "Top-K event pattern coverage");
    add_common(patterns);
    patterns->add_option("--k", ks, "Comma-separated K values");
    patterns->add_flag("--encoded", cfg.encoded_input, "Inputs are encoded logs (category key column)");

    std::string node_a;
    std::string node_b;
    auto* compare = app.add_subcommand("compare", "Day x minute occurrence grids of two nodes");
    add_common(compare);
    compare->add_option("--node-a", node_a, "First node id")->required();
    compare->add_option("--node-b", node_b, "Second node id")->required();
    compare->add_option("--epoch-day0", cfg.epoch_day0, "UNIX time of day 0");
    compare->add_option("--window", window, "Minute-of-day window <start>:<end>");
    compare->add_option("--days", days, "Inclusive day range <first>:<last>");
    compare->add_option("--format", format, "csv|pgm");

    logcloak::SynthConfig synth;
    std::string gen_out = "synthetic.log";
    std::optional<std::string> gen_labels;
    auto* gen = app.add_subcommand("gen", "Seeded synthetic corpus with Zipf-distributed patterns");
    gen->add_option("--seed", synth.seed, "RNG seed");
    gen->add_option("--entries", synth.entries, "Number of entries");
    gen->add_option("--patterns", synth.patterns, "Number of distinct event patterns");
    gen->add_option("--zipf", synth.zipf_exponent, "Zipf exponent");
    gen->add_option("--nodes", synth.nodes, "Number of source nodes");
    gen->add_option("--start", synth.start, "First timestamp");
    gen->add_option("--padding", synth.padding_bytes, "Constant filler bytes per message");
    gen->add_option("--out", gen_out, "Output file");
    gen->add_option("--labels", gen_labels, "Also write one pattern id per line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (!mode.empty()) cfg.mode = logcloak::parse_mode(mode);
        if (*compare) {
            std::tie(cfg.window_start, cfg.window_end) = parse_window(window);
            const auto [first, last] = parse_window(days);
            cfg.first_day = first;
            cfg.last_day = last;
            cfg.format = logcloak::parse_grid_format(format);
        }

        if (*anonymize) logcloak::run_anonymize(cfg, std::cout);
        else if (*usefulness) logcloak::run_usefulness(cfg, std::cout);
        else if (*patterns) logcloak::run_patterns(cfg, parse_ks(ks), std::cout);
        else if (*compare) logcloak::run_compare(cfg, node_a, node_b, std::cout);
        else if (*gen) logcloak::run_gen(synth, gen_out, gen_labels ? std::optional<std::filesystem::path>(*gen_labels) : std::nullopt);
    } catch (const logcloak::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return config_error;
    } catch (const logcloak::GroupMapIncomplete& e) {
        std::cerr << e.what() << '\n';
        return config_error;
    } catch (const logcloak::CollisionDetected& e) {
        std::cerr << e.what() << "\nre-run with a larger --digest-bytes\n";
        return collision;
    } catch (const logcloak::MalformedLine& e) {
        std::cerr << e.what() << '\n';
        return parse_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
    return ok;
}
