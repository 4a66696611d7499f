#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "logcloak/log_model.hpp"

namespace logcloak {

/// Seeded synthetic syslog corpus. Pattern ranks follow a Zipf law; every
/// pattern id maps to exactly one event pattern under the default ruleset.
struct SynthConfig {
    std::uint64_t seed = 1;
    std::size_t entries = 1000;
    std::size_t patterns = 100;
    double zipf_exponent = 1.0;
    std::size_t nodes = 16;
    std::size_t users = 40;
    Timestamp start = 1483228800; // 2017-01-01T00:00:00Z
    std::int64_t mean_gap_seconds = 30;
    std::size_t padding_bytes = 0; // constant filler appended to every message
};

struct SyntheticEntry {
    RawLogEntry entry;
    std::size_t pattern = 0; // generator-side pattern id, 0 = most frequent
};

class SyntheticLogGenerator {
public:
    explicit SyntheticLogGenerator(const SynthConfig& cfg);

    bool done() const noexcept { return produced_ >= cfg_.entries; }
    SyntheticEntry next();

    static constexpr std::size_t families = 8;

private:
    std::string tag(std::size_t pattern) const;
    std::string user();
    std::string path();
    std::string ipv4();
    std::string number();
    std::string daemon();
    std::string iso_time(Timestamp ts) const;

    SynthConfig cfg_;
    std::mt19937_64 rng_;
    std::discrete_distribution<std::size_t> rank_;
    std::string padding_;
    Timestamp clock_;
    std::size_t produced_ = 0;
};

std::vector<SyntheticEntry> generate_corpus(const SynthConfig& cfg);

} // namespace logcloak
