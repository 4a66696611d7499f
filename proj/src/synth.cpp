#include "logcloak/synth.hpp"

#include <array>
#include <cmath>
#include <ctime>

#include "logcloak/errors.hpp"

namespace logcloak {

namespace {

constexpr std::array<const char*, 6> daemons = {"crond", "sshd", "slurmd", "munged", "ntpd", "rsyslogd"};
constexpr std::array<const char*, 5> dirs = {"/usr/bin", "/usr/lib64/lm", "/home/shared", "/opt/app/bin", "/etc/cron.d"};

std::string letters(std::size_t value, std::size_t width) {
    std::string out(width, 'a');
    for (std::size_t i = width; i-- > 0;) {
        out[i] = static_cast<char>('a' + value % 26);
        value /= 26;
    }
    return out;
}

std::vector<double> zipf_weights(std::size_t n, double s) {
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = 1.0 / std::pow(static_cast<double>(k + 1), s);
    return w;
}

} // namespace

SyntheticLogGenerator::SyntheticLogGenerator(const SynthConfig& cfg)
    : cfg_(cfg), rng_(cfg.seed), clock_(cfg.start) {
    if (cfg.patterns == 0) throw ConfigError("synthetic corpus needs at least one pattern");
    if (cfg.patterns > 26u * 26u * 26u * 26u) throw ConfigError("at most 456976 synthetic patterns");
    if (cfg.nodes == 0 || cfg.users == 0) throw ConfigError("synthetic corpus needs nodes and users");
    const auto w = zipf_weights(cfg.patterns, cfg.zipf_exponent);
    rank_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
    if (cfg.padding_bytes > 0) {
        static constexpr std::string_view filler = " lorem ipsum dolor sit amet consectetur adipiscing elit";
        while (padding_.size() < cfg.padding_bytes) padding_ += filler;
        padding_.resize(cfg.padding_bytes);
        if (padding_.back() == ' ') padding_.back() = '.';
    }
}

std::string SyntheticLogGenerator::tag(std::size_t pattern) const { return "x" + letters(pattern, 4); }

std::string SyntheticLogGenerator::user() {
    return "user" + letters(std::uniform_int_distribution<std::size_t>(0, cfg_.users - 1)(rng_), 2);
}

std::string SyntheticLogGenerator::path() {
    const auto d = std::uniform_int_distribution<std::size_t>(0, dirs.size() - 1)(rng_);
    const auto f = std::uniform_int_distribution<int>(0, 199)(rng_);
    return std::string(dirs[d]) + "/tool" + std::to_string(f);
}

std::string SyntheticLogGenerator::ipv4() {
    std::uniform_int_distribution<int> octet(1, 254);
    return "10." + std::to_string(octet(rng_)) + "." + std::to_string(octet(rng_)) + "." + std::to_string(octet(rng_));
}

std::string SyntheticLogGenerator::number() {
    return std::to_string(std::uniform_int_distribution<int>(0, 999)(rng_));
}

std::string SyntheticLogGenerator::daemon() {
    return daemons[std::uniform_int_distribution<std::size_t>(0, daemons.size() - 1)(rng_)];
}

std::string SyntheticLogGenerator::iso_time(Timestamp ts) const {
    const std::time_t t = static_cast<std::time_t>(ts);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    return buf;
}

SyntheticEntry SyntheticLogGenerator::next() {
    const std::size_t id = rank_(rng_);
    clock_ += std::uniform_int_distribution<std::int64_t>(0, 2 * cfg_.mean_gap_seconds)(rng_);
    const std::string node =
        "T-" + std::to_string(1000 + std::uniform_int_distribution<std::size_t>(0, cfg_.nodes - 1)(rng_));
    const std::string t = tag(id);

    std::string msg;
    switch (id % families) {
    case 0: msg = "(" + user() + ") CMD (" + path() + ") task " + t; break;
    case 1: msg = "pam_unix(" + t + ":session): session opened for user " + user(); break;
    case 2: msg = "Accepted publickey for " + user() + " from " + ipv4() + " port " + number() + " ssh2 " + t; break;
    case 3: msg = daemon() + " started on " + iso_time(clock_) + " unit " + t; break;
    case 4: msg = "Normal exit (" + number() + " jobs run) " + t; break;
    case 5: msg = t + " service " + daemon() + " reported status " + number(); break;
    case 6: msg = "mount " + path() + " on " + path() + " type " + t; break;
    default: msg = "constant message " + t + " without variables"; break;
    }
    msg += padding_;
    ++produced_;
    return {RawLogEntry{clock_, node, std::move(msg)}, id};
}

std::vector<SyntheticEntry> generate_corpus(const SynthConfig& cfg) {
    SyntheticLogGenerator gen(cfg);
    std::vector<SyntheticEntry> out;
    out.reserve(cfg.entries);
    while (!gen.done()) out.push_back(gen.next());
    return out;
}

} // namespace logcloak
