#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logcloak/log_model.hpp"
#include "logcloak/rational.hpp"

namespace logcloak {

struct EncoderConfig {
    std::size_t digest_length_bytes = 4; // 8 hex characters
    bool emit_meanings = false;

    /// Throws ConfigError unless digest_length_bytes is in [4, 32].
    void validate() const;
    std::size_t key_width() const noexcept { return 2 * digest_length_bytes; }
};

/// SHAKE-128 over the exact bytes of `text`, truncated to `digest_bytes`
/// (1..32), rendered as lowercase hex.
std::string hash_text(std::string_view text, std::size_t digest_bytes);
inline std::string hash_text(std::string_view text, const EncoderConfig& cfg) {
    return hash_text(text, cfg.digest_length_bytes);
}

struct Meaning {
    std::string key;
    std::string text;
};

/// hash key -> (text, count), one-to-one. Inserts are serialised internally,
/// so concurrent callers observe an outcome equal to some sequential order.
class PatternDictionary {
public:
    struct Entry {
        std::string key;
        std::string text;
        std::uint64_t count = 0;
    };

    explicit PatternDictionary(std::size_t digest_bytes);
    PatternDictionary(const PatternDictionary& other);
    PatternDictionary& operator=(const PatternDictionary& other);

    std::size_t digest_bytes() const noexcept { return digest_bytes_; }

    /// Hashes `text` (reusing a cached key when seen before), increments its
    /// count and returns the key. Throws CollisionDetected.
    std::string add(std::string_view text);

    std::optional<std::string> text_of(std::string_view key) const;
    std::optional<std::string> key_of(std::string_view text) const;
    std::uint64_t count_of(std::string_view key) const;

    std::size_t size() const;
    std::uint64_t total_count() const;
    /// Entries in first-insertion order.
    std::vector<Entry> entries() const;

private:
    std::size_t digest_bytes_;
    mutable std::mutex mutex_;
    std::vector<Entry> entries_;
    std::unordered_map<std::string, std::size_t> by_key_;
    std::unordered_map<std::string, std::size_t> by_text_;
};

/// Encodes de-identified entries: hash key from the de-identified message,
/// category key from the event pattern. Both key spaces share one namespace,
/// so a key that names two different texts across them is a collision too.
class Encoder {
public:
    explicit Encoder(EncoderConfig cfg);

    const EncoderConfig& config() const noexcept { return cfg_; }

    EncodedEntry encode(const DeidentifiedEntry& entry, std::string_view pattern);

    const PatternDictionary& hashes() const noexcept { return hashes_; }
    const PatternDictionary& categories() const noexcept { return categories_; }

    /// Hash-key meanings followed by category keys not already listed.
    std::vector<Meaning> meanings() const;

private:
    void check_cross(const std::string& key, std::string_view text, const PatternDictionary& other) const;

    EncoderConfig cfg_;
    PatternDictionary hashes_;
    PatternDictionary categories_;
};

struct StorageReport {
    std::uint64_t entries = 0;
    std::uint64_t raw_message_bytes = 0;
    std::uint64_t encoded_bytes = 0;    // hash + separator + category per entry
    std::uint64_t dictionary_bytes = 0; // size of the meanings file
    Rational saving_without_dictionary = 0;
    Rational saving_with_dictionary = 0;
};

/// Incremental byte accounting; storage_stats() wraps it for whole corpora.
class StorageCounter {
public:
    void add(const RawLogEntry& raw, const EncodedEntry& encoded) noexcept;
    StorageReport finish(std::span<const Meaning> meanings) const;

private:
    std::uint64_t entries_ = 0;
    std::uint64_t raw_ = 0;
    std::uint64_t encoded_ = 0;
};

std::uint64_t meanings_bytes(std::span<const Meaning> meanings) noexcept;

StorageReport storage_stats(std::span<const RawLogEntry> raw, std::span<const EncodedEntry> encoded,
                            std::span<const Meaning> meanings);

} // namespace logcloak
