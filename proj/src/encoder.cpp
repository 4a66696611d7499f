#include "logcloak/encoder.hpp"

#include <unordered_set>

#include "logcloak/errors.hpp"
#include "logcloak/shake128.hpp"

namespace logcloak {

void EncoderConfig::validate() const {
    if (digest_length_bytes < 4 || digest_length_bytes > 32)
        throw ConfigError("digest length must be between 4 and 32 bytes, got " + std::to_string(digest_length_bytes));
}

std::string hash_text(std::string_view text, std::size_t digest_bytes) {
    if (digest_bytes < 1 || digest_bytes > 32)
        throw ConfigError("digest length must be between 1 and 32 bytes");
    return to_hex(Shake128::digest(text, digest_bytes));
}

PatternDictionary::PatternDictionary(std::size_t digest_bytes) : digest_bytes_(digest_bytes) {
    if (digest_bytes < 1 || digest_bytes > 32) throw ConfigError("digest length must be between 1 and 32 bytes");
}

PatternDictionary::PatternDictionary(const PatternDictionary& other) : digest_bytes_(other.digest_bytes_) {
    std::scoped_lock lock(other.mutex_);
    entries_ = other.entries_;
    by_key_ = other.by_key_;
    by_text_ = other.by_text_;
}

PatternDictionary& PatternDictionary::operator=(const PatternDictionary& other) {
    if (this != &other) {
        std::scoped_lock lock(mutex_, other.mutex_);
        digest_bytes_ = other.digest_bytes_;
        entries_ = other.entries_;
        by_key_ = other.by_key_;
        by_text_ = other.by_text_;
    }
    return *this;
}

std::string PatternDictionary::add(std::string_view text) {
    std::string owned(text);
    {
        std::scoped_lock lock(mutex_);
        if (const auto it = by_text_.find(owned); it != by_text_.end()) {
            Entry& e = entries_[it->second];
            ++e.count;
            return e.key;
        }
    }
    std::string key = hash_text(text, digest_bytes_); // hashed outside the lock

    std::scoped_lock lock(mutex_);
    if (const auto it = by_text_.find(owned); it != by_text_.end()) {
        Entry& e = entries_[it->second];
        ++e.count;
        return e.key;
    }
    if (const auto it = by_key_.find(key); it != by_key_.end())
        throw CollisionDetected(key, entries_[it->second].text, owned);
    const std::size_t index = entries_.size();
    entries_.push_back({key, owned, 1});
    by_key_.emplace(key, index);
    by_text_.emplace(std::move(owned), index);
    return key;
}

std::optional<std::string> PatternDictionary::text_of(std::string_view key) const {
    std::scoped_lock lock(mutex_);
    if (const auto it = by_key_.find(std::string(key)); it != by_key_.end()) return entries_[it->second].text;
    return std::nullopt;
}

std::optional<std::string> PatternDictionary::key_of(std::string_view text) const {
    std::scoped_lock lock(mutex_);
    if (const auto it = by_text_.find(std::string(text)); it != by_text_.end()) return entries_[it->second].key;
    return std::nullopt;
}

std::uint64_t PatternDictionary::count_of(std::string_view key) const {
    std::scoped_lock lock(mutex_);
    if (const auto it = by_key_.find(std::string(key)); it != by_key_.end()) return entries_[it->second].count;
    return 0;
}

std::size_t PatternDictionary::size() const {
    std::scoped_lock lock(mutex_);
    return entries_.size();
}

std::uint64_t PatternDictionary::total_count() const {
    std::scoped_lock lock(mutex_);
    std::uint64_t total = 0;
    for (const auto& e : entries_) total += e.count;
    return total;
}

std::vector<PatternDictionary::Entry> PatternDictionary::entries() const {
    std::scoped_lock lock(mutex_);
    return entries_;
}

Encoder::Encoder(EncoderConfig cfg)
    : cfg_(cfg), hashes_(cfg.digest_length_bytes), categories_(cfg.digest_length_bytes) {}

void Encoder::check_cross(const std::string& key, std::string_view text, const PatternDictionary& other) const {
    if (const auto owner = other.text_of(key); owner && *owner != text)
        throw CollisionDetected(key, *owner, std::string(text));
}

EncodedEntry Encoder::encode(const DeidentifiedEntry& entry, std::string_view pattern) {
    const std::size_t before_h = hashes_.size();
    std::string hash_key = hashes_.add(entry.deid_message);
    if (hashes_.size() != before_h) check_cross(hash_key, entry.deid_message, categories_);

    const std::size_t before_c = categories_.size();
    std::string category_key = categories_.add(pattern);
    if (categories_.size() != before_c) check_cross(category_key, pattern, hashes_);

    return EncodedEntry{entry.timestamp, entry.source, std::move(hash_key), std::move(category_key)};
}

std::vector<Meaning> Encoder::meanings() const {
    std::vector<Meaning> out;
    std::unordered_set<std::string> listed;
    for (auto& e : hashes_.entries()) {
        listed.insert(e.key);
        out.push_back({std::move(e.key), std::move(e.text)});
    }
    for (auto& e : categories_.entries())
        if (listed.insert(e.key).second) out.push_back({std::move(e.key), std::move(e.text)});
    return out;
}

void StorageCounter::add(const RawLogEntry& raw, const EncodedEntry& encoded) noexcept {
    ++entries_;
    raw_ += raw.message.size();
    encoded_ += encoded.hash_key.size() + 1 + encoded.category_key.size();
}

std::uint64_t meanings_bytes(std::span<const Meaning> meanings) noexcept {
    std::uint64_t total = 0;
    for (const auto& m : meanings) total += m.key.size() + 1 + m.text.size() + 1;
    return total;
}

StorageReport StorageCounter::finish(std::span<const Meaning> meanings) const {
    StorageReport r;
    r.entries = entries_;
    r.raw_message_bytes = raw_;
    r.encoded_bytes = encoded_;
    r.dictionary_bytes = meanings_bytes(meanings);
    if (raw_ > 0) {
        r.saving_without_dictionary = 1 - Rational(BigInt(encoded_), BigInt(raw_));
        r.saving_with_dictionary = 1 - Rational(BigInt(encoded_ + r.dictionary_bytes), BigInt(raw_));
    }
    return r;
}

StorageReport storage_stats(std::span<const RawLogEntry> raw, std::span<const EncodedEntry> encoded,
                            std::span<const Meaning> meanings) {
    if (raw.size() != encoded.size()) throw DomainError("raw and encoded corpora differ in length");
    StorageCounter counter;
    for (std::size_t i = 0; i < raw.size(); ++i) counter.add(raw[i], encoded[i]);
    return counter.finish(meanings);
}

} // namespace logcloak
