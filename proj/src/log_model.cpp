#include "logcloak/log_model.hpp"

#include <charconv>

#include "logcloak/errors.hpp"

namespace logcloak {

namespace {

bool is_blank(char c) noexcept { return c == ' ' || c == '\t'; }

bool is_hex_key(std::string_view s) noexcept {
    if (s.empty() || s.size() % 2 != 0) return false;
    for (char c : s)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    return true;
}

struct Fields {
    Timestamp timestamp;
    std::string_view source;
    std::string_view rest;
};

Fields split_head(std::string_view line) {
    if (!is_valid_utf8(line)) throw MalformedLine("invalid UTF-8");
    if (line.find_first_of("\r\n") != std::string_view::npos)
        throw MalformedLine("embedded line terminator");

    std::size_t ts_end = 0;
    while (ts_end < line.size() && !is_blank(line[ts_end])) ++ts_end;
    const std::string_view ts_text = line.substr(0, ts_end);
    if (ts_text.empty()) throw MalformedLine("missing timestamp");

    Timestamp ts = 0;
    const auto* first = ts_text.data();
    const auto* last = first + ts_text.size();
    if (ts_text.front() == '-' || ts_text.front() == '+')
        throw MalformedLine("timestamp must be a non-negative integer: '" + std::string(ts_text) + "'");
    auto [ptr, ec] = std::from_chars(first, last, ts);
    if (ec != std::errc{} || ptr != last)
        throw MalformedLine("non-integer timestamp '" + std::string(ts_text) + "'");

    std::size_t src_begin = ts_end;
    while (src_begin < line.size() && is_blank(line[src_begin])) ++src_begin;
    std::size_t src_end = src_begin;
    while (src_end < line.size() && !is_blank(line[src_end])) ++src_end;
    if (src_end == src_begin) throw MalformedLine("missing source");

    std::string_view rest;
    if (src_end < line.size()) rest = line.substr(src_end + 1);
    return {ts, line.substr(src_begin, src_end - src_begin), rest};
}

} // namespace

bool is_valid_utf8(std::string_view bytes) noexcept {
    std::size_t i = 0;
    const std::size_t n = bytes.size();
    while (i < n) {
        const auto c = static_cast<unsigned char>(bytes[i]);
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (std::size_t k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(bytes[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        // overlong forms, surrogates, out of range
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000))
            return false;
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += len;
    }
    return true;
}

RawLogEntry parse_line(std::string_view line) {
    const Fields f = split_head(line);
    return RawLogEntry{f.timestamp, std::string(f.source), std::string(f.rest)};
}

EncodedEntry parse_encoded_line(std::string_view line) {
    const Fields f = split_head(line);
    const std::size_t sep = f.rest.find(' ');
    if (sep == std::string_view::npos) throw MalformedLine("encoded line needs hash and category columns");
    const std::string_view hash = f.rest.substr(0, sep);
    const std::string_view category = f.rest.substr(sep + 1);
    if (!is_hex_key(hash) || !is_hex_key(category) || hash.size() != category.size())
        throw MalformedLine("hash/category columns must be equal-width lowercase hex");
    return EncodedEntry{f.timestamp, std::string(f.source), std::string(hash), std::string(category)};
}

std::string render_entry(const RawLogEntry& entry) {
    std::string out = std::to_string(entry.timestamp);
    out.reserve(out.size() + entry.source.size() + entry.message.size() + 2);
    out += ' ';
    out += entry.source;
    out += ' ';
    out += entry.message;
    return out;
}

std::string render_entry(const EncodedEntry& entry) {
    std::string out = std::to_string(entry.timestamp);
    out += ' ';
    out += entry.source;
    out += ' ';
    out += entry.hash_key;
    out += ' ';
    out += entry.category_key;
    return out;
}

} // namespace logcloak
