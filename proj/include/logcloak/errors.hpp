#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logcloak {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A line that does not follow the `<timestamp> <source> <message>` layout.
class MalformedLine : public Error {
public:
    explicit MalformedLine(const std::string& reason) : Error("malformed line: " + reason), reason_(reason) {}
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config error: " + what) {}
};

/// Group mode met a value that has no group and the rule declares no default.
class GroupMapIncomplete : public Error {
public:
    GroupMapIncomplete(const std::string& rule, const std::string& value)
        : Error("rule " + rule + ": no group for value '" + value + "' and no default group"),
          rule_(rule), value_(value) {}
    const std::string& rule() const noexcept { return rule_; }
    const std::string& value() const noexcept { return value_; }

private:
    std::string rule_;
    std::string value_;
};

/// Two distinct texts produced the same truncated digest. Raise the digest length and re-run.
class CollisionDetected : public Error {
public:
    CollisionDetected(const std::string& key, const std::string& first, const std::string& second)
        : Error("hash collision on key " + key + " between '" + first + "' and '" + second + "'"),
          key_(key), first_(first), second_(second) {}
    const std::string& key() const noexcept { return key_; }
    const std::string& first() const noexcept { return first_; }
    const std::string& second() const noexcept { return second_; }

private:
    std::string key_;
    std::string first_;
    std::string second_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain error: " + what) {}
};

class CoverageError : public Error {
public:
    explicit CoverageError(const std::string& what) : Error("coverage error: " + what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

} // namespace logcloak
