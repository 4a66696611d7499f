#include "logcloak/rational.hpp"

#include <cctype>

#include "logcloak/errors.hpp"

namespace logcloak {

namespace {

BigInt pow10(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 0; i < n; ++i) r *= 10;
    return r;
}

BigInt parse_digits(std::string_view s, std::string_view whole) {
    if (s.empty()) throw DomainError("not a number: '" + std::string(whole) + "'");
    BigInt r = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw DomainError("not a number: '" + std::string(whole) + "'");
        r = r * 10 + (c - '0');
    }
    return r;
}

} // namespace

std::string to_decimal(const Rational& value, unsigned places) {
    const bool negative = value < 0;
    const Rational magnitude = negative ? -value : value;
    const BigInt num = boost::multiprecision::numerator(magnitude);
    const BigInt den = boost::multiprecision::denominator(magnitude);
    const BigInt scale = pow10(places);
    const BigInt scaled = (num * scale * 2 + den) / (den * 2);

    std::string digits = scaled.str();
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    std::string out = digits.substr(0, digits.size() - places);
    if (places > 0) {
        out += '.';
        out += digits.substr(digits.size() - places);
    }
    if (negative && scaled != 0) out.insert(0, 1, '-');
    return out;
}

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational r;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const BigInt den = parse_digits(s.substr(slash + 1), text);
        if (den == 0) throw DomainError("zero denominator: '" + std::string(text) + "'");
        r = Rational(parse_digits(s.substr(0, slash), text), den);
    } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const std::string_view int_part = s.substr(0, dot);
        const std::string_view frac_part = s.substr(dot + 1);
        const BigInt ip = int_part.empty() ? BigInt(0) : parse_digits(int_part, text);
        const BigInt fp = frac_part.empty() ? BigInt(0) : parse_digits(frac_part, text);
        if (int_part.empty() && frac_part.empty()) throw DomainError("not a number: '" + std::string(text) + "'");
        const BigInt scale = pow10(static_cast<unsigned>(frac_part.size()));
        r = Rational(ip * scale + fp, scale);
    } else {
        r = Rational(parse_digits(s, text));
    }
    return negative ? Rational(-r) : r;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

} // namespace logcloak
