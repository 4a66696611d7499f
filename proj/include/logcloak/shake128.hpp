#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace logcloak {

/// SHAKE-128 extendable-output function (FIPS 202). Absorb any number of
/// times, then squeeze; after the first squeeze no more input is accepted.
class Shake128 {
public:
    static constexpr std::size_t rate_bytes = 168;

    Shake128() = default;

    void absorb(std::span<const std::uint8_t> data);
    void absorb(std::string_view text);

    void squeeze(std::span<std::uint8_t> out);

    static std::vector<std::uint8_t> digest(std::string_view text, std::size_t out_len);

private:
    void permute() noexcept;
    void finalize() noexcept;

    std::array<std::uint64_t, 25> state_{};
    std::size_t offset_ = 0; // byte position inside the current rate block
    bool squeezing_ = false;
};

void keccak_f1600(std::array<std::uint64_t, 25>& state) noexcept;

std::string to_hex(std::span<const std::uint8_t> bytes);

} // namespace logcloak
