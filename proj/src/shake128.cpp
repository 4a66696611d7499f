#include "logcloak/shake128.hpp"

#include <stdexcept>

namespace logcloak {

namespace {

constexpr std::array<std::uint64_t, 24> round_constants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// rho offsets and pi lane order, walked along the (x, y) -> (y, 2x + 3y) cycle
constexpr std::array<unsigned, 24> rho_offsets = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                                  27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};
constexpr std::array<unsigned, 24> pi_lanes = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                                               15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

constexpr std::uint64_t rotl(std::uint64_t v, unsigned n) noexcept {
    return n == 0 ? v : (v << n) | (v >> (64 - n));
}

} // namespace

void keccak_f1600(std::array<std::uint64_t, 25>& a) noexcept {
    for (std::uint64_t rc : round_constants) {
        // theta
        std::uint64_t c[5];
        for (int x = 0; x < 5; ++x) c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x) {
            const std::uint64_t d = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5) a[y + x] ^= d;
        }
        // rho + pi
        std::uint64_t carry = a[1];
        for (std::size_t i = 0; i < 24; ++i) {
            const unsigned j = pi_lanes[i];
            const std::uint64_t tmp = a[j];
            a[j] = rotl(carry, rho_offsets[i]);
            carry = tmp;
        }
        // chi
        for (int y = 0; y < 25; y += 5) {
            std::uint64_t row[5];
            for (int x = 0; x < 5; ++x) row[x] = a[y + x];
            for (int x = 0; x < 5; ++x) a[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }
        // iota
        a[0] ^= rc;
    }
}

void Shake128::permute() noexcept { keccak_f1600(state_); }

void Shake128::absorb(std::span<const std::uint8_t> data) {
    if (squeezing_) throw std::logic_error("Shake128: absorb after squeeze");
    for (std::uint8_t byte : data) {
        state_[offset_ / 8] ^= static_cast<std::uint64_t>(byte) << (8 * (offset_ % 8));
        if (++offset_ == rate_bytes) {
            permute();
            offset_ = 0;
        }
    }
}

void Shake128::absorb(std::string_view text) {
    absorb(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void Shake128::finalize() noexcept {
    // domain separation 1111 followed by pad10*1
    state_[offset_ / 8] ^= 0x1FULL << (8 * (offset_ % 8));
    state_[(rate_bytes - 1) / 8] ^= 0x80ULL << (8 * ((rate_bytes - 1) % 8));
    permute();
    offset_ = 0;
    squeezing_ = true;
}

void Shake128::squeeze(std::span<std::uint8_t> out) {
    if (!squeezing_) finalize();
    for (auto& byte : out) {
        if (offset_ == rate_bytes) {
            permute();
            offset_ = 0;
        }
        byte = static_cast<std::uint8_t>(state_[offset_ / 8] >> (8 * (offset_ % 8)));
        ++offset_;
    }
}

std::vector<std::uint8_t> Shake128::digest(std::string_view text, std::size_t out_len) {
    Shake128 xof;
    xof.absorb(text);
    std::vector<std::uint8_t> out(out_len);
    xof.squeeze(out);
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out += digits[b >> 4];
        out += digits[b & 0x0F];
    }
    return out;
}

} // namespace logcloak
