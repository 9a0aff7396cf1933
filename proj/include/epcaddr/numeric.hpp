#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace epcaddr {

using uint128 = unsigned __int128;

/// Wide enough for the largest EPC encoding (256 bits).
using EpcValue = boost::multiprecision::uint256_t;

inline constexpr unsigned kMaxEpcBits = 256;

constexpr uint128 make_uint128(std::uint64_t hi, std::uint64_t lo) noexcept
{
    return (static_cast<uint128>(hi) << 64) | lo;
}

constexpr std::uint64_t high64(uint128 v) noexcept { return static_cast<std::uint64_t>(v >> 64); }
constexpr std::uint64_t low64(uint128 v) noexcept { return static_cast<std::uint64_t>(v); }

/// Position of the most significant one-bit, 1-based. bit_length(0) == 1.
constexpr unsigned bit_length(std::uint64_t v) noexcept
{
    return v == 0 ? 1u : static_cast<unsigned>(std::bit_width(v));
}

constexpr unsigned bit_length(uint128 v) noexcept
{
    const auto hi = high64(v);
    return hi != 0 ? 64u + static_cast<unsigned>(std::bit_width(hi)) : bit_length(low64(v));
}

unsigned bit_length(const EpcValue& v);

/// Low 64 / low 128 bits of a wide value.
std::uint64_t low64(const EpcValue& v);
uint128 low128(const EpcValue& v);
EpcValue to_epc_value(uint128 v);

/// Chunk i (0 = least significant) of the value split into 64-bit words.
std::uint64_t word64(const EpcValue& v, unsigned index);

/// Unsigned decimal, or hex with a 0x/0X prefix. Throws MalformedNumber on
/// bad digits or anything that does not fit in 256 bits.
EpcValue parse_number(std::string_view text);

std::string to_decimal(const EpcValue& v);
/// Lowercase, 0x-prefixed, no leading zeros.
std::string to_hex(const EpcValue& v);

} // namespace epcaddr
