#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "epcaddr/numeric.hpp"

namespace epcaddr {

/// 128-bit IPv6 address held as one unsigned integer, most significant bit first.
class Ipv6Address {
public:
    static constexpr unsigned kBits = 128;

    constexpr Ipv6Address() noexcept = default;
    constexpr explicit Ipv6Address(uint128 value) noexcept : m_value(value) {}
    constexpr Ipv6Address(std::uint64_t hi, std::uint64_t lo) noexcept : m_value(make_uint128(hi, lo)) {}

    constexpr uint128 value() const noexcept { return m_value; }
    constexpr std::uint64_t high64() const noexcept { return epcaddr::high64(m_value); }
    constexpr std::uint64_t low64() const noexcept { return epcaddr::low64(m_value); }

    std::array<std::uint16_t, 8> groups() const noexcept;

    constexpr auto operator<=>(const Ipv6Address&) const noexcept = default;

private:
    uint128 m_value = 0;
};

/// Canonical text: lowercase, no leading zeros, longest run of two or more
/// zero groups (first on ties) replaced by "::".
std::string format_canonical(Ipv6Address addr);

/// Accepts full, zero-suppressed and "::"-compressed forms, any hex case.
Ipv6Address parse_ipv6(std::string_view text);

/// Number of leading bits two addresses share (0..128).
unsigned common_prefix_length(Ipv6Address a, Ipv6Address b) noexcept;

} // namespace epcaddr
