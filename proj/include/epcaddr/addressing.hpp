#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "epcaddr/epc.hpp"
#include "epcaddr/ipv6.hpp"

namespace epcaddr {

enum class PayloadSource { full_epc, serial_number };

/// How the 128 address bits are split between the ONS address and the EPC side.
struct DerivationPlan {
    PayloadSource source = PayloadSource::full_epc;
    unsigned input_bits = 1;   // n: width of the EPC-side payload
    unsigned prefix_bits = 127; // 128 - n: high-order bits kept from the ONS address

    bool operator==(const DerivationPlan&) const = default;
};

/// EPCs wider than this use their serial number as the payload.
inline constexpr unsigned kFullEpcMaxBits = 64;

enum class AddressingMethodId { hybrid_ons, direct64, xor_pad, or_pad, one_pad_serial, iso_epc };

inline constexpr std::array<AddressingMethodId, 6> kAllMethods{
    AddressingMethodId::hybrid_ons, AddressingMethodId::direct64,       AddressingMethodId::xor_pad,
    AddressingMethodId::or_pad,     AddressingMethodId::one_pad_serial, AddressingMethodId::iso_epc,
};

std::string_view method_name(AddressingMethodId id) noexcept;
std::optional<AddressingMethodId> method_from_name(std::string_view name) noexcept;

/// Which identifier standard the iso_epc method reads from the tag.
enum class IdStandard { epc, iso };

/// Picks the payload (full EPC or serial) and its minimal width.
///
/// The <=64 / >64 branch follows the declared width, except that a raw EPC
/// whose value fits in 64 bits always takes the full-EPC path.
DerivationPlan plan(const Epc& epc);

/// The payload value plan() selected.
EpcValue plan_payload(const Epc& epc, const DerivationPlan& p);

/// Hybrid derivation: the top 128-n bits of the ONS address followed by the
/// n-bit payload, n = plan(epc).input_bits.
Ipv6Address derive_hybrid(const Epc& epc, Ipv6Address ons_ip);

/// High 64 bits of the prefix, EPC zero-extended into the interface identifier.
Ipv6Address derive_direct64(const Epc& epc, Ipv6Address net_prefix);

/// Interface identifier = fold64(value) XOR salt.
Ipv6Address derive_xor_pad(const Epc& epc, Ipv6Address net_prefix, std::uint64_t salt = 0);

/// Interface identifier = fold64(value) OR salt.
Ipv6Address derive_or_pad(const Epc& epc, Ipv6Address net_prefix, std::uint64_t salt = 0);

/// Serial number left-padded with one-bits to 64 bits.
Ipv6Address derive_one_pad(const Epc& epc, Ipv6Address net_prefix);

/// EPC standard: value zero-extended, or its low 64 bits when wider.
/// ISO standard: serial number, zero-extended.
Ipv6Address derive_iso_epc(const Epc& epc, Ipv6Address net_prefix, IdStandard standard = IdStandard::epc);

/// XOR of the value's consecutive 64-bit words.
std::uint64_t fold64(const EpcValue& value);

struct DeriveOptions {
    std::uint64_t salt = 0;
    IdStandard standard = IdStandard::epc;
};

/// Dispatches on `method`. `anchor` is the ONS address for hybrid_ons and the
/// network prefix for every baseline.
Ipv6Address derive(AddressingMethodId method, const Epc& epc, Ipv6Address anchor, const DeriveOptions& options = {});

} // namespace epcaddr
