#include "epcaddr/addressing.hpp"

#include "epcaddr/error.hpp"

namespace epcaddr {

namespace {

const EpcValue& require_value(const Epc& epc)
{
    if (!epc.value)
        throw Error(ErrorCode::MissingValue, epc.display());
    return *epc.value;
}

const EpcValue& require_serial(const Epc& epc)
{
    if (!epc.serial_number)
        throw Error(ErrorCode::MissingSerial, epc.display());
    return *epc.serial_number;
}

constexpr Ipv6Address with_iid(Ipv6Address net_prefix, std::uint64_t iid) noexcept
{
    return Ipv6Address(net_prefix.high64(), iid);
}

} // namespace

std::string_view method_name(AddressingMethodId id) noexcept
{
    switch (id) {
    case AddressingMethodId::hybrid_ons: return "hybrid_ons";
    case AddressingMethodId::direct64: return "direct64";
    case AddressingMethodId::xor_pad: return "xor_pad";
    case AddressingMethodId::or_pad: return "or_pad";
    case AddressingMethodId::one_pad_serial: return "one_pad_serial";
    case AddressingMethodId::iso_epc: return "iso_epc";
    }
    return "hybrid_ons";
}

std::optional<AddressingMethodId> method_from_name(std::string_view name) noexcept
{
    for (auto id : kAllMethods) {
        if (method_name(id) == name)
            return id;
    }
    return std::nullopt;
}

DerivationPlan plan(const Epc& epc)
{
    const bool full_epc = epc.declared_bits <= kFullEpcMaxBits ||
                          (epc.scheme == Scheme::raw && epc.value && bit_length(*epc.value) <= kFullEpcMaxBits);

    DerivationPlan p;
    if (full_epc) {
        p.source = PayloadSource::full_epc;
        p.input_bits = bit_length(require_value(epc));
    } else {
        p.source = PayloadSource::serial_number;
        p.input_bits = bit_length(require_serial(epc));
    }
    if (p.input_bits > Ipv6Address::kBits)
        throw Error(ErrorCode::PayloadTooWide, epc.display() + " needs " + std::to_string(p.input_bits) + " bits");
    p.prefix_bits = Ipv6Address::kBits - p.input_bits;
    return p;
}

EpcValue plan_payload(const Epc& epc, const DerivationPlan& p)
{
    return p.source == PayloadSource::full_epc ? require_value(epc) : require_serial(epc);
}

Ipv6Address derive_hybrid(const Epc& epc, Ipv6Address ons_ip)
{
    const auto p = plan(epc);
    const uint128 payload = low128(plan_payload(epc, p));
    if (p.input_bits == Ipv6Address::kBits)
        return Ipv6Address(payload);
    const uint128 prefix = ons_ip.value() >> p.input_bits << p.input_bits;
    return Ipv6Address(prefix | payload);
}

Ipv6Address derive_direct64(const Epc& epc, Ipv6Address net_prefix)
{
    if (epc.declared_bits > 64)
        throw Error(ErrorCode::EpcTooWide, epc.display() + " declares " + std::to_string(epc.declared_bits) + " bits");
    return with_iid(net_prefix, low64(require_value(epc)));
}

std::uint64_t fold64(const EpcValue& value)
{
    std::uint64_t folded = 0;
    for (unsigned i = 0; i < kMaxEpcBits / 64; ++i)
        folded ^= word64(value, i);
    return folded;
}

Ipv6Address derive_xor_pad(const Epc& epc, Ipv6Address net_prefix, std::uint64_t salt)
{
    return with_iid(net_prefix, fold64(require_value(epc)) ^ salt);
}

Ipv6Address derive_or_pad(const Epc& epc, Ipv6Address net_prefix, std::uint64_t salt)
{
    return with_iid(net_prefix, fold64(require_value(epc)) | salt);
}

Ipv6Address derive_one_pad(const Epc& epc, Ipv6Address net_prefix)
{
    const auto& serial = require_serial(epc);
    const unsigned width = bit_length(serial);
    if (width > 64)
        throw Error(ErrorCode::SerialTooWide, epc.display());
    const std::uint64_t s = low64(serial);
    const std::uint64_t ones = width == 64 ? 0 : ~std::uint64_t{0} << width;
    return with_iid(net_prefix, ones | s);
}

Ipv6Address derive_iso_epc(const Epc& epc, Ipv6Address net_prefix, IdStandard standard)
{
    if (standard == IdStandard::epc)
        return with_iid(net_prefix, low64(require_value(epc)));
    const auto& serial = require_serial(epc);
    if (bit_length(serial) > 64)
        throw Error(ErrorCode::SerialTooWide, epc.display());
    return with_iid(net_prefix, low64(serial));
}

Ipv6Address derive(AddressingMethodId method, const Epc& epc, Ipv6Address anchor, const DeriveOptions& options)
{
    switch (method) {
    case AddressingMethodId::hybrid_ons: return derive_hybrid(epc, anchor);
    case AddressingMethodId::direct64: return derive_direct64(epc, anchor);
    case AddressingMethodId::xor_pad: return derive_xor_pad(epc, anchor, options.salt);
    case AddressingMethodId::or_pad: return derive_or_pad(epc, anchor, options.salt);
    case AddressingMethodId::one_pad_serial: return derive_one_pad(epc, anchor);
    case AddressingMethodId::iso_epc: return derive_iso_epc(epc, anchor, options.standard);
    }
    return derive_hybrid(epc, anchor);
}

} // namespace epcaddr
