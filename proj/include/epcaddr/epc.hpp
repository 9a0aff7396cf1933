#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "epcaddr/numeric.hpp"

namespace epcaddr {

enum class Scheme { sgtin96, giai96, sgln96, usdod96, raw };

/// Tag URI spelling ("sgtin-96", ...); "raw" for opaque numeric EPCs.
std::string_view scheme_name(Scheme scheme) noexcept;
std::optional<Scheme> scheme_from_name(std::string_view name) noexcept;

/// Encoded width of a named scheme, 0 for raw.
unsigned scheme_bits(Scheme scheme) noexcept;

/// Width of the serial / individual-reference component of a named scheme.
/// For GIAI-96 it depends on the partition; this returns the widest row.
unsigned scheme_serial_bits(Scheme scheme) noexcept;

/// Non-serial URI components. `company_prefix` and `reference` keep their
/// written digit counts since those select the partition row.
struct TagFields {
    unsigned filter = 0;
    std::string company_prefix;
    std::string reference; // item reference (sgtin), location reference (sgln), empty (giai)

    bool operator==(const TagFields&) const = default;
};

/// A parsed Electronic Product Code.
///
/// `value` is the whole EPC as one number. It is absent for GIAI-96 and
/// SGLN-96, which are only parsed far enough to recover the serial.
struct Epc {
    Scheme scheme = Scheme::raw;
    unsigned declared_bits = 0;
    std::optional<EpcValue> value;
    std::optional<EpcValue> serial_number;
    std::optional<TagFields> tag;
    std::optional<std::string> uri;

    /// Opaque numeric EPC. declared_bits == 0 means bit_length(value).
    static Epc raw(const EpcValue& value, unsigned declared_bits = 0,
                   std::optional<EpcValue> serial = std::nullopt);

    /// URI when known, otherwise the hex value.
    std::string display() const;

    bool operator==(const Epc&) const = default;
};

/// Throws if `epc` breaks a type invariant (value width, serial presence and width).
void validate(const Epc& epc);

struct Sgtin96Fields {
    std::uint32_t filter = 0;
    std::uint32_t partition = 0;
    std::uint64_t company_prefix = 0;
    std::uint64_t item_reference = 0;
    std::uint64_t serial = 0;

    bool operator==(const Sgtin96Fields&) const = default;
};

struct PartitionRow {
    unsigned company_bits;
    unsigned company_digits;
    unsigned reference_bits;
    unsigned reference_digits;
};

inline constexpr std::uint32_t kSgtin96Header = 0x30;
inline constexpr unsigned kSgtin96SerialBits = 38;
inline constexpr unsigned kSgln96ExtensionBits = 41;

/// GS1 SGTIN partition table, indexed by partition value 0..6.
inline constexpr std::array<PartitionRow, 7> kSgtinPartitions{{
    {40, 12, 4, 1},
    {37, 11, 7, 2},
    {34, 10, 10, 3},
    {30, 9, 14, 4},
    {27, 8, 17, 5},
    {24, 7, 20, 6},
    {20, 6, 24, 7},
}};

/// GIAI-96: company bits/digits as SGTIN, reference is the asset reference.
inline constexpr std::array<PartitionRow, 7> kGiaiPartitions{{
    {40, 12, 42, 0},
    {37, 11, 45, 0},
    {34, 10, 48, 0},
    {30, 9, 52, 0},
    {27, 8, 55, 0},
    {24, 7, 58, 0},
    {20, 6, 62, 0},
}};

/// SGLN-96: reference is the location reference; the 41-bit extension follows.
inline constexpr std::array<PartitionRow, 7> kSglnPartitions{{
    {40, 12, 1, 0},
    {37, 11, 4, 1},
    {34, 10, 7, 2},
    {30, 9, 11, 3},
    {27, 8, 14, 4},
    {24, 7, 17, 5},
    {20, 6, 21, 6},
}};

/// Packs header 0x30 | filter(3) | partition(3) | company | item | serial(38).
/// Only bit widths are checked here; digit counts are a tag-URI concern.
EpcValue encode_sgtin96(const Sgtin96Fields& fields);

/// Exact inverse of encode_sgtin96.
Sgtin96Fields decode_sgtin96(const EpcValue& value);

/// Parses `urn:epc:tag:<scheme>:<fields>` for sgtin-96, giai-96 and sgln-96.
Epc parse_tag_uri(std::string_view text);

/// Canonical tag URI for a parsed named-scheme EPC.
std::string render_tag_uri(const Epc& epc);

/// Parses a bare EPC number (decimal or 0x hex) as a raw EPC.
Epc parse_epc_number(std::string_view text, unsigned declared_bits = 0);

} // namespace epcaddr
