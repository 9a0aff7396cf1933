#include "epcaddr/epc.hpp"

#include <vector>

#include "epcaddr/error.hpp"

namespace epcaddr {

namespace {

constexpr std::string_view kUriPrefix = "urn:epc:tag:";

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

bool all_digits(std::string_view s)
{
    for (char c : s) {
        if (c < '0' || c > '9')
            return false;
    }
    return true;
}

/// Decimal field whose digit count is significant (company prefix, references).
std::uint64_t fixed_digits(std::string_view field, std::string_view what)
{
    if (!all_digits(field))
        throw Error(ErrorCode::MalformedUri, std::string(what) + " is not decimal: '" + std::string(field) + "'");
    if (field.size() > 18)
        throw Error(ErrorCode::FieldOutOfRange, std::string(what) + " has too many digits");
    std::uint64_t v = 0;
    for (char c : field)
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    return v;
}

/// Serial-style decimal field: no leading zeros, bounded by a bit width.
EpcValue serial_field(std::string_view field, unsigned bits)
{
    if (field.empty() || !all_digits(field))
        throw Error(ErrorCode::MalformedUri, "serial is not decimal: '" + std::string(field) + "'");
    if (field.size() > 1 && field[0] == '0')
        throw Error(ErrorCode::FieldOutOfRange, "serial has leading zeros: '" + std::string(field) + "'");
    if (field.size() > 77)
        throw Error(ErrorCode::SerialTooWide, std::string(field));
    const EpcValue v = parse_number(field);
    if (v >> bits != 0)
        throw Error(ErrorCode::SerialTooWide, std::string(field) + " exceeds " + std::to_string(bits) + " bits");
    return v;
}

unsigned filter_field(std::string_view field)
{
    if (field.size() != 1 || !all_digits(field) || field[0] > '7')
        throw Error(ErrorCode::FieldOutOfRange, "filter must be a single digit 0-7: '" + std::string(field) + "'");
    return static_cast<unsigned>(field[0] - '0');
}

/// Partition index selected by the written company-prefix length (12 → 0 ... 6 → 6).
unsigned partition_for_company(std::string_view company)
{
    if (company.size() < 6 || company.size() > 12)
        throw Error(ErrorCode::FieldOutOfRange,
                    "company prefix must have 6-12 digits, got " + std::to_string(company.size()));
    return static_cast<unsigned>(12 - company.size());
}

std::uint64_t mask(unsigned bits)
{
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::string zero_padded(std::uint64_t v, unsigned digits)
{
    std::string s = std::to_string(v);
    if (s.size() > digits)
        throw Error(ErrorCode::FieldOutOfRange, s + " does not fit " + std::to_string(digits) + " digits");
    if (digits == 0)
        return {};
    return std::string(digits - s.size(), '0') + s;
}

Epc parse_sgtin96(std::string_view text, const std::vector<std::string_view>& f)
{
    if (f.size() != 4)
        throw Error(ErrorCode::MalformedUri, "sgtin-96 needs 4 fields");
    const unsigned filter = filter_field(f[0]);
    const unsigned partition = partition_for_company(f[1]);
    const auto& row = kSgtinPartitions[partition];
    if (f[2].size() != row.reference_digits)
        throw Error(ErrorCode::FieldOutOfRange, "item reference must have " + std::to_string(row.reference_digits) +
                                                    " digits for a " + std::to_string(row.company_digits) +
                                                    "-digit company prefix");

    Sgtin96Fields fields;
    fields.filter = filter;
    fields.partition = partition;
    fields.company_prefix = fixed_digits(f[1], "company prefix");
    fields.item_reference = fixed_digits(f[2], "item reference");
    fields.serial = low64(serial_field(f[3], kSgtin96SerialBits));

    Epc epc;
    epc.scheme = Scheme::sgtin96;
    epc.declared_bits = 96;
    epc.value = encode_sgtin96(fields);
    epc.serial_number = EpcValue(fields.serial);
    epc.tag = TagFields{filter, std::string(f[1]), std::string(f[2])};
    epc.uri = std::string(text);
    return epc;
}

Epc parse_giai96(std::string_view text, const std::vector<std::string_view>& f)
{
    if (f.size() != 3)
        throw Error(ErrorCode::MalformedUri, "giai-96 needs 3 fields");
    const unsigned filter = filter_field(f[0]);
    const auto& row = kGiaiPartitions[partition_for_company(f[1])];
    fixed_digits(f[1], "company prefix");

    Epc epc;
    epc.scheme = Scheme::giai96;
    epc.declared_bits = 96;
    epc.serial_number = serial_field(f[2], row.reference_bits);
    epc.tag = TagFields{filter, std::string(f[1]), {}};
    epc.uri = std::string(text);
    return epc;
}

Epc parse_sgln96(std::string_view text, const std::vector<std::string_view>& f)
{
    if (f.size() != 4)
        throw Error(ErrorCode::MalformedUri, "sgln-96 needs 4 fields");
    const unsigned filter = filter_field(f[0]);
    const auto& row = kSglnPartitions[partition_for_company(f[1])];
    fixed_digits(f[1], "company prefix");
    if (f[2].size() != row.reference_digits)
        throw Error(ErrorCode::FieldOutOfRange, "location reference must have " +
                                                    std::to_string(row.reference_digits) + " digits");
    fixed_digits(f[2], "location reference");

    Epc epc;
    epc.scheme = Scheme::sgln96;
    epc.declared_bits = 96;
    epc.serial_number = serial_field(f[3], kSgln96ExtensionBits);
    epc.tag = TagFields{filter, std::string(f[1]), std::string(f[2])};
    epc.uri = std::string(text);
    return epc;
}

} // namespace

std::string_view scheme_name(Scheme scheme) noexcept
{
    switch (scheme) {
    case Scheme::sgtin96: return "sgtin-96";
    case Scheme::giai96: return "giai-96";
    case Scheme::sgln96: return "sgln-96";
    case Scheme::usdod96: return "usdod-96";
    case Scheme::raw: return "raw";
    }
    return "raw";
}

std::optional<Scheme> scheme_from_name(std::string_view name) noexcept
{
    for (auto s : {Scheme::sgtin96, Scheme::giai96, Scheme::sgln96, Scheme::usdod96, Scheme::raw}) {
        if (scheme_name(s) == name)
            return s;
    }
    return std::nullopt;
}

unsigned scheme_bits(Scheme scheme) noexcept
{
    return scheme == Scheme::raw ? 0 : 96;
}

unsigned scheme_serial_bits(Scheme scheme) noexcept
{
    switch (scheme) {
    case Scheme::sgtin96: return kSgtin96SerialBits;
    case Scheme::giai96: return kGiaiPartitions.back().reference_bits;
    case Scheme::sgln96: return kSgln96ExtensionBits;
    case Scheme::usdod96: return 36;
    case Scheme::raw: return kMaxEpcBits;
    }
    return kMaxEpcBits;
}

Epc Epc::raw(const EpcValue& value, unsigned declared_bits, std::optional<EpcValue> serial)
{
    Epc epc;
    epc.scheme = Scheme::raw;
    epc.declared_bits = declared_bits == 0 ? bit_length(value) : declared_bits;
    epc.value = value;
    epc.serial_number = std::move(serial);
    validate(epc);
    return epc;
}

std::string Epc::display() const
{
    if (uri)
        return *uri;
    if (value)
        return to_hex(*value);
    return std::string(scheme_name(scheme)) + ":?";
}

void validate(const Epc& epc)
{
    if (epc.scheme == Scheme::raw) {
        if (epc.declared_bits < 1 || epc.declared_bits > kMaxEpcBits)
            throw Error(ErrorCode::FieldOutOfRange, "raw EPC width must be 1..256, got " +
                                                        std::to_string(epc.declared_bits));
        if (!epc.value)
            throw Error(ErrorCode::MissingValue, "raw EPC without a value");
    } else {
        if (epc.declared_bits != scheme_bits(epc.scheme))
            throw Error(ErrorCode::FieldOutOfRange, std::string(scheme_name(epc.scheme)) + " must declare " +
                                                        std::to_string(scheme_bits(epc.scheme)) + " bits");
        if (!epc.serial_number)
            throw Error(ErrorCode::MissingSerial, std::string(scheme_name(epc.scheme)));
        if (epc.scheme == Scheme::sgtin96 && !epc.value)
            throw Error(ErrorCode::MissingValue, "sgtin-96 without a value");
    }
    if (epc.value && bit_length(*epc.value) > epc.declared_bits)
        throw Error(ErrorCode::FieldOverflow, to_hex(*epc.value) + " exceeds " +
                                                  std::to_string(epc.declared_bits) + " bits");
    if (epc.serial_number && bit_length(*epc.serial_number) > scheme_serial_bits(epc.scheme))
        throw Error(ErrorCode::SerialTooWide, to_decimal(*epc.serial_number));
}

EpcValue encode_sgtin96(const Sgtin96Fields& fields)
{
    if (fields.partition >= kSgtinPartitions.size())
        throw Error(ErrorCode::InvalidPartition, std::to_string(fields.partition));
    const auto& row = kSgtinPartitions[fields.partition];
    if (fields.filter > 7)
        throw Error(ErrorCode::FieldOverflow, "filter " + std::to_string(fields.filter));
    if (fields.company_prefix > mask(row.company_bits))
        throw Error(ErrorCode::FieldOverflow, "company prefix exceeds " + std::to_string(row.company_bits) + " bits");
    if (fields.item_reference > mask(row.reference_bits))
        throw Error(ErrorCode::FieldOverflow, "item reference exceeds " + std::to_string(row.reference_bits) + " bits");
    if (fields.serial > mask(kSgtin96SerialBits))
        throw Error(ErrorCode::FieldOverflow, "serial exceeds 38 bits");

    // company + item always occupy 44 bits, so the low 82 bits hold
    // company | item | serial and the top 14 hold header | filter | partition.
    EpcValue v = kSgtin96Header;
    v = (v << 3) | fields.filter;
    v = (v << 3) | fields.partition;
    v = (v << row.company_bits) | fields.company_prefix;
    v = (v << row.reference_bits) | fields.item_reference;
    v = (v << kSgtin96SerialBits) | fields.serial;
    return v;
}

Sgtin96Fields decode_sgtin96(const EpcValue& value)
{
    if (value >> 88 != kSgtin96Header)
        throw Error(ErrorCode::WrongHeader, to_hex(value >> 88));
    const auto top = low64(value >> 82);
    Sgtin96Fields f;
    f.partition = static_cast<std::uint32_t>(top & 0x7);
    f.filter = static_cast<std::uint32_t>((top >> 3) & 0x7);
    if (f.partition >= kSgtinPartitions.size())
        throw Error(ErrorCode::InvalidPartition, std::to_string(f.partition));
    const auto& row = kSgtinPartitions[f.partition];
    f.serial = low64(value) & mask(kSgtin96SerialBits);
    f.item_reference = low64(value >> kSgtin96SerialBits) & mask(row.reference_bits);
    f.company_prefix = low64(value >> (kSgtin96SerialBits + row.reference_bits)) & mask(row.company_bits);
    return f;
}

Epc parse_tag_uri(std::string_view text)
{
    if (!text.starts_with(kUriPrefix))
        throw Error(ErrorCode::MalformedUri, "expected 'urn:epc:tag:' prefix");
    const auto rest = text.substr(kUriPrefix.size());
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos || colon == 0)
        throw Error(ErrorCode::MalformedUri, "missing scheme");
    const auto name = rest.substr(0, colon);
    const auto fields = split(rest.substr(colon + 1), '.');

    const auto scheme = scheme_from_name(name);
    if (!scheme || *scheme == Scheme::raw || *scheme == Scheme::usdod96)
        throw Error(ErrorCode::UnknownScheme, std::string(name));

    switch (*scheme) {
    case Scheme::sgtin96: return parse_sgtin96(text, fields);
    case Scheme::giai96: return parse_giai96(text, fields);
    case Scheme::sgln96: return parse_sgln96(text, fields);
    default: break;
    }
    throw Error(ErrorCode::UnknownScheme, std::string(name));
}

std::string render_tag_uri(const Epc& epc)
{
    if (epc.scheme == Scheme::raw || epc.scheme == Scheme::usdod96)
        throw Error(ErrorCode::UnknownScheme, "no tag URI form for " + std::string(scheme_name(epc.scheme)));
    if (!epc.serial_number)
        throw Error(ErrorCode::MissingSerial, std::string(scheme_name(epc.scheme)));

    TagFields tag;
    if (epc.tag) {
        tag = *epc.tag;
    } else if (epc.scheme == Scheme::sgtin96 && epc.value) {
        const auto f = decode_sgtin96(*epc.value);
        const auto& row = kSgtinPartitions[f.partition];
        tag.filter = f.filter;
        tag.company_prefix = zero_padded(f.company_prefix, row.company_digits);
        tag.reference = zero_padded(f.item_reference, row.reference_digits);
    } else {
        throw Error(ErrorCode::MalformedUri, "EPC carries no tag fields");
    }

    std::string out(kUriPrefix);
    out += scheme_name(epc.scheme);
    out += ':';
    out += std::to_string(tag.filter);
    out += '.';
    out += tag.company_prefix;
    if (epc.scheme != Scheme::giai96) {
        out += '.';
        out += tag.reference;
    }
    out += '.';
    out += to_decimal(*epc.serial_number);
    return out;
}

Epc parse_epc_number(std::string_view text, unsigned declared_bits)
{
    return Epc::raw(parse_number(text), declared_bits);
}

} // namespace epcaddr
