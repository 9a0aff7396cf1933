#include "epcaddr/numeric.hpp"

#include "epcaddr/error.hpp"

namespace epcaddr {

namespace {

const EpcValue kMaxValue = ~EpcValue(0);

int digit_value(char c, unsigned base)
{
    int d = -1;
    if (c >= '0' && c <= '9')
        d = c - '0';
    else if (c >= 'a' && c <= 'f')
        d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
        d = c - 'A' + 10;
    return d >= 0 && static_cast<unsigned>(d) < base ? d : -1;
}

} // namespace

unsigned bit_length(const EpcValue& v)
{
    if (v == 0)
        return 1;
    return static_cast<unsigned>(boost::multiprecision::msb(v)) + 1;
}

std::uint64_t low64(const EpcValue& v)
{
    return static_cast<std::uint64_t>(v & EpcValue(~std::uint64_t{0}));
}

uint128 low128(const EpcValue& v)
{
    return make_uint128(low64(v >> 64), low64(v));
}

EpcValue to_epc_value(uint128 v)
{
    return (EpcValue(high64(v)) << 64) | EpcValue(low64(v));
}

std::uint64_t word64(const EpcValue& v, unsigned index)
{
    if (index >= kMaxEpcBits / 64)
        return 0;
    return low64(v >> (64 * index));
}

EpcValue parse_number(std::string_view text)
{
    unsigned base = 10;
    std::string_view digits = text;
    if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
        base = 16;
        digits.remove_prefix(2);
    }
    if (digits.empty())
        throw Error(ErrorCode::MalformedNumber, std::string(text));

    EpcValue value = 0;
    const EpcValue limit = kMaxValue / base;
    for (char c : digits) {
        const int d = digit_value(c, base);
        if (d < 0)
            throw Error(ErrorCode::MalformedNumber, std::string(text));
        if (value > limit || value * base > kMaxValue - static_cast<unsigned>(d))
            throw Error(ErrorCode::MalformedNumber, "exceeds 256 bits: " + std::string(text));
        value = value * base + static_cast<unsigned>(d);
    }
    return value;
}

std::string to_decimal(const EpcValue& v)
{
    return v.str();
}

std::string to_hex(const EpcValue& v)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    if (v == 0)
        return "0x0";
    std::string out;
    EpcValue rest = v;
    while (rest != 0) {
        out.insert(out.begin(), kDigits[low64(rest) & 0xf]);
        rest >>= 4;
    }
    return "0x" + out;
}

} // namespace epcaddr
