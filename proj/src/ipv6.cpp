#include "epcaddr/ipv6.hpp"

#include <vector>

#include "epcaddr/error.hpp"

namespace epcaddr {

namespace {

std::vector<std::uint16_t> parse_groups(std::string_view part, std::string_view whole)
{
    std::vector<std::uint16_t> groups;
    if (part.empty())
        return groups;
    std::size_t start = 0;
    while (true) {
        const auto end = std::min(part.find(':', start), part.size());
        const auto group = part.substr(start, end - start);
        if (group.empty())
            throw Error(ErrorCode::MalformedAddress, std::string(whole));
        unsigned v = 0;
        for (char c : group) {
            unsigned d;
            if (c >= '0' && c <= '9')
                d = static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f')
                d = static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                d = static_cast<unsigned>(c - 'A' + 10);
            else
                throw Error(ErrorCode::MalformedAddress, std::string(whole));
            v = v * 16 + d;
        }
        if (group.size() > 4)
            throw Error(ErrorCode::GroupOverflow, std::string(whole));
        groups.push_back(static_cast<std::uint16_t>(v));
        if (end == part.size())
            return groups;
        start = end + 1;
    }
}

} // namespace

std::array<std::uint16_t, 8> Ipv6Address::groups() const noexcept
{
    std::array<std::uint16_t, 8> g{};
    for (unsigned i = 0; i < 8; ++i)
        g[i] = static_cast<std::uint16_t>(m_value >> (112 - 16 * i));
    return g;
}

std::string format_canonical(Ipv6Address addr)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    const auto g = addr.groups();

    // Longest run of zero groups; only runs of two or more are elided.
    int best_start = -1;
    int best_len = 1;
    for (int i = 0; i < 8;) {
        if (g[i] != 0) {
            ++i;
            continue;
        }
        int j = i;
        while (j < 8 && g[j] == 0)
            ++j;
        if (j - i > best_len) {
            best_start = i;
            best_len = j - i;
        }
        i = j;
    }

    std::string out;
    out.reserve(39);
    for (int i = 0; i < 8; ++i) {
        if (i == best_start) {
            out += "::";
            i += best_len - 1;
            continue;
        }
        if (!out.empty() && out.back() != ':')
            out += ':';
        bool leading = true;
        for (int shift = 12; shift >= 0; shift -= 4) {
            const unsigned nibble = (g[i] >> shift) & 0xf;
            if (leading && nibble == 0 && shift != 0)
                continue;
            leading = false;
            out += kDigits[nibble];
        }
    }
    return out;
}

Ipv6Address parse_ipv6(std::string_view text)
{
    if (text.empty())
        throw Error(ErrorCode::MalformedAddress, "empty");

    const auto elision = text.find("::");
    std::vector<std::uint16_t> head;
    std::vector<std::uint16_t> tail;
    if (elision == std::string_view::npos) {
        head = parse_groups(text, text);
        if (head.size() != 8)
            throw Error(ErrorCode::MalformedAddress, std::string(text));
    } else {
        if (text.find("::", elision + 1) != std::string_view::npos)
            throw Error(ErrorCode::MultipleElision, std::string(text));
        head = parse_groups(text.substr(0, elision), text);
        tail = parse_groups(text.substr(elision + 2), text);
        if (head.size() + tail.size() > 7)
            throw Error(ErrorCode::MalformedAddress, std::string(text));
    }

    uint128 v = 0;
    for (auto g : head)
        v = (v << 16) | g;
    v <<= 16 * (8 - head.size() - tail.size());
    for (auto g : tail)
        v = (v << 16) | g;
    return Ipv6Address(v);
}

unsigned common_prefix_length(Ipv6Address a, Ipv6Address b) noexcept
{
    const uint128 diff = a.value() ^ b.value();
    if (diff == 0)
        return 128;
    return 128 - bit_length(diff);
}

} // namespace epcaddr
