#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epcaddr/epc.hpp"
#include "epcaddr/ipv6.hpp"

namespace epcaddr {

/// One registry entry. Pattern forms: "*", "<scheme>", "<scheme>:<company prefix>".
struct OnsRecord {
    std::string pattern;
    Ipv6Address ons_ip;

    bool operator==(const OnsRecord&) const = default;
};

/// 2 = scheme and company, 1 = scheme only, 0 = wildcard. Throws MalformedEntry
/// for anything else.
int pattern_specificity(std::string_view pattern);

bool pattern_matches(std::string_view pattern, const Epc& epc);

/// Immutable after construction; records are kept most-specific-first.
class OnsRegistry {
public:
    OnsRegistry() = default;
    /// Validates patterns, rejects duplicates, sorts most-specific-first.
    explicit OnsRegistry(std::vector<OnsRecord> records);

    const std::vector<OnsRecord>& records() const noexcept { return m_records; }
    std::size_t size() const noexcept { return m_records.size(); }
    bool empty() const noexcept { return m_records.empty(); }

    /// ONS address of the most specific matching record; throws NoMatch.
    Ipv6Address resolve(const Epc& epc) const;
    const OnsRecord* find(const Epc& epc) const noexcept;

private:
    std::vector<OnsRecord> m_records;
};

/// Parses a JSON array of {"pattern": ..., "ons_ip": ...} objects.
OnsRegistry parse_registry(std::string_view json_text);
OnsRegistry load_registry(const std::filesystem::path& file);

inline Ipv6Address resolve(const OnsRegistry& registry, const Epc& epc)
{
    return registry.resolve(epc);
}

} // namespace epcaddr
