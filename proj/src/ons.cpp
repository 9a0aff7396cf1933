#include "epcaddr/ons.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "epcaddr/error.hpp"

namespace epcaddr {

namespace {

struct PatternParts {
    std::optional<Scheme> scheme;
    std::string_view company;
};

PatternParts split_pattern(std::string_view pattern)
{
    if (pattern == "*")
        return {};
    const auto colon = pattern.find(':');
    const auto name = pattern.substr(0, colon);
    const auto scheme = scheme_from_name(name);
    if (!scheme)
        throw Error(ErrorCode::MalformedEntry, "unknown scheme in pattern '" + std::string(pattern) + "'");
    if (colon == std::string_view::npos)
        return {scheme, {}};
    const auto company = pattern.substr(colon + 1);
    if (company.empty() || !std::all_of(company.begin(), company.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw Error(ErrorCode::MalformedEntry, "company prefix in pattern must be decimal: '" + std::string(pattern) + "'");
    return {scheme, company};
}

} // namespace

int pattern_specificity(std::string_view pattern)
{
    const auto parts = split_pattern(pattern);
    if (!parts.scheme)
        return 0;
    return parts.company.empty() ? 1 : 2;
}

bool pattern_matches(std::string_view pattern, const Epc& epc)
{
    const auto parts = split_pattern(pattern);
    if (!parts.scheme)
        return true;
    if (*parts.scheme != epc.scheme)
        return false;
    if (parts.company.empty())
        return true;
    return epc.tag && epc.tag->company_prefix == parts.company;
}

OnsRegistry::OnsRegistry(std::vector<OnsRecord> records)
    : m_records(std::move(records))
{
    std::set<std::string> seen;
    for (const auto& r : m_records) {
        pattern_specificity(r.pattern);
        if (!seen.insert(r.pattern).second)
            throw Error(ErrorCode::DuplicatePattern, r.pattern);
    }
    std::stable_sort(m_records.begin(), m_records.end(), [](const OnsRecord& a, const OnsRecord& b) {
        const int sa = pattern_specificity(a.pattern);
        const int sb = pattern_specificity(b.pattern);
        return sa != sb ? sa > sb : a.pattern < b.pattern;
    });
}

const OnsRecord* OnsRegistry::find(const Epc& epc) const noexcept
{
    for (const auto& r : m_records) {
        if (pattern_matches(r.pattern, epc))
            return &r;
    }
    return nullptr;
}

Ipv6Address OnsRegistry::resolve(const Epc& epc) const
{
    if (const auto* r = find(epc))
        return r->ons_ip;
    throw Error(ErrorCode::NoMatch, epc.display());
}

OnsRegistry parse_registry(std::string_view json_text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedEntry, e.what());
    }
    if (!doc.is_array())
        throw Error(ErrorCode::MalformedEntry, "registry must be a JSON array");

    std::vector<OnsRecord> records;
    records.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& entry = doc[i];
        const auto where = "entry " + std::to_string(i);
        if (!entry.is_object() || entry.size() != 2 || !entry.contains("pattern") || !entry.contains("ons_ip"))
            throw Error(ErrorCode::MalformedEntry, where + ": expected exactly {pattern, ons_ip}");
        if (!entry["pattern"].is_string() || !entry["ons_ip"].is_string())
            throw Error(ErrorCode::MalformedEntry, where + ": pattern and ons_ip must be strings");

        OnsRecord record;
        record.pattern = entry["pattern"].get<std::string>();
        try {
            record.ons_ip = parse_ipv6(entry["ons_ip"].get<std::string>());
        } catch (const Error& e) {
            throw Error(ErrorCode::InvalidAddress, where + ": " + e.what());
        }
        records.push_back(std::move(record));
    }
    return OnsRegistry(std::move(records));
}

OnsRegistry load_registry(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw Error(ErrorCode::Unreadable, file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw Error(ErrorCode::Unreadable, file.string());
    return parse_registry(buf.str());
}

} // namespace epcaddr
