#include "epcaddr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_set>

namespace epcaddr {

namespace {

/// Bounded draws built directly on mt19937_64, whose output sequence is fixed
/// by the standard. The std distributions are implementation-defined.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : m_rng(seed) {}

    std::uint64_t below(std::uint64_t bound)
    {
        if ((bound & (bound - 1)) == 0)
            return m_rng() & (bound - 1);
        const std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            const std::uint64_t r = m_rng();
            if (r >= threshold)
                return r % bound;
        }
    }

    /// Uniform in [0, 2^bits), bits in 0..128.
    uint128 bits(unsigned bits)
    {
        if (bits == 0)
            return 0;
        if (bits <= 64)
            return m_rng() & mask64(bits);
        const std::uint64_t hi = m_rng() & mask64(bits - 64);
        const std::uint64_t lo = m_rng();
        return make_uint128(hi, lo);
    }

private:
    static std::uint64_t mask64(unsigned bits) { return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1; }

    std::mt19937_64 m_rng;
};

struct Hash128 {
    std::size_t operator()(uint128 v) const noexcept
    {
        return std::hash<std::uint64_t>{}(high64(v) * 0x9e3779b97f4a7c15ULL ^ low64(v));
    }
};

std::vector<uint128> draw_distinct(Draw& draw, unsigned width, bool fixed_width, std::size_t count)
{
    const unsigned free_bits = fixed_width ? width - 1 : width;
    const uint128 base = fixed_width ? uint128{1} << (width - 1) : 0;

    if (free_bits < 64) {
        const std::uint64_t space = std::uint64_t{1} << free_bits;
        if (count > space)
            throw Error(ErrorCode::Unsatisfiable, std::to_string(count) + " distinct serials requested but only " +
                                                      std::to_string(space) + " exist at this width");
        if (space <= 2 * static_cast<std::uint64_t>(count)) {
            // Dense: partial Fisher-Yates over the whole space.
            std::vector<std::uint64_t> all(space);
            std::iota(all.begin(), all.end(), std::uint64_t{0});
            std::vector<uint128> out;
            out.reserve(count);
            for (std::size_t i = 0; i < count; ++i) {
                const auto j = i + draw.below(space - i);
                std::swap(all[i], all[j]);
                out.push_back(base + all[i]);
            }
            return out;
        }
    }

    std::unordered_set<uint128, Hash128> seen;
    seen.reserve(count);
    std::vector<uint128> out;
    out.reserve(count);
    while (out.size() < count) {
        const uint128 v = base + draw.bits(free_bits);
        if (seen.insert(v).second)
            out.push_back(v);
    }
    return out;
}

std::string padded_number(Draw& draw, unsigned digits)
{
    std::string s(digits, '0');
    for (auto& c : s)
        c = static_cast<char>('0' + draw.below(10));
    return s;
}

unsigned default_width(Scheme scheme)
{
    switch (scheme) {
    case Scheme::sgtin96: return kSgtin96SerialBits;
    case Scheme::giai96: return kGiaiPartitions.front().reference_bits;
    case Scheme::sgln96: return kSgln96ExtensionBits;
    default: return 64;
    }
}

unsigned max_width(Scheme scheme)
{
    switch (scheme) {
    case Scheme::sgtin96: return kSgtin96SerialBits;
    case Scheme::giai96: return kGiaiPartitions.back().reference_bits;
    case Scheme::sgln96: return kSgln96ExtensionBits;
    default: return Ipv6Address::kBits;
    }
}

Epc make_tagged(Draw& draw, Scheme scheme, unsigned width, uint128 serial)
{
    // Rows whose serial field can hold `width` bits.
    std::vector<unsigned> rows;
    for (unsigned p = 0; p < 7; ++p) {
        if (scheme != Scheme::giai96 || kGiaiPartitions[p].reference_bits >= width)
            rows.push_back(p);
    }
    const unsigned partition = rows[draw.below(rows.size())];
    const unsigned filter = static_cast<unsigned>(draw.below(8));

    std::string uri = "urn:epc:tag:";
    uri += scheme_name(scheme);
    uri += ':' + std::to_string(filter) + '.';
    uri += padded_number(draw, kSgtinPartitions[partition].company_digits);
    if (scheme == Scheme::sgtin96)
        uri += '.' + padded_number(draw, kSgtinPartitions[partition].reference_digits);
    else if (scheme == Scheme::sgln96)
        uri += '.' + padded_number(draw, kSglnPartitions[partition].reference_digits);
    uri += '.' + to_decimal(to_epc_value(serial));
    return parse_tag_uri(uri);
}

std::uint64_t ns(std::chrono::steady_clock::duration d)
{
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(d).count());
}

std::string epc_text(std::span<const Epc> population, std::size_t i)
{
    return i < population.size() ? population[i].display() : std::string{};
}

} // namespace

std::vector<Epc> generate_population(const PopulationSpec& spec)
{
    if (spec.count == 0)
        throw Error(ErrorCode::InvalidSpec, "count must be at least 1");
    if (spec.scheme == Scheme::usdod96)
        throw Error(ErrorCode::InvalidSpec, "usdod-96 populations are not supported");
    const unsigned width = spec.serial_width_bits.value_or(default_width(spec.scheme));
    if (width < 1 || width > max_width(spec.scheme))
        throw Error(ErrorCode::InvalidSpec, "serial width for " + std::string(scheme_name(spec.scheme)) +
                                                " must be 1.." + std::to_string(max_width(spec.scheme)));

    Draw draw(spec.seed);
    const auto serials = draw_distinct(draw, width, spec.fixed_width, spec.count);

    std::vector<Epc> out;
    out.reserve(spec.count);
    for (const uint128 serial : serials) {
        if (spec.scheme == Scheme::raw) {
            const EpcValue v = to_epc_value(serial);
            out.push_back(Epc::raw(v, width, v));
        } else {
            out.push_back(make_tagged(draw, spec.scheme, width, serial));
        }
    }
    return out;
}

EvaluateError::EvaluateError(const Error& cause, Stage stage, std::size_t index, const std::string& epc)
    : Error(cause.code(), "EPC #" + std::to_string(index) + " (" + epc + "): " + cause.detail())
    , m_stage(stage)
    , m_index(index)
{
}

std::vector<CollisionPair> find_collisions(std::span<const Ipv6Address> addresses, std::optional<std::size_t> max_pairs)
{
    std::vector<std::size_t> order(addresses.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return addresses[a] < addresses[b]; });

    // For every index, where its equal-address group starts and ends in `order`.
    // Groups are ascending by index thanks to the stable sort.
    std::vector<std::size_t> position(addresses.size());
    std::vector<std::size_t> group_end(addresses.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && addresses[order[j]] == addresses[order[i]])
            ++j;
        for (std::size_t k = i; k < j; ++k) {
            position[order[k]] = k;
            group_end[order[k]] = j;
        }
        i = j;
    }

    std::vector<CollisionPair> pairs;
    const std::size_t limit = max_pairs.value_or(SIZE_MAX);
    for (std::size_t first = 0; first < addresses.size(); ++first) {
        for (std::size_t k = position[first] + 1; k < group_end[first]; ++k) {
            if (pairs.size() == limit)
                return pairs;
            pairs.push_back({first, order[k], addresses[first]});
        }
    }
    return pairs;
}

namespace {

std::uint64_t count_collision_pairs(std::vector<Ipv6Address> sorted, std::size_t& distinct)
{
    std::sort(sorted.begin(), sorted.end());
    std::uint64_t pairs = 0;
    distinct = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        const std::uint64_t k = j - i;
        pairs += k * (k - 1) / 2;
        ++distinct;
        i = j;
    }
    return pairs;
}

} // namespace

BenchReport evaluate(AddressingMethodId method, std::span<const Epc> population, const OnsRegistry& registry,
                     const EvaluateOptions& options)
{
    const std::size_t n = population.size();

    std::vector<Ipv6Address> anchors(n);
    for (std::size_t i = 0; i < n; ++i) {
        try {
            anchors[i] = registry.resolve(population[i]);
        } catch (const Error& e) {
            throw EvaluateError(e, Stage::resolve, i, population[i].display());
        }
    }

    BenchReport report;
    report.method = method;
    report.population_size = n;
    report.addresses.resize(n);
    std::vector<std::uint64_t> durations(n);

    struct Failure {
        std::size_t index = SIZE_MAX;
        std::exception_ptr error;
    };

    auto run_chunk = [&](std::size_t begin, std::size_t end, Failure& failure) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const auto addr = derive(method, population[i], anchors[i], options.derive);
                const auto t1 = std::chrono::steady_clock::now();
                report.addresses[i] = addr;
                durations[i] = ns(t1 - t0);
            } catch (...) {
                failure = {i, std::current_exception()};
                return;
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::vector<Failure> failures(threads);
    if (threads == 1) {
        run_chunk(0, n, failures[0]);
    } else {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = std::min(n, t * chunk);
            const std::size_t end = std::min(n, begin + chunk);
            workers.emplace_back([&, begin, end, t] { run_chunk(begin, end, failures[t]); });
        }
    }

    const auto first = std::min_element(failures.begin(), failures.end(),
                                        [](const Failure& a, const Failure& b) { return a.index < b.index; });
    if (first->error) {
        try {
            std::rethrow_exception(first->error);
        } catch (const Error& e) {
            throw EvaluateError(e, Stage::derive, first->index, population[first->index].display());
        }
    }

    report.collision_pair_count = count_collision_pairs(report.addresses, report.distinct_addresses);
    report.collision_pairs = find_collisions(report.addresses, options.max_listed_pairs);

    for (std::size_t i = 0; i < n; ++i)
        ++report.shared_prefix_depth[common_prefix_length(report.addresses[i], anchors[i])];

    if (n > 0) {
        report.timing.total_ns = std::accumulate(durations.begin(), durations.end(), std::uint64_t{0});
        report.timing.mean_ns = static_cast<double>(report.timing.total_ns) / static_cast<double>(n);
        // nearest-rank percentile
        const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(n)));
        std::nth_element(durations.begin(), durations.begin() + (rank - 1), durations.end());
        report.timing.p99_ns = durations[rank - 1];
    }
    return report;
}

nlohmann::ordered_json to_json(const PopulationSpec& spec)
{
    nlohmann::ordered_json j;
    j["scheme"] = std::string(scheme_name(spec.scheme));
    j["count"] = spec.count;
    j["seed"] = spec.seed;
    if (spec.serial_width_bits)
        j["serial_width_bits"] = *spec.serial_width_bits;
    else
        j["serial_width_bits"] = nullptr;
    j["fixed_width"] = spec.fixed_width;
    return j;
}

nlohmann::ordered_json to_json(const BenchReport& report, std::span<const Epc> population, bool include_addresses)
{
    nlohmann::ordered_json j;
    j["method"] = std::string(method_name(report.method));
    j["population_size"] = report.population_size;
    j["distinct_addresses"] = report.distinct_addresses;
    j["collision_pair_count"] = report.collision_pair_count;

    auto pairs = nlohmann::ordered_json::array();
    for (const auto& p : report.collision_pairs) {
        nlohmann::ordered_json e;
        e["first"] = p.first;
        e["first_epc"] = epc_text(population, p.first);
        e["second"] = p.second;
        e["second_epc"] = epc_text(population, p.second);
        e["address"] = format_canonical(p.address);
        pairs.push_back(std::move(e));
    }
    j["collision_pairs"] = std::move(pairs);

    auto depth = nlohmann::ordered_json::array();
    for (const auto& [d, count] : report.shared_prefix_depth)
        depth.push_back({{"depth", d}, {"count", count}});
    j["shared_prefix_depth"] = std::move(depth);

    if (include_addresses) {
        auto addrs = nlohmann::ordered_json::array();
        for (const auto& a : report.addresses)
            addrs.push_back(format_canonical(a));
        j["addresses"] = std::move(addrs);
    }

    j["timing"] = {
        {"total_ns", report.timing.total_ns},
        {"mean_ns", report.timing.mean_ns},
        {"p99_ns", report.timing.p99_ns},
    };
    return j;
}

std::string to_csv(std::span<const BenchReport> reports)
{
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : reports) {
        char mean[32];
        std::snprintf(mean, sizeof mean, "%.1f", r.timing.mean_ns);
        out += std::string(method_name(r.method)) + ',' + std::to_string(r.population_size) + ',' +
               std::to_string(r.distinct_addresses) + ',' + std::to_string(r.collision_pair_count) + ',' + mean + ',' +
               std::to_string(r.timing.p99_ns) + '\n';
    }
    return out;
}

} // namespace epcaddr
