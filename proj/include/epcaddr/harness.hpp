#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "epcaddr/addressing.hpp"
#include "epcaddr/epc.hpp"
#include "epcaddr/error.hpp"
#include "epcaddr/ons.hpp"

namespace epcaddr {

/// Synthetic EPC population. Serials are distinct and drawn uniformly below
/// 2^serial_width_bits (or from [2^(w-1), 2^w) when fixed_width is set).
/// Raw EPCs use the drawn number as both value and serial.
struct PopulationSpec {
    Scheme scheme = Scheme::raw;
    std::size_t count = 1;
    std::uint64_t seed = 0;
    std::optional<unsigned> serial_width_bits;
    bool fixed_width = false;
};

/// Deterministic for a given spec on every platform.
std::vector<Epc> generate_population(const PopulationSpec& spec);

/// Indices into the evaluated population, first < second.
struct CollisionPair {
    std::size_t first = 0;
    std::size_t second = 0;
    Ipv6Address address;

    bool operator==(const CollisionPair&) const = default;
};

struct TimingStats {
    std::uint64_t total_ns = 0;
    double mean_ns = 0;
    std::uint64_t p99_ns = 0;
};

struct BenchReport {
    AddressingMethodId method = AddressingMethodId::hybrid_ons;
    std::size_t population_size = 0;
    std::size_t distinct_addresses = 0;
    std::uint64_t collision_pair_count = 0;
    /// Every colliding unordered pair, sorted; may be truncated by max_listed_pairs.
    std::vector<CollisionPair> collision_pairs;
    /// Longest common prefix with the resolved ONS address -> number of EPCs.
    std::map<unsigned, std::size_t> shared_prefix_depth;
    std::vector<Ipv6Address> addresses;
    TimingStats timing;
};

struct EvaluateOptions {
    DeriveOptions derive;
    unsigned threads = 1;
    std::optional<std::size_t> max_listed_pairs;
};

enum class Stage { resolve, derive };

/// A resolve or derive failure for one population member.
class EvaluateError : public Error {
public:
    EvaluateError(const Error& cause, Stage stage, std::size_t index, const std::string& epc);

    Stage stage() const noexcept { return m_stage; }
    std::size_t index() const noexcept { return m_index; }

private:
    Stage m_stage;
    std::size_t m_index;
};

/// Resolves each EPC's ONS address, then derives (timed) one address per EPC.
/// The report, timing aside, does not depend on options.threads.
BenchReport evaluate(AddressingMethodId method, std::span<const Epc> population, const OnsRegistry& registry,
                     const EvaluateOptions& options = {});

/// All unordered pairs of equal addresses, sorted by (first, second).
std::vector<CollisionPair> find_collisions(std::span<const Ipv6Address> addresses,
                                           std::optional<std::size_t> max_pairs = std::nullopt);

nlohmann::ordered_json to_json(const PopulationSpec& spec);
nlohmann::ordered_json to_json(const BenchReport& report, std::span<const Epc> population, bool include_addresses = false);

inline constexpr const char* kCsvHeader = "method,population,distinct,collisions,mean_ns,p99_ns";
std::string to_csv(std::span<const BenchReport> reports);

} // namespace epcaddr
