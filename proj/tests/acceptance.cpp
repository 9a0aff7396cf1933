// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "epcaddr/addressing.hpp"
#include "epcaddr/harness.hpp"
#include "oracles.hpp"

using namespace epcaddr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass;
    std::string detail;
};

int g_failures = 0;

void criterion(const char* id, const char* title, const std::function<Outcome()>& body)
{
    Outcome o{false, "threw"};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s %s -- %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
    std::fflush(stdout);
    g_failures += !o.pass;
}

const Ipv6Address kDemoOns = parse_ipv6("3ffe:ffff:4004:1952:0000:7251:bc9b:a73f");

Outcome reference_vectors()
{
    const auto small = Epc::raw(parse_number("9611683854154598"));
    const EpcValue serial = parse_number("37375918425780");
    const auto big = Epc::raw((EpcValue(1) << 95) | serial, 96, serial);

    auto timed = [](const Epc& e) {
        const auto t0 = Clock::now();
        auto text = format_canonical(derive_hybrid(e, kDemoOns));
        return std::pair{text, seconds_since(t0) * 1e3};
    };
    const auto [a, ms_a] = timed(small);
    const auto [b, ms_b] = timed(big);
    const bool ok = a == "3ffe:ffff:4004:1952:22:25c6:89d1:fb66" && b == "3ffe:ffff:4004:1952:0:61fe:4257:46b4" &&
                    ms_a < 1.0 && ms_b < 1.0;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s (%.4f ms), %s (%.4f ms)", a.c_str(), ms_a, b.c_str(), ms_b);
    return {ok, buf};
}

Outcome plan_arithmetic()
{
    const auto p40 = plan(Epc::raw(EpcValue(1) << 39));
    const auto p64 = plan(Epc::raw(EpcValue(1) << 63));
    const EpcValue s90 = (EpcValue(1) << 89) | 1;
    const auto p90 = plan(Epc::raw(s90, 90, s90));
    const bool ok = p40.prefix_bits == 88 && p64.prefix_bits == 64 && p90.prefix_bits == 38 &&
                    p90.source == PayloadSource::serial_number;
    return {ok, "prefix bits " + std::to_string(p40.prefix_bits) + "/" + std::to_string(p64.prefix_bits) + "/" +
                    std::to_string(p90.prefix_bits)};
}

Outcome suffix_identity()
{
    std::mt19937_64 rng(20240601);
    const auto t0 = Clock::now();
    std::size_t failures = 0;
    for (int i = 0; i < 100000; ++i) {
        const unsigned width = 1 + static_cast<unsigned>(rng() % 64);
        const std::uint64_t v = rng() >> (64 - width);
        const Ipv6Address ons(rng(), rng());
        const Epc epc = Epc::raw(EpcValue(v), 64);
        const unsigned n = plan(epc).input_bits;
        const uint128 r = derive_hybrid(epc, ons).value();
        const uint128 mask = n == 128 ? ~uint128{0} : (uint128{1} << n) - 1;
        failures += (r & mask) != uint128{v} || (r >> n) != (ons.value() >> n);
    }
    const double s = seconds_since(t0);
    return {failures == 0 && s < 5.0, std::to_string(failures) + " failures in " + std::to_string(s) + " s"};
}

Outcome fixed_width_injectivity()
{
    const auto t0 = Clock::now();
    const auto serials = generate_population({Scheme::raw, 100000, 48, 48u, true});
    std::vector<Epc> pop;
    pop.reserve(serials.size());
    for (const auto& s : serials) {
        const EpcValue serial = *s.value;
        pop.push_back(Epc::raw((EpcValue(1) << 95) | serial, 96, serial));
    }
    const auto report = evaluate(AddressingMethodId::hybrid_ons, pop, OnsRegistry({{"*", kDemoOns}}));
    const double s = seconds_since(t0);
    const bool ok = report.distinct_addresses == 100000 && report.collision_pair_count == 0 && s < 5.0;
    return {ok, std::to_string(report.distinct_addresses) + " distinct, " +
                    std::to_string(report.collision_pair_count) + " collisions in " + std::to_string(s) + " s"};
}

Outcome cross_width_oracle()
{
    const auto t0 = Clock::now();
    const auto ons = parse_ipv6("3ffe:ffff:4004:1952:ffff:ffff:ffff:ffff");
    std::vector<Epc> pop;
    for (std::uint64_t v = 0; v < (1u << 12); ++v)
        pop.push_back(Epc::raw(EpcValue(v)));
    const auto report = evaluate(AddressingMethodId::hybrid_ons, pop, OnsRegistry({{"*", ons}}));

    // brute force: derive independently on bit strings, compare every pair
    std::vector<std::string> bits(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i)
        bits[i] = test::hybrid_oracle_bits(ons, test::minimal_bits(i));
    std::vector<CollisionPair> brute;
    std::size_t closed_form_mismatch = 0;
    for (std::size_t u = 0; u < pop.size(); ++u) {
        for (std::size_t v = u + 1; v < pop.size(); ++v) {
            const bool equal = bits[u] == bits[v];
            if (equal)
                brute.push_back({u, v, report.addresses[u]});
            const unsigned n = bit_length(std::uint64_t{u});
            const unsigned m = bit_length(std::uint64_t{v});
            bool predicted = false;
            if (n < m) {
                const std::uint64_t high = low64(ons.value() >> n) & ((std::uint64_t{1} << (m - n)) - 1);
                predicted = v == (high << n) + u;
            }
            closed_form_mismatch += predicted != equal;
        }
    }
    const double s = seconds_since(t0);
    const bool ok = report.collision_pairs == brute && closed_form_mismatch == 0 && s < 30.0;
    return {ok, std::to_string(report.collision_pairs.size()) + " harness pairs vs " + std::to_string(brute.size()) +
                    " brute-force pairs, " + std::to_string(closed_form_mismatch) + " closed-form mismatches, " +
                    std::to_string(s) + " s"};
}

Outcome sgtin_codec()
{
    std::mt19937_64 rng(6);
    std::size_t failures = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto f = test::random_sgtin_fields(rng);
        const auto v = encode_sgtin96(f);
        failures += decode_sgtin96(v) != f || to_hex(v) != test::pack_sgtin96_oracle(f);
    }
    const auto golden = encode_sgtin96({3, 5, 614141, 812345, 6789});
    const bool golden_ok = golden == parse_number(test::kSgtin96Golden);
    return {failures == 0 && golden_ok,
            std::to_string(failures) + " round-trip failures; golden " + to_hex(golden) + (golden_ok ? " ok" : " MISMATCH")};
}

Outcome baseline_identities()
{
    std::mt19937_64 rng(7);
    const Ipv6Address prefix(rng(), rng());
    std::size_t failures = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto epc = Epc::raw(EpcValue(rng() >> (rng() % 64)), 64);
        const auto d = derive_direct64(epc, prefix);
        failures += derive_xor_pad(epc, prefix, 0) != d || derive_or_pad(epc, prefix, 0) != d;
    }
    const auto oracle = parse_number(test::bits_to_hex(std::string(51, '1') + test::minimal_bits(6789)));
    const auto one_pad = derive_one_pad(Epc::raw(EpcValue(6789), 96, EpcValue(6789)), prefix).low64();
    const bool pad_ok = one_pad == 0xFFFFFFFFFFFFFA85ULL && EpcValue(one_pad) == oracle;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu identity failures; one_pad(6789) iid = 0x%llx", failures,
                  static_cast<unsigned long long>(one_pad));
    return {failures == 0 && pad_ok, buf};
}

Outcome ipv6_round_trip()
{
    std::mt19937_64 rng(8);
    std::size_t failures = 0;
    for (int i = 0; i < 100000; ++i) {
        std::uint16_t groups[8];
        uint128 v = 0;
        const bool sparse = i % 2 == 1;
        for (auto& g : groups) {
            g = static_cast<std::uint16_t>(rng());
            if (sparse && rng() % 2 == 0)
                g = 0;
            v = (v << 16) | g;
        }
        const Ipv6Address a(v);
        const auto text = format_canonical(a);
        failures += parse_ipv6(text) != a || !test::canonical_violation(text, groups).empty();
    }
    return {failures == 0, std::to_string(failures) + " failures over 100000 values"};
}

Outcome bench_sanity()
{
    const auto pop = generate_population({Scheme::raw, 100000, 9, 64u, false});
    const OnsRegistry reg({{"*", kDemoOns}});
    // warm-up
    evaluate(AddressingMethodId::direct64, pop, reg);
    evaluate(AddressingMethodId::hybrid_ons, pop, reg);
    const auto direct = evaluate(AddressingMethodId::direct64, pop, reg);
    const auto hybrid = evaluate(AddressingMethodId::hybrid_ons, pop, reg);
    const double ratio = hybrid.timing.mean_ns / direct.timing.mean_ns;
    char buf[200];
    std::snprintf(buf, sizeof buf, "hybrid_ons mean %.1f ns (p99 %llu), direct64 mean %.1f ns (p99 %llu), ratio %.2f",
                  hybrid.timing.mean_ns, static_cast<unsigned long long>(hybrid.timing.p99_ns), direct.timing.mean_ns,
                  static_cast<unsigned long long>(direct.timing.p99_ns), ratio);
    return {ratio <= 2.0, buf};
}

} // namespace

int main()
{
    criterion("AC1", "reference derivation vectors", reference_vectors);
    criterion("AC2", "plan prefix arithmetic 40/64/90 -> 88/64/38", plan_arithmetic);
    criterion("AC3", "suffix identity, 1e5 random pairs", suffix_identity);
    criterion("AC4", "fixed-width injectivity, 1e5 48-bit serials", fixed_width_injectivity);
    criterion("AC5", "cross-width collision oracle, all values < 2^12", cross_width_oracle);
    criterion("AC6", "SGTIN-96 codec round trip + golden vector", sgtin_codec);
    criterion("AC7", "baseline identities + one-pad vector", baseline_identities);
    criterion("AC8", "IPv6 canonical text round trip, 1e5 values", ipv6_round_trip);
    criterion("AC9", "bench sanity: hybrid_ons mean within 2x of direct64", bench_sanity);
    std::printf("%d criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
