#include <gtest/gtest.h>

#include "epcaddr/error.hpp"
#include "epcaddr/ons.hpp"

namespace epcaddr {
namespace {

const std::string kDataDir = EPCADDR_TEST_DATA_DIR;

template <typename Fn>
ErrorCode code_of(Fn&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidSpec;
}

const Epc kSgtin = parse_tag_uri("urn:epc:tag:sgtin-96:3.0614141.812345.6789");
const Epc kOtherSgtin = parse_tag_uri("urn:epc:tag:sgtin-96:3.0614142.812345.6789");
const Epc kRaw = Epc::raw(EpcValue(42));

TEST(Registry, LoadsWildcard)
{
    const auto reg = load_registry(kDataDir + "/registry.json");
    ASSERT_EQ(reg.size(), 1u);
    EXPECT_EQ(reg.records()[0].pattern, "*");
    EXPECT_EQ(format_canonical(reg.records()[0].ons_ip), "3ffe:ffff:4004:1952:0:7251:bc9b:a73f");
    EXPECT_EQ(resolve(reg, kRaw), reg.records()[0].ons_ip);
}

TEST(Registry, EmptyRegistryNeverMatches)
{
    const auto reg = load_registry(kDataDir + "/registry_empty.json");
    EXPECT_TRUE(reg.empty());
    EXPECT_EQ(code_of([&] { reg.resolve(kSgtin); }), ErrorCode::NoMatch);
}

TEST(Registry, Errors)
{
    EXPECT_EQ(code_of([] { load_registry(kDataDir + "/registry_duplicate.json"); }), ErrorCode::DuplicatePattern);
    EXPECT_EQ(code_of([] { load_registry(kDataDir + "/does-not-exist.json"); }), ErrorCode::Unreadable);
    EXPECT_EQ(code_of([] { parse_registry("{"); }), ErrorCode::MalformedEntry);
    EXPECT_EQ(code_of([] { parse_registry("{}"); }), ErrorCode::MalformedEntry);
    EXPECT_EQ(code_of([] { parse_registry(R"([{"pattern":"*"}])"); }), ErrorCode::MalformedEntry);
    EXPECT_EQ(code_of([] { parse_registry(R"([{"pattern":"*","ons_ip":"::","x":1}])"); }), ErrorCode::MalformedEntry);
    EXPECT_EQ(code_of([] { parse_registry(R"([{"pattern":5,"ons_ip":"::"}])"); }), ErrorCode::MalformedEntry);
    EXPECT_EQ(code_of([] { parse_registry(R"([{"pattern":"bogus-96","ons_ip":"::"}])"); }), ErrorCode::MalformedEntry);
    EXPECT_EQ(code_of([] { parse_registry(R"([{"pattern":"sgtin-96:06x","ons_ip":"::"}])"); }),
              ErrorCode::MalformedEntry);
    EXPECT_EQ(code_of([] { parse_registry(R"([{"pattern":"*","ons_ip":"1::2::3"}])"); }), ErrorCode::InvalidAddress);
    EXPECT_EQ(code_of([] { parse_registry(R"([{"pattern":"*","ons_ip":"::"},{"pattern":"*","ons_ip":"::1"}])"); }),
              ErrorCode::DuplicatePattern);
}

TEST(Registry, SpecificityOrdering)
{
    const auto reg = load_registry(kDataDir + "/registry_tiered.json");
    ASSERT_EQ(reg.size(), 3u);
    EXPECT_EQ(reg.records()[0].pattern, "sgtin-96:0614141");
    EXPECT_EQ(reg.records()[1].pattern, "sgtin-96");
    EXPECT_EQ(reg.records()[2].pattern, "*");

    EXPECT_EQ(reg.resolve(kSgtin), parse_ipv6("2001:db8:614:141::53"));
    EXPECT_EQ(reg.resolve(kOtherSgtin), parse_ipv6("2001:db8:1::1"));
    EXPECT_EQ(reg.resolve(kRaw), parse_ipv6("2001:db8:ffff::1"));
}

TEST(Registry, NoWildcardNoMatch)
{
    const OnsRegistry reg({{"sgtin-96:0614141", parse_ipv6("2001:db8::1")}});
    EXPECT_EQ(code_of([&] { reg.resolve(kRaw); }), ErrorCode::NoMatch);
    EXPECT_EQ(code_of([&] { reg.resolve(kOtherSgtin); }), ErrorCode::NoMatch);
}

TEST(Registry, LessSpecificRecordsNeverOverride)
{
    const auto a = parse_ipv6("2001:db8::a");
    OnsRegistry base({{"sgtin-96:0614141", a}});
    const OnsRegistry more({{"sgtin-96:0614141", a}, {"sgtin-96", parse_ipv6("::b")}, {"*", parse_ipv6("::c")}});
    EXPECT_EQ(base.resolve(kSgtin), a);
    EXPECT_EQ(more.resolve(kSgtin), a);
    // input order does not matter
    const OnsRegistry shuffled({{"*", parse_ipv6("::c")}, {"sgtin-96", parse_ipv6("::b")}, {"sgtin-96:0614141", a}});
    EXPECT_EQ(shuffled.records(), more.records());
}

TEST(Registry, NormalisesAddressText)
{
    const auto reg = parse_registry(R"([{"pattern":"raw","ons_ip":"2001:0DB8:0000:0000:0000:0000:0000:0001"}])");
    EXPECT_EQ(format_canonical(reg.resolve(kRaw)), "2001:db8::1");
}

} // namespace
} // namespace epcaddr
