#include <gtest/gtest.h>

#include "epcaddr/error.hpp"
#include "epcaddr/numeric.hpp"

namespace epcaddr {
namespace {

TEST(BitLength, Examples)
{
    // 2^53 = 9007199254740992 <= v < 2^54 = 18014398509481984
    EXPECT_EQ(bit_length(EpcValue("9611683854154598")), 54u);
    EXPECT_EQ(bit_length(EpcValue(1)), 1u);
    EXPECT_EQ(bit_length(EpcValue(0)), 1u);
    EXPECT_EQ(bit_length(std::uint64_t{0}), 1u);
    EXPECT_EQ(bit_length(~uint128{0}), 128u);
    EXPECT_EQ(bit_length(uint128{1} << 64), 65u);
}

TEST(BitLength, BracketsEveryPowerOfTwo)
{
    for (unsigned k = 0; k < 256; ++k) {
        const EpcValue lo = EpcValue(1) << k;
        const EpcValue hi = k == 255 ? ~EpcValue(0) : (EpcValue(1) << (k + 1)) - 1;
        ASSERT_EQ(bit_length(lo), k + 1);
        ASSERT_EQ(bit_length(hi), k + 1);
        if (k < 128) {
            ASSERT_EQ(bit_length(uint128{1} << k), k + 1);
        }
    }
}

TEST(ParseNumber, DecimalAndHex)
{
    EXPECT_EQ(parse_number("9611683854154598"), parse_number("0x2225C689D1FB66"));
    EXPECT_EQ(parse_number("0x0"), EpcValue(0));
    EXPECT_EQ(to_hex(parse_number("37375918425780")), "0x21fe425746b4");
    EXPECT_EQ(to_decimal(parse_number("0xff")), "255");
}

TEST(ParseNumber, Rejects)
{
    for (const char* bad : {"", "0x", "12a", "-1", "0xg", " 1"}) {
        try {
            parse_number(bad);
            FAIL() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::MalformedNumber) << bad;
        }
    }
    // 2^256 does not fit
    EXPECT_THROW(parse_number("0x1" + std::string(64, '0')), Error);
    EXPECT_NO_THROW(parse_number("0x" + std::string(64, 'f')));
}

TEST(Words, Fold)
{
    const EpcValue v = (EpcValue(0xAAAA) << 192) | (EpcValue(0x5555) << 64) | 7;
    EXPECT_EQ(word64(v, 0), 7u);
    EXPECT_EQ(word64(v, 1), 0x5555u);
    EXPECT_EQ(word64(v, 2), 0u);
    EXPECT_EQ(word64(v, 3), 0xAAAAu);
    EXPECT_EQ(word64(v, 4), 0u);
    EXPECT_EQ(low128(v), make_uint128(0x5555, 7));
}

} // namespace
} // namespace epcaddr
