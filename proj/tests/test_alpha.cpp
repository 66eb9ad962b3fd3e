#include <ternary/alpha.hpp>
#include <ternary/theory.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace ternary;

namespace {

std::string digits_of(const AlphaExpansion& e) {
    std::string s;
    for (std::uint8_t d : e.digits) {
        s.push_back(static_cast<char>('0' + d));
    }
    return s;
}

} // namespace

TEST(Alpha, ShortExpansions) {
    const AlphaExpansion e7 = expand(7);
    EXPECT_TRUE(e7.certified);
    EXPECT_EQ(digits_of(e7), "1220002");
    EXPECT_EQ(e7.prefix_value(7), 1379);
    EXPECT_EQ(expand(3).prefix_value(3), 17);
    EXPECT_EQ(digits_of(expand(9)), "122000221");
}

TEST(Alpha, ExactOracleUpToTen) {
    const AlphaExpansion e = expand(10);
    for (std::size_t d = 1; d <= 10; ++d) {
        EXPECT_TRUE(verify_prefix(e, d)) << d;
        EXPECT_TRUE(verify_prefix(d)) << d;
    }
}

TEST(Alpha, OracleRejectsWrongPrefix) {
    AlphaExpansion e = expand(6);
    e.digits[5] = static_cast<std::uint8_t>((e.digits[5] + 1) % 3);
    EXPECT_FALSE(verify_prefix(e, 6));
    EXPECT_THROW(verify_prefix(expand(13), 13), domain_error);
}

TEST(Alpha, AgreesWithLongDouble) {
    long double x = std::log(2.0L) / std::log(3.0L);
    std::string expected;
    for (int j = 0; j < 25; ++j) {
        x *= 3;
        const int d = static_cast<int>(x);
        expected.push_back(static_cast<char>('0' + d));
        x -= d;
    }
    EXPECT_EQ(digits_of(expand(25)), expected);
}

TEST(Alpha, StableUnderGuardDoubling) {
    for (std::size_t count : {1u, 2u, 50u, 1000u, 20000u}) {
        const AlphaExpansion a = expand(count, 16);
        const AlphaExpansion b = expand(count, 32);
        const AlphaExpansion c = expand(count, 64);
        ASSERT_TRUE(a.certified && b.certified && c.certified) << count;
        EXPECT_EQ(a.digits, b.digits) << count;
        EXPECT_EQ(a.digits, c.digits) << count;
    }
    const AlphaExpansion longer = expand(20100);
    const AlphaExpansion shorter = expand(20000);
    EXPECT_TRUE(std::equal(shorter.digits.begin(), shorter.digits.end(), longer.digits.begin()));
}

TEST(Alpha, RejectsBadArguments) {
    EXPECT_THROW(expand(0), domain_error);
    EXPECT_THROW(expand(10, 4), domain_error);
}

TEST(Alpha, Cancellable) {
    std::stop_source source;
    source.request_stop();
    EXPECT_THROW(expand(100'000, kDefaultGuard, source.get_token()), cancelled);
}

TEST(Alpha, DigitStatisticsHandParse) {
    const AlphaExpansion e = expand(6);
    const std::vector<std::uint32_t> ks{2};
    const AlphaDigitStatistics s = digit_statistics(e, ks);
    EXPECT_EQ(s.blocks[0].to_map(), (std::map<std::string, std::uint64_t>{{"12", 1}, {"20", 1}, {"00", 1}}));
    EXPECT_EQ(s.digits.counts, (std::array<std::uint64_t, 3>{3, 1, 2}));
}

TEST(Alpha, DigitStatisticsTotals) {
    const AlphaExpansion e = expand(1001);
    const std::vector<std::uint32_t> ks{1, 2, 3, 4};
    const AlphaDigitStatistics s = digit_statistics(e, ks);
    EXPECT_EQ(s.digits.total(), 1001u);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        EXPECT_EQ(s.blocks[i].blocks_total(), 1001u / ks[i]);
    }
    // Blocks start at d_1; the first 3-block is 122.
    EXPECT_GE(s.blocks[2].count("122"), 1u);
}

TEST(Alpha, UncertifiedInputRejected) {
    AlphaExpansion e = expand(20);
    e.certified = false;
    const std::vector<std::uint32_t> ks{2};
    EXPECT_THROW(digit_statistics(e, ks), domain_error);
    EXPECT_THROW(AlphaFixedPoint::from_expansion(e, 16), domain_error);
}

TEST(Alpha, FileRoundTrip) {
    const AlphaExpansion e = expand(500);
    std::stringstream ss;
    write_expansion(ss, e);
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "ALPHA3 v1 D=500 certified=true");
    const AlphaExpansion back = read_expansion(ss);
    EXPECT_EQ(back.digits, e.digits);
    EXPECT_EQ(back.certified, e.certified);
    std::stringstream bad("ALPHA3 v1 D=3 certified=true\n12\n");
    EXPECT_THROW(read_expansion(bad), domain_error);
    std::stringstream junk("ALPHA2 D=3\n122\n");
    EXPECT_THROW(read_expansion(junk), domain_error);
}

// A fixed point built from the digits reproduces the length and leading-digit
// formulas of the default oracle.
TEST(Alpha, ConsistentWithTheory) {
    const AlphaExpansion e = expand(120);
    const AlphaFixedPoint a = AlphaFixedPoint::from_expansion(e, 160);
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
        // floor(n alpha) from the truncated value; the error n * 2^-159 is far
        // below the distance of n alpha to the nearest integer at this size.
        const mpz_class scaled = a.value() * static_cast<unsigned long>(n);
        const mpz_class fl = scaled >> 160;
        const mpz_class prev = (a.value() * static_cast<unsigned long>(n - 1)) >> 160;
        ASSERT_EQ(fl.get_ui() + 1, length_formula(n)) << n;
        ASSERT_EQ(prev < fl ? 1 : 2, predicted_leading_digit(n)) << n;
    }
}
