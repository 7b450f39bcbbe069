#include <random>

#include <gtest/gtest.h>

#include "jordan/partitions.hpp"
#include "support/oracles.hpp"

using namespace jordan;

TEST(JordanType, ParsesTableNotation) {
    EXPECT_EQ(parse_jordan_type("1^2, 2"), (JordanType{{1, 2}, {2, 1}}));
    EXPECT_EQ(parse_jordan_type("5"), JordanType::single(5));
    EXPECT_EQ(parse_jordan_type("2,2,2"), JordanType::single(2, 3));
    EXPECT_EQ(parse_jordan_type("  8 ^ 4 ,2^2 "), (JordanType{{2, 2}, {8, 4}}));
    EXPECT_EQ(parse_jordan_type("3, 3^2"), JordanType::single(3, 3));
}

TEST(JordanType, RejectsMalformedTerms) {
    for (const char* bad : {"", "  ", "0", "2^0", "1,", ",1", "a", "2^", "^2", "2^3^4", "-1", "1;2", "2^^2"}) {
        EXPECT_THROW(parse_jordan_type(bad), ParseError) << '"' << bad << '"';
    }
}

TEST(JordanType, RendersCanonically) {
    EXPECT_EQ((JordanType{{8, 4}, {2, 2}}).str(), "2^2, 8^4");
    EXPECT_EQ((JordanType{{1, 1}, {3, 2}}).str(), "1, 3^2");
    EXPECT_EQ(JordanType::single(1, 36).str(), "1^36");
}

TEST(JordanType, Bookkeeping) {
    JordanType t{{2, 2}, {8, 4}};
    EXPECT_EQ(t.dimension(), 36u);
    EXPECT_EQ(t.block_count(), 6u);
    EXPECT_EQ(t.multiplicity(8), 4u);
    EXPECT_EQ(t.multiplicity(3), 0u);
    EXPECT_EQ(t.min_size(), 2u);
    EXPECT_EQ(t.max_size(), 8u);
    EXPECT_FALSE(t.multiplicity_free());
    EXPECT_TRUE(parse_jordan_type("1, 3, 5").multiplicity_free());
    auto dense = t.dense();
    ASSERT_EQ(dense.size(), 9u);
    EXPECT_EQ(dense[2], 2u);
    EXPECT_EQ(dense[8], 4u);
    EXPECT_EQ(dense[1], 0u);

    t.remove(8, 4);
    EXPECT_EQ(t, JordanType::single(2, 2));
    EXPECT_THROW(t.remove(2, 3), DomainError);
    EXPECT_THROW(t.add(0), DomainError);
    EXPECT_THROW((void)JordanType{}.min_size(), DomainError);
}

TEST(JordanType, RenderParseRoundTrip) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        auto t = oracle::random_jordan_type(rng, 40);
        auto s = t.str();
        EXPECT_EQ(parse_jordan_type(s), t);
        EXPECT_EQ(parse_jordan_type(s).str(), s);
    }
}

TEST(PrimeChar, RejectsComposites) {
    EXPECT_THROW(PrimeChar(0), CharacteristicError);
    EXPECT_THROW(PrimeChar(1), CharacteristicError);
    EXPECT_THROW(PrimeChar(4), CharacteristicError);
    EXPECT_THROW(PrimeChar(91), CharacteristicError);
    EXPECT_NO_THROW(PrimeChar(2));
    EXPECT_NO_THROW(PrimeChar(4294967291u));
}

TEST(PrimeChar, FieldArithmetic) {
    PrimeChar p(7);
    EXPECT_EQ(p.reduce(-1), 6u);
    EXPECT_EQ(p.add(5, 4), 2u);
    EXPECT_EQ(p.sub(2, 5), 4u);
    EXPECT_EQ(p.mul(3, 5), 1u);
    EXPECT_EQ(p.inv(3), 5u);
    EXPECT_EQ(p.sign(3), 6u);
    EXPECT_THROW((void)p.inv(0), DomainError);
    PrimeChar big(4294967291u);
    EXPECT_EQ(big.mul(big.inv(123456789u), 123456789u), 1u);
}

TEST(NuP, Examples) {
    EXPECT_EQ(nu_p(6, PrimeChar(2)), 1u);
    EXPECT_EQ(nu_p(9, PrimeChar(3)), 2u);
    EXPECT_EQ(nu_p(7, PrimeChar(5)), 0u);
    EXPECT_EQ(nu_p(1024, PrimeChar(2)), 10u);
    EXPECT_THROW(nu_p(0, PrimeChar(3)), DomainError);
}

TEST(NuP, DividesExactly) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (std::uint64_t a = 1; a <= 500; ++a) {
            auto k = nu_p(a, PrimeChar(p));
            EXPECT_EQ(a % ipow(p, k), 0u);
            EXPECT_NE(a % ipow(p, k + 1), 0u);
        }
}

TEST(AlphaOf, Examples) {
    EXPECT_EQ(alpha_of(JordanType::single(2, 2), PrimeChar(2)), 1u);
    EXPECT_EQ(alpha_of(parse_jordan_type("1, 3"), PrimeChar(3)), 0u);
    EXPECT_EQ(alpha_of(JordanType::single(6), PrimeChar(3)), 1u);
    EXPECT_EQ(alpha_of(parse_jordan_type("4, 8"), PrimeChar(2)), 2u);
    EXPECT_EQ(alpha_of(parse_jordan_type("9^5, 18"), PrimeChar(3)), 2u);
    EXPECT_THROW(alpha_of(JordanType{}, PrimeChar(2)), DomainError);
}

TEST(BinomModP, Examples) {
    EXPECT_EQ(binom_mod_p(6, 3, PrimeChar(2)), 0u);
    EXPECT_EQ(binom_mod_p(4, 3, PrimeChar(5)), 4u);
    for (std::uint64_t a : {0ull, 1ull, 17ull, 1000000ull}) EXPECT_EQ(binom_mod_p(a, 0, PrimeChar(3)), 1u);
    EXPECT_EQ(binom_mod_p(2, 5, PrimeChar(7)), 0u);
}

TEST(BinomModP, AgreesWithBigIntegers) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (std::uint64_t a = 0; a <= 200; ++a)
            for (std::uint64_t b = 0; b <= 200; ++b)
                ASSERT_EQ(binom_mod_p(a, b, PrimeChar(p)), oracle::bigint_binom_mod(a, b, p))
                    << a << " choose " << b << " mod " << p;
}

TEST(BinomModP, AlternatingRowBelowP) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 101u}) {
        PrimeChar pc(p);
        for (std::uint64_t t = 0; t < p; ++t) EXPECT_EQ(binom_mod_p(p - 1, t, pc), pc.sign(t));
    }
}

TEST(BinomModP, ZeroIffSomeDigitIsSmaller) {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::uint64_t a = 0; a <= 150; ++a)
            for (std::uint64_t b = 0; b <= 150; ++b) {
                bool carry = false;
                for (std::uint64_t x = a, y = b; x || y; x /= p, y /= p)
                    if (y % p > x % p) carry = true;
                EXPECT_EQ(binom_mod_p(a, b, PrimeChar(p)) == 0, carry);
            }
}

// partition numbers 1..12: 1 2 3 5 7 11 15 22 30 42 56 77
TEST(Partitions, CountsAndOrder) {
    const std::size_t expected[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (std::size_t n = 1; n <= 12; ++n) {
        auto ps = partitions_of(n);
        EXPECT_EQ(ps.size(), expected[n - 1]);
        for (const auto& t : ps) EXPECT_EQ(t.dimension(), n);
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j) EXPECT_NE(ps[i], ps[j]);
    }
    auto six = partitions_of(6);
    std::vector<std::string> got;
    for (const auto& t : six) got.push_back(t.str());
    std::vector<std::string> want{"6",       "1, 5",    "2, 4",       "1^2, 4",       "3^2", "1, 2, 3",
                                  "1^3, 3",  "2^3",     "1^2, 2^2",   "1^4, 2",       "1^6"};
    EXPECT_EQ(got, want);
}

TEST(UnipotentOrder, PowersOfP) {
    EXPECT_EQ(unipotent_order(1, PrimeChar(2)), 1u);
    EXPECT_EQ(unipotent_order(5, PrimeChar(2)), 8u);
    EXPECT_EQ(unipotent_order(9, PrimeChar(3)), 9u);
    EXPECT_EQ(unipotent_order(10, PrimeChar(3)), 27u);
}
