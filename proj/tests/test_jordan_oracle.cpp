#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "jordan/jordan_oracle.hpp"
#include "support/oracles.hpp"

using namespace jordan;

TEST(JordanTypeOf, Examples) {
    EXPECT_EQ(jordan_type_of(PrimeFieldMatrix::identity(7, PrimeChar(5))), JordanType::single(1, 7));
    EXPECT_EQ(jordan_type_of(jordan_block(5, PrimeChar(3))), JordanType::single(5));
    PrimeChar two(2);
    auto k = kronecker(jordan_block(2, two), jordan_block(2, two));
    EXPECT_EQ(nilpotent_kernel_dims(k - PrimeFieldMatrix::identity(4, two)), (std::vector<std::size_t>{0, 2, 4}));
    EXPECT_EQ(jordan_type_of(k), JordanType::single(2, 2));
}

TEST(JordanTypeOf, RejectsNonUnipotent) {
    PrimeChar p(3);
    EXPECT_THROW(jordan_type_of(PrimeFieldMatrix::identity(3, p) + PrimeFieldMatrix::identity(3, p)), DomainError);
    EXPECT_THROW(jordan_type_of(PrimeFieldMatrix(2, 3, p)), DomainError);
}

TEST(JordanTypeOf, MatchesExplicitPowersOnConjugates) {
    std::mt19937_64 rng(29);
    for (std::uint32_t pv : {2u, 3u, 5u}) {
        PrimeChar p(pv);
        for (int trial = 0; trial < 30; ++trial) {
            auto t = oracle::random_jordan_type(rng, 10);
            auto g = oracle::random_matrix(rng, t.dimension(), t.dimension(), p);
            if (rank(g) < t.dimension()) continue;
            auto conj = g * unipotent_of(t, p) * inverse(g);
            EXPECT_EQ(jordan_type_of(conj), t);
            EXPECT_EQ(oracle::jordan_type_by_powers(conj), t);
        }
    }
}

TEST(EntryCap, EnforcedAndScoped) {
    ScopedEntryCap cap(100);
    EXPECT_EQ(max_matrix_entries().load(), 100u);
    EXPECT_THROW(jordan_type_of(PrimeFieldMatrix::identity(11, PrimeChar(2))), CapExceeded);
    EXPECT_NO_THROW(jordan_type_of(PrimeFieldMatrix::identity(10, PrimeChar(2))));
    EXPECT_THROW(tensor_block_type_direct(6, 6, PrimeChar(2)), CapExceeded);
    {
        ScopedEntryCap inner(1u << 20);
        EXPECT_NO_THROW(tensor_block_type_direct(6, 6, PrimeChar(2)));
    }
    EXPECT_EQ(max_matrix_entries().load(), 100u);
}

TEST(TensorBlockType, Examples) {
    for (std::uint32_t pv : {2u, 3u, 7u})
        for (std::size_t n = 1; n <= 9; ++n) EXPECT_EQ(tensor_block_type(1, n, PrimeChar(pv)), JordanType::single(n));
    EXPECT_EQ(tensor_block_type(2, 2, PrimeChar(3)), parse_jordan_type("1, 3"));
    EXPECT_EQ(tensor_block_type(6, 6, PrimeChar(2)), parse_jordan_type("2^2, 8^4"));
    EXPECT_EQ(tensor_block_type(6, 6, PrimeChar(3)), parse_jordan_type("3^3, 9^3"));
}

TEST(TensorBlockType, GradedRouteMatchesKronecker) {
    for (std::uint32_t pv : {2u, 3u, 5u, 7u}) {
        PrimeChar p(pv);
        for (std::size_t m = 1; m <= 12; ++m)
            for (std::size_t n = m; n <= 12; ++n)
                ASSERT_EQ(tensor_block_type(m, n, p), tensor_block_type_direct(m, n, p))
                    << "m=" << m << " n=" << n << " p=" << pv;
    }
}

TEST(TensorBlockType, Symmetric) {
    for (std::uint32_t pv : {2u, 3u, 5u}) {
        PrimeChar p(pv);
        for (std::size_t m = 1; m <= 20; ++m)
            for (std::size_t n = 1; n <= 20; ++n) {
                auto a = detail::graded_tensor_kernel_dims(m, n, p);
                auto b = detail::graded_tensor_kernel_dims(n, m, p);
                EXPECT_EQ(jordan_type_from_kernel_dims(a), jordan_type_from_kernel_dims(b));
                EXPECT_EQ(tensor_block_type(m, n, p), tensor_block_type(n, m, p));
            }
    }
}

TEST(TensorBlockType, SmallestBlockOfSquare) {
    for (std::uint32_t pv : {2u, 3u, 5u}) {
        PrimeChar p(pv);
        for (std::size_t n = 1; n <= 30; ++n) {
            auto t = tensor_block_type(n, n, p);
            const std::size_t q = ipow(pv, nu_p(n, p));
            EXPECT_EQ(t.min_size(), q) << "n=" << n << " p=" << pv;
            EXPECT_EQ(t.multiplicity(q), q) << "n=" << n << " p=" << pv;
            EXPECT_EQ(t.dimension(), n * n);
        }
    }
}

TEST(TensorBlockType, LargestBlockBoundedByOrder) {
    for (std::uint32_t pv : {2u, 3u, 5u}) {
        PrimeChar p(pv);
        for (std::size_t m = 1; m <= 25; ++m)
            for (std::size_t n = 1; n <= 25; ++n)
                EXPECT_LE(tensor_block_type(m, n, p).max_size(), unipotent_order(std::max(m, n), p));
    }
}

TEST(TensorDualType, Examples) {
    EXPECT_EQ(tensor_dual_type(parse_jordan_type("1, 2"), PrimeChar(3)), parse_jordan_type("1^2, 2^2, 3"));
    EXPECT_EQ(tensor_dual_type(JordanType::single(3, 2), PrimeChar(2)), parse_jordan_type("1^4, 4^8"));
    EXPECT_EQ(tensor_dual_type(JordanType::single(1, 6), PrimeChar(2)), JordanType::single(1, 36));
}

TEST(TensorDualType, MatchesDirectKronecker) {
    std::mt19937_64 rng(31);
    for (std::uint32_t pv : {2u, 3u, 5u}) {
        PrimeChar p(pv);
        for (int trial = 0; trial < 25; ++trial) {
            auto t = oracle::random_jordan_type(rng, 9);
            auto u = unipotent_of(t, p);
            EXPECT_EQ(tensor_dual_type(t, p), jordan_type_of(kronecker(u, dual_action(u)))) << t;
        }
    }
}

TEST(TensorDualType, SmallestBlockOfSum) {
    std::mt19937_64 rng(37);
    for (std::uint32_t pv : {2u, 3u, 5u}) {
        PrimeChar p(pv);
        for (int trial = 0; trial < 100; ++trial) {
            auto t = trial % 2 ? oracle::random_jordan_type(rng, 30)
                               : oracle::random_multiple_type(rng, pv, 30);
            auto c = tensor_dual_type(t, p);
            const std::size_t q = ipow(pv, alpha_of(t, p));
            EXPECT_EQ(c.min_size(), q) << t;
            EXPECT_GE(c.multiplicity(q), q) << t;
            EXPECT_EQ(c.dimension(), t.dimension() * t.dimension());
        }
    }
}

TEST(Squares, Examples) {
    for (std::uint32_t pv : {2u, 3u, 5u}) EXPECT_EQ(ext2_type(JordanType::single(2), PrimeChar(pv)), JordanType::single(1));
    PrimeChar three(3);
    auto e4 = ext2_type(JordanType::single(4), three);
    EXPECT_EQ(e4.dimension(), 6u);
    EXPECT_EQ(e4, oracle::jordan_type_by_powers(exterior_square(jordan_block(4, three))));
    EXPECT_THROW(sym2_type(JordanType::single(3), PrimeChar(2)), CharacteristicError);
    EXPECT_THROW(ext2_type(JordanType::single(1), three), DomainError);
}

TEST(Squares, DimensionsAndSplitting) {
    std::mt19937_64 rng(41);
    for (std::uint32_t pv : {3u, 5u, 7u}) {
        PrimeChar p(pv);
        for (int trial = 0; trial < 60; ++trial) {
            auto t = oracle::random_jordan_type(rng, 16, 2);
            const std::size_t n = t.dimension();
            auto e = ext2_type(t, p);
            auto s = sym2_type(t, p);
            EXPECT_EQ(e.dimension(), n * (n - 1) / 2);
            EXPECT_EQ(s.dimension(), n * (n + 1) / 2);
            EXPECT_EQ(e + s, tensor_dual_type(t, p)) << t;
        }
    }
}

TEST(Squares, BilinearExpansionMatchesWholeMatrix) {
    std::mt19937_64 rng(43);
    for (std::uint32_t pv : {2u, 3u, 5u}) {
        PrimeChar p(pv);
        for (int trial = 0; trial < 25; ++trial) {
            auto t = oracle::random_jordan_type(rng, 10, 2);
            auto u = unipotent_of(t, p);
            EXPECT_EQ(ext2_type(t, p), jordan_type_of(exterior_square(u))) << t;
            if (pv > 2) EXPECT_EQ(sym2_type(t, p), jordan_type_of(symmetric_square(u))) << t;
        }
    }
}

TEST(TypeMemo, ConcurrentReadersAgree) {
    PrimeChar p(3);
    std::vector<JordanType> results(8);
    {
        std::vector<std::jthread> pool;
        for (std::size_t k = 0; k < results.size(); ++k)
            pool.emplace_back([&, k] {
                JordanType acc;
                for (std::size_t m = 1; m <= 15; ++m)
                    for (std::size_t n = 1; n <= 15; ++n) acc += tensor_block_type(m, n, p);
                results[k] = acc;
            });
    }
    for (const auto& r : results) EXPECT_EQ(r, results.front());
}
