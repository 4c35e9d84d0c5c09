#include "slt/continued_fraction.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace slt;

namespace {

// Independent evaluation: forward convergents h_i = a_i h_{i-1} - h_{i-2}.
Rational convergent_value(const NegCF& cf) {
    Integer h_prev = 1, h = cf[0], k_prev = 0, k = 1;
    for (std::size_t i = 1; i < cf.size(); ++i) {
        Integer h2 = cf[i] * h - h_prev, k2 = cf[i] * k - k_prev;
        h_prev = h;
        k_prev = k;
        h = h2;
        k = k2;
    }
    return Rational(h, k);
}

}  // namespace

TEST(ContinuedFraction, Examples) {
    EXPECT_EQ(expand_neg_cf(PosRational(7, 1)), (NegCF{7}));
    EXPECT_EQ(expand_neg_cf(PosRational(21, 4)), (NegCF{6, 2, 2, 2}));
    EXPECT_EQ(expand_neg_cf(PosRational(5, 2)), (NegCF{3, 2}));
    EXPECT_EQ(evaluate_neg_cf(NegCF{6, 2, 2, 2}), PosRational(21, 4));
    EXPECT_EQ(evaluate_neg_cf(NegCF{9}), PosRational(9, 1));
    EXPECT_EQ(evaluate_neg_cf(NegCF{3, 1}), PosRational(2, 1));
    EXPECT_EQ(convergent_value(NegCF{6, 2, 2, 2}), Rational(21, 4));
}

TEST(ContinuedFraction, RejectsZeroTail) {
    EXPECT_THROW(evaluate_neg_cf(NegCF{2, 1, 1}), std::domain_error);
    EXPECT_THROW(evaluate_neg_cf(NegCF{}), std::invalid_argument);
    EXPECT_THROW(PosRational(0, 1), std::invalid_argument);
    EXPECT_THROW(PosRational(3, 0), std::invalid_argument);
}

TEST(ContinuedFraction, ValidityModes) {
    EXPECT_TRUE((NegCF{6, 2, 2, 2}).is_canonical());
    EXPECT_FALSE((NegCF{3, 1}).is_canonical());
    EXPECT_TRUE((NegCF{3, 1}).is_relaxed());
    EXPECT_FALSE((NegCF{3, 1, 2}).is_relaxed());
    EXPECT_FALSE((NegCF{0, 2}).is_relaxed());
}

TEST(ContinuedFraction, RoundTripAndCanonical) {
    for (int p = 2; p <= 300; ++p)
        for (int q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            PosRational r(p, q);
            NegCF cf = expand_neg_cf(r);
            ASSERT_TRUE(cf.is_canonical()) << cf;
            ASSERT_EQ(cf[0], ceil_div(Integer(p), Integer(q)));
            ASSERT_EQ(evaluate_neg_cf(cf), r);
            ASSERT_EQ(convergent_value(cf), r.value());
            // [.., a] = [.., a + 1, 1]
            std::vector<Integer> t = cf.terms();
            t.back() += 1;
            t.push_back(1);
            ASSERT_EQ(evaluate_neg_cf(NegCF(t)), r);
        }
}

TEST(ContinuedFraction, SplitSlope) {
    auto check = [](std::int64_t p, std::int64_t q, int n, int rem) {
        SlopeSplit s = split_slope(PosRational(p, q));
        EXPECT_EQ(s.n, n);
        EXPECT_EQ(s.rem, rem);
        EXPECT_EQ(s.q, q);
    };
    check(5, 2, 3, 1);
    check(7, 1, 7, 0);
    check(21, 4, 6, 3);
}

TEST(Interpolation, Examples) {
    auto seq = interpolation_sequence(PosRational(7, 2), PosRational(4, 1));
    ASSERT_GE(seq.size(), 2u);
    EXPECT_EQ(seq.front(), (NegCF{4, 2}));
    EXPECT_EQ(seq.back(), (NegCF{4}));

    auto ints = interpolation_sequence(PosRational(5, 1), PosRational(7, 1));
    EXPECT_EQ(ints, (std::vector<NegCF>{NegCF{5}, NegCF{6}, NegCF{7}}));

    EXPECT_THROW(interpolation_sequence(PosRational(3, 1), PosRational(3, 1)), std::invalid_argument);
    EXPECT_THROW(interpolation_sequence(PosRational(4, 1), PosRational(3, 1)), std::invalid_argument);
}

TEST(Interpolation, RandomPairsIncreaseByLegalMoves) {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> num(2, 100);
    int done = 0;
    while (done < 500) {
        int p1 = num(rng), p2 = num(rng);
        int q1 = std::uniform_int_distribution<int>(1, p1 - 1)(rng);
        int q2 = std::uniform_int_distribution<int>(1, p2 - 1)(rng);
        if (std::gcd(p1, q1) != 1 || std::gcd(p2, q2) != 1) continue;
        PosRational r1(p1, q1), r2(p2, q2);
        if (r1 == r2) continue;
        if (r2 < r1) std::swap(r1, r2);
        ++done;
        Interpolation in = interpolate_slopes(r1, r2);
        ASSERT_EQ(evaluate_neg_cf(in.sequence.front()), r1);
        ASSERT_EQ(evaluate_neg_cf(in.sequence.back()), r2);
        ASSERT_EQ(in.moves.size() + 1, in.sequence.size());
        for (std::size_t i = 0; i + 1 < in.sequence.size(); ++i) {
            ASSERT_TRUE(in.sequence[i + 1].is_canonical());
            ASSERT_LT(evaluate_neg_cf(in.sequence[i]), evaluate_neg_cf(in.sequence[i + 1]));
            const auto& mv = in.moves[i];
            // the move's ext is the smaller slope, its base the next one
            ASSERT_EQ(evaluate_neg_cf(mv.ext), evaluate_neg_cf(in.sequence[i]));
            ASSERT_EQ(mv.base, in.sequence[i + 1]);
            ASSERT_TRUE(mv.ext.extends(mv.base));
            ASSERT_GT(mv.ext.size(), mv.base.size());
            ASSERT_TRUE(mv.ext.is_relaxed());
        }
    }
}
