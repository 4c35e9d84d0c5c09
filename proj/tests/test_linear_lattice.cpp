#include "slt/int_matrix.hpp"
#include "slt/linear_lattice.hpp"
#include "slt/oracle/short_set.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace slt;

namespace {

LinearLattice lat_of(std::int64_t p, std::int64_t q) { return LinearLattice(expand_neg_cf(PosRational(p, q))); }

std::vector<std::pair<std::int64_t, std::int64_t>> slopes(std::int64_t pmax, std::int64_t qmax) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t p = 1; p <= pmax; ++p)
        for (std::int64_t q = 1; q <= std::min(p, qmax); ++q)
            if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    return out;
}

// Every characteristic vector in the box lo_i <= c_i <= a_i.
void for_each_box(const LinearLattice& lat, bool symmetric, const std::function<void(const CharVec&)>& f) {
    CharVec s(std::vector<std::int64_t>(lat.rank()));
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == lat.rank()) return f(s);
        for (std::int64_t c = symmetric ? -lat.a(i) : 2 - lat.a(i); c <= lat.a(i); c += 2) {
            s[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
}

double box_size(const LinearLattice& lat) {
    double n = 1;
    for (auto a : lat.a()) n *= static_cast<double>(a + 1);
    return n;
}

}  // namespace

TEST(LinearLattice, MatrixDeterminantInverse) {
    for (auto [p, q] : slopes(60, 60)) {
        LinearLattice lat = lat_of(p, q);
        IntMatrix m(lat.rank(), IntVector(lat.rank()));
        for (std::size_t i = 0; i < lat.rank(); ++i)
            for (std::size_t j = 0; j < lat.rank(); ++j) m[i][j] = lat.M(i, j);
        ASSERT_EQ(determinant(m), p);
        ASSERT_EQ(lat.q(), q);
        ASSERT_EQ(lat.p(), lat.a(0) * lat.q() - lat.r());
        auto inv = lat.inverse();
        for (std::size_t i = 0; i < lat.rank(); ++i)
            for (std::size_t j = 0; j < lat.rank(); ++j) {
                Rational s = 0;
                for (std::size_t k = 0; k < lat.rank(); ++k) s += inv[i][k] * lat.M(k, j);
                ASSERT_EQ(s, Rational(i == j ? 1 : 0));
            }
    }
}

TEST(LinearLattice, Inverse35) {
    LinearLattice lat(NegCF{3, 2});
    auto inv = lat.inverse();
    EXPECT_EQ(inv[0][0], Rational(2, 5));
    EXPECT_EQ(inv[0][1], Rational(1, 5));
    EXPECT_EQ(inv[1][1], Rational(3, 5));
}

TEST(LinearLattice, RejectsBadInput) {
    EXPECT_THROW(LinearLattice(NegCF{3, 1, 2}), std::invalid_argument);
    LinearLattice lat(NegCF{3, 2});
    EXPECT_THROW(norm(lat, CharVec{1}), std::invalid_argument);
    EXPECT_THROW(same_class(lat, CharVec{1, 0}, CharVec{0, 0}), std::invalid_argument);
}

TEST(LinearLattice, NormExamples) {
    EXPECT_EQ(norm(LinearLattice(NegCF{2}), CharVec{0}), Rational(0));
    EXPECT_EQ(norm(LinearLattice(NegCF{2}), CharVec{2}), Rational(2));
    EXPECT_EQ(norm(LinearLattice(NegCF{3, 2}), CharVec{1, 0}), Rational(2, 5));
}

TEST(LinearLattice, SameClassExamples) {
    LinearLattice l2(NegCF{2});
    EXPECT_TRUE(same_class(l2, CharVec{0}, CharVec{0}));
    EXPECT_TRUE(same_class(l2, CharVec{0}, CharVec{4}));
    EXPECT_FALSE(same_class(l2, CharVec{0}, CharVec{2}));
}

TEST(LinearLattice, ClassKeyAgreesWithExactSolve) {
    std::mt19937 rng(7);
    for (auto [p, q] : slopes(40, 40)) {
        LinearLattice lat = lat_of(p, q);
        std::vector<CharVec> vs;
        for (int k = 0; k < 40; ++k) {
            std::vector<std::int64_t> c(lat.rank());
            for (std::size_t i = 0; i < lat.rank(); ++i) c[i] = lat.a(i) + 2 * std::uniform_int_distribution<int>(-4, 4)(rng);
            vs.emplace_back(c);
        }
        for (const auto& x : vs)
            for (const auto& y : vs) ASSERT_EQ(same_class(lat, x, y), class_key(lat, x) == class_key(lat, y)) << x.str() << y.str();
    }
}

TEST(LinearLattice, TankExamples) {
    LinearLattice l32(NegCF{3, 2}), l322(NegCF{3, 2, 2}), l7(NegCF{7});
    EXPECT_TRUE(full_tank(l32, CharVec{3, 2}));
    EXPECT_FALSE(full_tank(l32, CharVec{1, 0}));
    EXPECT_TRUE(full_tank(l322, CharVec{3, 0, 2}));
    EXPECT_TRUE(left_full(l32, CharVec{-1, 2}));
    EXPECT_TRUE(left_full(l322, CharVec{1, 0, 2}));
    for (std::int64_t c = -7; c <= 7; c += 2) EXPECT_FALSE(left_full(l7, CharVec{c}));
}

TEST(LinearLattice, EnumerateCExamples) {
    EXPECT_EQ(enumerate_C(LinearLattice(NegCF{5})), (std::vector<CharVec>{{-3}, {-1}, {1}, {3}, {5}}));
    EXPECT_EQ(enumerate_C(LinearLattice(NegCF{3, 2})), (std::vector<CharVec>{{-1, 0}, {-1, 2}, {1, 0}, {1, 2}, {3, 0}}));
    EXPECT_EQ(enumerate_C(LinearLattice(NegCF{6, 2, 2, 2})).size(), 21u);
}

TEST(LinearLattice, EnumerateCMatchesDefinitionByBruteForce) {
    for (auto [p, q] : slopes(40, 40)) {
        LinearLattice lat = lat_of(p, q);
        if (box_size(lat) > 2e5) continue;
        std::vector<CharVec> brute;
        for_each_box(lat, false, [&](const CharVec& s) {
            if (!full_tank(lat, s) && !full_tank(lat, -s)) brute.push_back(s);
        });
        ASSERT_EQ(enumerate_C(lat), brute) << p << "/" << q;
    }
}

TEST(LinearLattice, CountTables) {
    for (auto [p, q] : slopes(100, 20)) {
        LinearLattice lat = lat_of(p, q);
        const auto C = enumerate_C(lat);
        ASSERT_EQ(static_cast<std::int64_t>(C.size()), p);
        std::map<std::int64_t, std::int64_t> all, lf, fcount;
        for (const auto& s : C) {
            ++all[s[0]];
            if (left_full(lat, s)) ++lf[s[0]];
        }
        for (const auto& s : build_F(lat)) ++fcount[s[0]];
        const std::int64_t a0 = lat.a(0), r = lat.r();
        for (std::int64_t c = 2 - a0; c <= a0; c += 2) {
            ASSERT_EQ(all[c], c < a0 ? q : q - r);
            ASSERT_EQ(lf[c], c < a0 ? r : 0);
            ASSERT_EQ(fcount[c], (c == 0 || c == 1) ? q - r : q) << p << "/" << q << " c=" << c;
        }
    }
}

TEST(LinearLattice, BuildFExamplesAndDisplayedFormula) {
    LinearLattice l32(NegCF{3, 2});
    EXPECT_EQ(build_F(l32), (std::vector<CharVec>{{-1, 0}, {-1, 2}, {1, 0}, {3, -2}, {3, 0}}));
    LinearLattice l7(NegCF{7});
    EXPECT_EQ(build_F(l7), enumerate_C(l7));

    for (auto [p, q] : slopes(80, 80)) {
        LinearLattice lat = lat_of(p, q);
        const auto C = enumerate_C(lat);
        const auto F = build_F(lat);
        ASSERT_EQ(C.size(), F.size());
        for (std::size_t i = 0; i < C.size(); ++i) {
            const CharVec& s = C[i];
            auto k = left_full_index(lat, s);
            if (!k || s[0] < 0) {
                ASSERT_EQ(F[i], s);
                continue;
            }
            std::vector<std::int64_t> e(s.begin(), s.end());
            e[0] = s[0] + 2;
            e[1] = -lat.a(1);
            if (*k > 1) {
                for (std::size_t j = 2; j <= *k; ++j) e[j] = 2 - lat.a(j);
            }
            if (*k + 1 < lat.rank()) e[*k + 1] = s[*k + 1] + 2;
            ASSERT_EQ(F[i], CharVec(e)) << s.str();
            ASSERT_TRUE(same_class(lat, F[i], s));
        }
        std::set<std::int64_t> keys;
        for (const auto& f : F) keys.insert(class_key(lat, f));
        ASSERT_EQ(static_cast<std::int64_t>(keys.size()), p);
    }
}

TEST(LinearLattice, ShortnessExamples) {
    EXPECT_FALSE(is_short(LinearLattice(NegCF{3, 2}), CharVec{3, 2}));
    EXPECT_TRUE(is_short(LinearLattice(NegCF{2}), CharVec{0}));
    EXPECT_TRUE(is_short(LinearLattice(NegCF{3, 2}), CharVec{-1, 2}));
}

TEST(LinearLattice, CosetMinimumExamples) {
    EXPECT_EQ(brute_min_norm_in_class(LinearLattice(NegCF{2}), CharVec{0}), Rational(0));
    LinearLattice l32(NegCF{3, 2});
    Rational m = brute_min_norm_in_class(l32, CharVec{3, 2});
    EXPECT_LT(m, norm(l32, CharVec{3, 2}));
    SpincTable tab(l32);
    EXPECT_EQ(m, norm(l32, tab.canonical(CharVec{3, 2})));
    LinearLattice l21(NegCF{6, 2, 2, 2});
    for (const auto& s : build_F(l21)) EXPECT_EQ(brute_min_norm_in_class(l21, s), norm(l21, s));
    EXPECT_THROW(coset_minimum_norms(lat_of(201, 1)), std::out_of_range);
}

// The layered program against literal enumeration of the box with the exact solve.
TEST(LinearLattice, CosetMinimumDPMatchesLiteralBox) {
    int checked = 0;
    for (auto [p, q] : slopes(40, 40)) {
        LinearLattice lat = lat_of(p, q);
        if (box_size(lat) > 2e4) continue;
        auto dp = coset_minimum_norms(lat);
        SpincTable tab(lat);
        std::vector<std::optional<Rational>> best(tab.size());
        for_each_box(lat, true, [&](const CharVec& s) {
            std::size_t idx = 0;
            bool found = false;
            for (std::size_t i = 0; i < tab.size(); ++i)
                if (same_class(lat, s, tab.representatives()[i])) {
                    idx = i;
                    found = true;
                    break;
                }
            ASSERT_TRUE(found);
            Rational n = norm(lat, s);
            if (!best[idx] || n < *best[idx]) best[idx] = n;
        });
        ASSERT_EQ(dp.size(), tab.size());
        for (std::size_t i = 0; i < tab.size(); ++i) ASSERT_EQ(dp.at(class_key(lat, tab.representatives()[i])), *best[i]);
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(LinearLattice, NormStepIdentity) {
    std::mt19937 rng(11);
    for (auto [p, q] : slopes(60, 10)) {
        LinearLattice lat = lat_of(p, q);
        for (int k = 0; k < 5; ++k) {
            std::vector<std::int64_t> c(lat.rank());
            for (std::size_t i = 0; i < lat.rank(); ++i) c[i] = lat.a(i) + 2 * std::uniform_int_distribution<int>(-5, 5)(rng);
            CharVec s(c);
            for (std::size_t i = 0; i < lat.rank(); ++i) {
                ASSERT_EQ(norm(lat, add_pd(lat, s, i, 2)), norm(lat, s) + 4 * s[i] + 4 * lat.a(i));
                ASSERT_EQ(norm(lat, add_pd(lat, s, i, -2)), norm(lat, s) - 4 * s[i] + 4 * lat.a(i));
            }
        }
    }
}

TEST(LinearLattice, RemoveTroughs) {
    LinearLattice l32(NegCF{3, 2});
    CharVec s{1, -2};
    CharVec out = remove_troughs(l32, s);
    EXPECT_TRUE(in_C(l32, out));
    EXPECT_TRUE(same_class(l32, s, out));
    EXPECT_EQ(norm(l32, s), norm(l32, out));
    for (const auto& c : enumerate_C(l32)) EXPECT_EQ(remove_troughs(l32, c), c);
    EXPECT_THROW(remove_troughs(l32, CharVec{3, 2}), std::invalid_argument);

    LinearLattice l21(NegCF{6, 2, 2, 2});
    SpincTable tab(l21);
    std::size_t seen = 0;
    for_each_M(l21, [&](const CharVec& m) {
        ++seen;
        CharVec r = remove_troughs(l21, m);
        ASSERT_TRUE(in_C(l21, r));
        ASSERT_EQ(r, tab.canonical(m));
        ASSERT_EQ(norm(l21, r), norm(l21, m));
    });
    EXPECT_EQ(static_cast<double>(seen), oracle::to_double(oracle::count_M(l21)));
}

TEST(LinearLattice, ShortSetCountAndSampler) {
    for (auto [p, q] : slopes(30, 30)) {
        LinearLattice lat = lat_of(p, q);
        if (box_size(lat) > 2e5) continue;
        std::set<CharVec> listed;
        for_each_M(lat, [&](const CharVec& s) { listed.insert(s); });
        std::size_t brute = 0;
        for_each_box(lat, true, [&](const CharVec& s) { brute += is_short(lat, s); });
        ASSERT_EQ(listed.size(), brute);
        ASSERT_EQ(static_cast<double>(listed.size()), oracle::to_double(oracle::count_M(lat)));
        std::mt19937_64 rng(3);
        for (const auto& s : oracle::sample_M(lat, 20, rng)) ASSERT_TRUE(listed.count(s));
    }
}
