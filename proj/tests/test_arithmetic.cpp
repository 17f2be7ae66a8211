#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "cyclotrace/arithmetic.hpp"
#include "cyclotrace/numerics.hpp"

using namespace cyclotrace;

namespace {

// Euler's criterion for odd primes p.
int legendre_euler(long a, long p) {
    long e = (p - 1) / 2, r = 1, b = pos_mod(a, p);
    while (e) {
        if (e & 1) r = mul_mod(r, b, p);
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

// Random word in T^k and S with small entries.
Mat2 random_sl2(std::mt19937& rng) {
    std::uniform_int_distribution<long> step(-3, 3);
    Mat2 g;
    for (int i = 0; i < 4; ++i) {
        g = g * Mat2{1, step(rng), 0, 1};
        g = g * Mat2{0, -1, 1, 0};
    }
    return g;
}

}  // namespace

TEST(Kronecker, Examples) {
    EXPECT_EQ(kronecker(5, 1), 1);
    EXPECT_EQ(kronecker(-4, 7), -1);
    EXPECT_EQ(kronecker(5, 2), -1);
    EXPECT_EQ(kronecker(1, 2), 1);
    EXPECT_EQ(kronecker(-3, 2), -1);
    EXPECT_EQ(kronecker(8, 2), 0);
    EXPECT_EQ(kronecker(-3, -1), -1);
    EXPECT_EQ(kronecker(5, -1), 1);
    EXPECT_EQ(kronecker(7, 0), 0);
}

TEST(Kronecker, AgreesWithEulerCriterion) {
    for (long p : {3, 5, 7, 11, 13, 101, 997})
        for (long a = -60; a <= 60; ++a) EXPECT_EQ(kronecker(a, p), legendre_euler(a, p)) << a << " " << p;
}

TEST(Kronecker, CompletelyMultiplicativeForFundamental) {
    for (long D : {-3, -4, -7, -8, 5, 8, 12, 13, -15, 21}) {
        ASSERT_TRUE(is_fundamental_discriminant(D));
        for (long m = 1; m <= 40; ++m)
            for (long n = 1; m * n <= 1000; ++n) EXPECT_EQ(kronecker(D, m * n), kronecker(D, m) * kronecker(D, n));
    }
}

TEST(Sigma, Examples) {
    EXPECT_EQ(sigma(1, 1), 1);
    EXPECT_EQ(sigma(1, 6), 12);
    EXPECT_EQ(sigma(0, 12), 6);
    EXPECT_EQ(sigma(3, 2), 9);
    EXPECT_THROW(sigma(1, 0), domain_error);
    EXPECT_NEAR(sigma_real(0.5, 4), 1 + std::sqrt(2.0) + 2, 1e-14);
}

TEST(Discriminants, Flags) {
    EXPECT_TRUE(Discriminant(1).is_fundamental);
    EXPECT_TRUE(Discriminant(1).is_square);
    EXPECT_TRUE(Discriminant(-4).is_fundamental);
    EXPECT_FALSE(Discriminant(-12).is_fundamental);
    EXPECT_FALSE(Discriminant(-16).is_fundamental);
    EXPECT_TRUE(Discriminant(12).is_fundamental);
    EXPECT_THROW(Discriminant(2), domain_error);
    EXPECT_THROW(Discriminant(0), domain_error);
}

TEST(ReduceDefinite, Examples) {
    EXPECT_EQ(reduce_definite({2, 2, 2}), (QuadForm{2, 2, 2}));
    EXPECT_EQ(reduce_definite({1, 5, 7}), (QuadForm{1, 1, 1}));
    EXPECT_EQ(reduce_definite({3, 2, 1}), (QuadForm{1, 0, 2}));
    EXPECT_THROW(reduce_definite({1, 3, 1}), domain_error);
}

TEST(ReduceDefinite, InvariantUnderSL2) {
    std::mt19937 rng(7);
    ClassList cl = class_list_definite(-84);
    for (const QuadForm& q : cl.forms)
        for (int k = 0; k < 20; ++k) EXPECT_EQ(reduce_definite(q.act(random_sl2(rng))), q);
}

TEST(ClassList, Examples) {
    auto c3 = class_list_definite(-3);
    ASSERT_EQ(c3.forms.size(), 1u);
    EXPECT_EQ(c3.forms[0], (QuadForm{1, 1, 1}));
    EXPECT_EQ(c3.w[0], 3);
    auto c4 = class_list_definite(-4);
    ASSERT_EQ(c4.forms.size(), 1u);
    EXPECT_EQ(c4.w[0], 2);
    auto c20 = class_list_definite(-20);
    ASSERT_EQ(c20.forms.size(), 2u);
    EXPECT_EQ(c20.forms[0], (QuadForm{1, 0, 5}));
    EXPECT_EQ(c20.forms[1], (QuadForm{2, 2, 3}));
    EXPECT_EQ(c20.w[0] + c20.w[1], 2);
    // imprimitive forms are kept
    auto c12 = class_list_definite(-12);
    EXPECT_EQ(c12.forms.size(), 2u);  // [1,0,3], [2,2,2]
}

TEST(Hurwitz, SpotValues) {
    EXPECT_EQ(hurwitz_class_number(3), mpq_class(1, 3));
    EXPECT_EQ(hurwitz_class_number(4), mpq_class(1, 2));
    EXPECT_EQ(hurwitz_class_number(23), mpq_class(3));
    EXPECT_EQ(hurwitz_class_number(0), mpq_class(-1, 12));
    EXPECT_THROW(hurwitz_class_number(5), domain_error);
    EXPECT_THROW(hurwitz_class_number(6), domain_error);
}

TEST(Hurwitz, KroneckerHurwitzRelation) {
    // sum_t H(4n - t^2) = 2 sigma(n) - sum_{d | n} min(d, n/d)
    for (long n = 1; n <= 50; ++n) {
        mpq_class lhs = 0;
        for (long t = -2 * isqrt(n) - 1; t <= 2 * isqrt(n) + 1; ++t) {
            long v = 4 * n - t * t;
            if (v >= 0) lhs += hurwitz_class_number(v);
        }
        mpq_class rhs = 2 * mpq_class(sigma(1, n));
        for (long d : divisors(n)) rhs -= std::min(d, n / d);
        EXPECT_EQ(lhs, rhs) << n;
    }
}

TEST(Hurwitz, DirichletClassNumberFormula) {
    // h(d) = -(w / (2|d|)) sum_{a=1}^{|d|} (d/a) a for fundamental d < 0
    for (long d = -3; d >= -200; --d) {
        if (!is_fundamental_discriminant(d)) continue;
        long s = 0;
        for (long a = 1; a < -d; ++a) s += kronecker(d, a) * a;
        long w = d == -3 ? 6 : (d == -4 ? 4 : 2);
        mpq_class h(-w * s, 2 * (-d));
        h.canonicalize();
        mpq_class half_w(w, 2);
        half_w.canonicalize();
        mpq_class H = hurwitz_class_number(-d) * half_w;
        EXPECT_EQ(H, h) << d;
    }
}

TEST(Hurwitz, MatchesWeightedEnumeration) {
    for (long n = 3; n <= 200; ++n) {
        if (n % 4 == 1 || n % 4 == 2) continue;
        // orbits of all forms with 0 < a, |b| <= 2a_max, reduced through the SL2 action
        std::set<QuadForm> seen;
        mpq_class weighted = 0;
        for (long a = 1; a <= n; ++a)
            for (long b = -a; b <= a; ++b) {
                if ((b * b + n) % (4 * a)) continue;
                QuadForm r = reduce_definite({a, b, (b * b + n) / (4 * a)});
                if (seen.insert(r).second) weighted += mpq_class(1, stabilizer_order(r));
            }
        weighted.canonicalize();
        EXPECT_EQ(hurwitz_class_number(n), weighted) << n;
    }
}

TEST(GenusCharacter, Examples) {
    EXPECT_EQ(genus_character(-3, {1, 2, -2}), 1);
    EXPECT_EQ(genus_character(5, {2, 1, 2}), -1);
    EXPECT_EQ(genus_character(1, {2, 1, 2}), 1);
    EXPECT_EQ(genus_character(-3, {3, 3, -3}), 0);  // disc 45 = -3 * -15, content 3
    EXPECT_THROW(genus_character(-12, {1, 0, 3}), domain_error);
}

TEST(GenusCharacter, InvariantUnderSL2) {
    std::mt19937 rng(11);
    for (long Dd = -60; Dd <= 60; ++Dd) {
        if (Dd == 0 || !is_discriminant(Dd)) continue;
        for (long D : {-3, -4, -7, -8, 5, 8, 12, 13, 1, -11, -15, 17, -19, -20, 21, -23, -24, 24, 28}) {
            if (Dd % D || !is_discriminant(Dd / D)) continue;
            long s = isqrt(std::labs(Dd));
            for (long a = -s - 2; a <= s + 2; ++a) {
                if (a == 0 || (Dd < 0 && a < 0)) continue;
                for (long b = 0; b < 2 * std::labs(a); ++b) {
                    if ((b * b - Dd) % (4 * a)) continue;
                    QuadForm q{a, b, (b * b - Dd) / (4 * a)};
                    int chi = genus_character(D, q);
                    for (int k = 0; k < 3; ++k) EXPECT_EQ(genus_character(D, q.act(random_sl2(rng))), chi) << q << " " << D;
                }
            }
        }
    }
}

TEST(GenusCharacter, ClassPairingForNegativePairs) {
    for (auto [d, D] : std::vector<std::pair<long, long>>{{-4, -3}, {-3, -8}, {-7, -4}, {-3, -4}, {-8, -7}, {-20, -3}}) {
        long Delta = d * D;
        auto classes = class_list_indefinite(Delta);
        long total = 0;
        for (size_t i = 0; i < classes.size(); ++i) {
            const QuadForm& q = classes[i].representative;
            int j = find_indefinite_class(classes, -q);
            ASSERT_GE(j, 0);
            EXPECT_EQ(genus_character(D, -q), -genus_character(D, q));
            total += genus_character(D, q);
        }
        EXPECT_EQ(total, 0) << d << " " << D;
    }
}

TEST(CMPoint, Examples) {
    auto i = cm_point<ExtReal>({1, 0, 1});
    EXPECT_EQ(i.re, ExtReal(0));
    EXPECT_EQ(i.im, ExtReal(1));
    auto rho3 = cm_point<ExtReal>({1, 1, 1});
    EXPECT_LE(abs(rho3.im - sqrt(ExtReal(3)) / 2), ExtReal(1e-70));
    std::mt19937 rng(3);
    for (const QuadForm& q : class_list_definite(-155).forms) {
        auto t = cm_point<ExtReal>(q);
        ExtComplex v = t * t * ExtReal(q.a) + t * ExtReal(q.b) + ExtComplex(ExtReal(q.c));
        EXPECT_LE(abs(v), ExtReal(1e-70));
    }
}

TEST(Pell, Examples) {
    auto p12 = pell_fundamental(12);
    EXPECT_EQ(p12.t, 4);
    EXPECT_EQ(p12.u, 1);
    auto p5 = pell_fundamental(5);
    EXPECT_EQ(p5.t, 3);
    EXPECT_EQ(p5.u, 1);
    auto p21 = pell_fundamental(21);
    EXPECT_EQ(p21.t, 5);
    EXPECT_EQ(p21.u, 1);
    EXPECT_THROW(pell_fundamental(16), domain_error);
}

TEST(Pell, MinimalAgainstSearch) {
    for (long D = 5; D <= 400; ++D) {
        if (!is_discriminant(D) || is_square(D)) continue;
        auto p = pell_fundamental(D);
        EXPECT_EQ(p.t * p.t - D * p.u * p.u, 4);
        if (p.u < 100000) {
            for (long u = 1; u < p.u.get_si(); ++u) EXPECT_FALSE(is_square(D * u * u + 4)) << D << " " << u;
        }
    }
}

TEST(Automorph, FixesForm) {
    Mat2 M = automorph({1, 0, -3});
    EXPECT_EQ(M, (Mat2{2, -3, -1, 2}));
    for (long Delta : {5, 8, 12, 13, 21, 28, 60, 85}) {
        for (const auto& cls : class_list_indefinite(Delta)) {
            const QuadForm& q = cls.representative;
            Mat2 g = automorph(q);
            EXPECT_EQ(g.det(), 1);
            EXPECT_EQ(q.act(g), q);
            // fixes the real roots of Q(x, 1)
            double s = std::sqrt(double(Delta));
            for (double r : {(-q.b + s) / (2.0 * q.a), (-q.b - s) / (2.0 * q.a)})
                EXPECT_NEAR((g.a * r + g.b) / (g.c * r + g.d), r, 1e-9);
        }
    }
}

TEST(GammaInftyReps, Enumerates) {
    auto r = gamma_infty_reps(12, 1);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0], (QuadForm{1, 0, -3}));
    for (const QuadForm& q : gamma_infty_reps(12, 4)) EXPECT_EQ(q.disc(), 12);
    // brute force: orbits of a > 0 forms under b -> b + 2a
    long count = 0;
    for (long a = 1; a <= 4; ++a) {
        std::set<long> residues;
        for (long b = -2 * 4 - 4; b <= 2 * 4 + 4; ++b)
            if ((b * b - 12) % (4 * a) == 0) residues.insert(pos_mod(b, 2 * a));
        count += residues.size();
    }
    EXPECT_EQ(static_cast<long>(gamma_infty_reps(12, 4).size()), count);
}

TEST(IndefiniteClasses, NarrowClassNumbers) {
    std::map<long, size_t> expected{{5, 1}, {8, 1}, {12, 2}, {13, 1}, {17, 1}, {21, 2}, {24, 2}, {20, 2}, {60, 4}};
    for (auto [D, h] : expected) EXPECT_EQ(class_list_indefinite(D).size(), h) << D;
}

TEST(IndefiniteClasses, EveryFormReducesIntoItsClass) {
    std::mt19937 rng(5);
    for (long Delta : {12, 21, 28, 60, 96}) {
        auto classes = class_list_indefinite(Delta);
        for (size_t i = 0; i < classes.size(); ++i)
            for (int k = 0; k < 10; ++k)
                EXPECT_EQ(find_indefinite_class(classes, classes[i].representative.act(random_sl2(rng))),
                          static_cast<int>(i));
    }
}
