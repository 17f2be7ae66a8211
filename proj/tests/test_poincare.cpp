#include <gtest/gtest.h>

#include <cmath>

#include "cyclotrace/kloosterman.hpp"
#include "cyclotrace/poincare.hpp"
#include "cyclotrace/qseries.hpp"

using namespace cyclotrace;

namespace {

using R = ExtReal;
using C = ExtComplex;

double cabs(const C& z) { return to_double(abs(z)); }
C at(double x, double y) { return C(R(x), R(y)); }

// j_m = q^{-m} + O(q) from the Faber polynomials, evaluated from its q-expansion.
C faber_value(long m, const C& tau) {
    ZSeries f = faber(m, 80);
    return evaluate(f, tau, fit_envelope(f, 4 * M_PI * std::sqrt(double(m)), -0.75)).value;
}

class Poincare : public ::testing::Test {
protected:
    PrecisionContext ctx{128};
};

}  // namespace

TEST_F(Poincare, EisensteinInvarianceAndLeadingTerms) {
    R s(1.3);
    EXPECT_LT(cabs(eisenstein_g0(at(0, 2), s, 30) - eisenstein_g0(at(0, 0.5), s, 30)), 1e-10);
    C t(R(0.37), R(0.8));
    EXPECT_LT(cabs(eisenstein_g0(t, s, 30) - eisenstein_g0(C(R(t.re + R(1)), t.im), s, 30)), 1e-20);

    R Y(10);
    R lead = pow(Y, s) + xi_completed(R(2 * s - 1)) / xi_completed(R(2 * s)) * pow(Y, R(1 - s));
    EXPECT_LT(cabs(eisenstein_g0(C(R(0), Y), s, 30) - C(lead)), 1e-20);

    EXPECT_THROW(eisenstein_g0(at(0, 1), R(1), 30), domain_error);
    EXPECT_THROW(eisenstein_g0(at(0, 1), R(0.4), 30), domain_error);
}

TEST_F(Poincare, EisensteinEigenEquation) {
    R s(1.3);
    C t = at(0.2, 1.1);
    Evaluator<R> f = [&](const C& z) { return eisenstein_g0(z, s, 30); };
    C lhs = laplacian0(f, t);
    EXPECT_LT(cabs(lhs - f(t) * R(s - s * s)), 1e-4);
}

TEST(CoeffC, SelfConvergenceAtS1) {
    CoeffResult a = coeff_c(-1, 1, 1.0, 2000), b = coeff_c(-1, 1, 1.0, 4000);
    EXPECT_LT(std::fabs(a.value - b.value), 1e-8 * std::fabs(b.value));
    EXPECT_EQ(b.c_max, 4000);
}

TEST(CoeffC, KnownValuesAtS1) {
    // 4 pi c_{-1}(1, 1) y^{1/2} K_{1/2} reproduces 196884 q; c_{-1}(-1, 1) cancels the bar-q^{-1} of the I-head
    EXPECT_NEAR(2 * M_PI * coeff_c(-1, 1, 1.0).value, 196884.0, 1e-2);
    EXPECT_NEAR(2 * M_PI * coeff_c(-1, -1, 1.0).value, 1.0, 1e-4);
}

TEST(CoeffC, Symmetry) {
    for (long m : {1, 2, 3, -1, -2})
        for (long n : {1, 2, 5})
            for (double s : {0.9, 1.2}) {
                long nn = m > 0 ? n : -n;
                CoeffResult a = coeff_c(m, nn, s, 2000), b = coeff_c(nn, m, s, 2000);
                EXPECT_NEAR(a.value, b.value, 1e-12 * (1 + std::fabs(a.value))) << m << " " << nn << " " << s;
            }
}

TEST(CoeffC, BesselFactorDecaysPastTransition) {
    for (long mn : {1, 6, 20}) {
        double x0 = 4 * M_PI * std::sqrt(double(mn));
        for (double s : {0.9, 1.0, 1.4}) {
            double prev = INFINITY;
            for (long c = static_cast<long>(std::ceil(x0)); c < 4000; ++c) {
                double t = std::fabs(std::cyl_bessel_j(2 * s - 1, x0 / c)) / c;
                ASSERT_LT(t, prev);
                prev = t;
            }
        }
    }
}

TEST(CoeffC, Errors) {
    EXPECT_THROW(coeff_c(0, 1, 1.0), domain_error);
    EXPECT_THROW(coeff_c(1, 0, 1.0), domain_error);
    EXPECT_THROW(coeff_c(1, 1, 0.7), domain_error);
}

TEST_F(Poincare, NieburEigenEquation) {
    const std::vector<C> pts{at(0.13, 0.9), at(-0.31, 1.2), at(0.45, 0.7)};
    for (long m : {-2, -1, 1})
        for (double sd : {0.9, 1.2, 1.4})
            for (const auto& t : pts) {
                R s(sd);
                Evaluator<R> f = [&](const C& z) { return niebur_g(m, z, s); };
                C g = f(t);
                double r = cabs(laplacian0(f, t) - g * R(s - s * s)) / cabs(g);
                EXPECT_LT(r, 1e-3) << "m=" << m << " s=" << sd << " tau=" << to_double(t.re) << "+" << to_double(t.im) << "i";
            }
}

TEST_F(Poincare, NieburInvariance) {
    R s(1.2);
    EXPECT_LT(cabs(niebur_g(-1, at(0, 2), s) - niebur_g(-1, at(0, 0.5), s)), 1e-6);
    // S maps 0.6 + 0.8i to -0.6 + 0.8i
    EXPECT_LT(cabs(niebur_g(2, at(0.6, 0.8), s) - niebur_g(2, at(-0.6, 0.8), s)), 1e-6);
    EXPECT_LT(cabs(niebur_g(-1, at(0.3, 0.9), s) - niebur_g(-1, at(1.3, 0.9), s)), 1e-12);
}

TEST_F(Poincare, JSpecialization) {
    C t = at(0, 1.5);
    C g = niebur_g(-1, t, R(1));
    EXPECT_LT(cabs(g - C(R(24)) - faber_value(1, t)), 1e-6);
    C t2 = at(0.1, 0.9);
    EXPECT_LT(cabs(jm_s(2, t2, R(1)) - faber_value(2, t2)), 1e-6);
}

TEST_F(Poincare, ExpansionMetadata) {
    auto e = niebur_expansion(-1, R(1.2));
    EXPECT_EQ(e->n_max, 24);
    EXPECT_EQ(e->c_max, 4000);
    EXPECT_EQ(e->precision, 128u);
    EXPECT_THROW(e->evaluate(at(0, 0.3)), domain_error);
    double prev = INFINITY;
    for (double y : {0.5, 0.7, 1.0, 1.5, 2.0}) {
        double t = e->tail_envelope(y);
        EXPECT_LT(t, prev);
        prev = t;
    }
    EXPECT_LT(e->tail_envelope(0.5), 1e-6);
}

TEST_F(Poincare, JhatTheorem) {
    JhatOptions o;
    C t = at(0.2, 1.3);
    Evaluator<R> f1 = [&](const C& z) { return jhat(1, z, o); };
    EXPECT_LT(cabs(laplacian0(f1, t) + faber_value(1, t) + C(R(24))), 1e-3);

    C t2 = at(0, 1.1);
    Evaluator<R> f2 = [&](const C& z) { return jhat(2, z, o); };
    EXPECT_LT(cabs(laplacian0(f2, t2) + faber_value(2, t2) + C(R(72))), 1e-3);

    C t3 = at(-0.35, 0.95);
    EXPECT_LT(cabs(laplacian0(f1, t3) + faber_value(1, t3) + C(R(24))), 1e-3);
}

TEST_F(Poincare, JhatInvariance) {
    JhatOptions o;
    auto a = jhat_estimate(1, at(0, 2), o), b = jhat_estimate(1, at(0, 0.5), o);
    EXPECT_LT(cabs(a.value - b.value), 1e-5);
    EXPECT_LT(b.richardson_delta, 1e-2);
    o.tol = 1e-12;
    EXPECT_THROW(jhat_estimate(1, at(0, 0.5), o), convergence_error);
}

TEST(Bcoeff, VanishesAtThreeQuarters) {
    CoeffResult a = bcoeff(3, 4, 0.75), b = bcoeff(4, 3, 0.75);
    EXPECT_LT(std::fabs(a.value), 1e-3);
    EXPECT_LT(std::fabs(b.value), 1e-3);
    EXPECT_EQ(a.c_max, 40000);
    EXPECT_GT(a.error, 0);
}

TEST(Bcoeff, StableUnderDoubling) {
    for (auto [m, n] : std::vector<std::pair<long, long>>{{3, 4}, {4, 3}, {3, 7}}) {
        BcoeffOptions lo, hi;
        lo.c_max = 20000;
        CoeffResult a = bcoeff(m, n, 0.75, lo), b = bcoeff(m, n, 0.75, hi);
        EXPECT_LT(std::fabs(a.value - b.value), std::max(a.error, b.error)) << m << " " << n;
    }
}

TEST(Bcoeff, ImaginaryPartVanishes) {
    PrecisionContext ctx(128);
    for (auto [m, n] : std::vector<std::pair<long, long>>{{3, 4}, {4, 3}, {3, 7}, {4, 4}}) {
        R im(0);
        for (long c = 4; c <= 400; c += 4) {
            C k = kloosterman_plus(-m, -n, c);
            im += k.im / R(c) * R(std::cyl_bessel_j(0.5, 4 * M_PI * std::sqrt(double(m * n)) / c));
        }
        EXPECT_LT(std::fabs(to_double(im)), 1e-10);
    }
}

TEST(Bcoeff, Errors) {
    EXPECT_THROW(bcoeff(1, 4, 0.75), domain_error);
    EXPECT_THROW(bcoeff(3, 5, 0.75), domain_error);
    BcoeffOptions o;
    o.c_max = 400;
    o.tol = 1e-12;
    EXPECT_THROW(bcoeff(3, 4, 0.75, o), convergence_error);
}

TEST(BcoeffDs, RoutesAgree) {
    BcoeffDerivative d = bcoeff_ds(3, 4);
    EXPECT_LT(d.route_gap, 1e-3);
    EXPECT_LT(d.richardson_delta, 1e-4);
    BcoeffDerivative e = bcoeff_ds(4, 3);
    EXPECT_LT(e.route_gap, 1e-3);
    EXPECT_NEAR(d.value.value, e.value.value, 1e-3);
}

TEST_F(Poincare, F32VanishesAtThreeQuarters) {
    C v = assemble_f32(3, at(0, 1.2), R(0.75));
    EXPECT_LT(cabs(v), 1e-2);
}

TEST_F(Poincare, F32TranslationInvariance) {
    R s(0.9);
    C a = assemble_f32(3, at(0.21, 0.8), s), b = assemble_f32(3, at(1.21, 0.8), s);
    EXPECT_LT(std::fabs(to_double(abs(a) - abs(b))) * std::pow(0.8, 0.75), 1e-12 * (1 + cabs(a)));
}

TEST_F(Poincare, F32Level4Invariance) {
    // gamma = [[1, 0], [4, 1]] maps -1/4 + i/4 to 1/4 + i/4; |F| y^{3/4} is invariant
    F32Options o;
    o.n_max = 80;
    o.y_min = 0.2;
    R s(0.9);
    C t = at(-0.25, 0.25), gt = at(0.25, 0.25);
    C a = assemble_f32(3, t, s, o), b = assemble_f32(3, gt, s, o);
    EXPECT_LT(std::fabs(to_double(abs(a) - abs(b))), 1e-6 * cabs(a));
}

TEST_F(Poincare, F32LaplaceEigenvalue) {
    R s(0.9), k(1.5);
    C t = at(0.1, 1.1);
    Evaluator<R> f = [&](const C& z) { return assemble_f32(3, z, s); };
    C v = f(t);
    R lam = (s - k / 2) * (R(1) - k / 2 - s);
    EXPECT_LT(cabs(laplacian_k(k, f, t) - v * lam) / cabs(v), 1e-6);
}

TEST_F(Poincare, OperatorsOnPowers) {
    R s(1.3);
    Evaluator<R> y = [](const C& z) { return C(z.im); };
    Evaluator<R> ys = [&](const C& z) { return C(pow(z.im, s)); };
    C t = at(0.3, 0.7);
    EXPECT_LT(cabs(laplacian0(y, t)), 1e-20);
    EXPECT_LT(cabs(laplacian0(ys, at(0, 1)) - C(R(s - s * s))), 1e-10);
    EXPECT_LT(cabs(xi_op(R(0), y, t) - C(R(1))), 1e-20);
    EXPECT_THROW(laplacian0(y, t, 0.1), domain_error);
}

TEST_F(Poincare, XiFactorization) {
    R s(1.3);
    Evaluator<R> f = [&](const C& z) { return C(pow(z.im, s)); };
    Evaluator<R> g = [&](const C& z) { return xi_op(R(0), f, z); };
    C t = at(0.2, 1.1);
    EXPECT_LT(cabs(laplacian0(f, t) + xi_op(R(2), g, t, 1e-3 * 1.1)), 1e-5);
}

TEST_F(Poincare, XiOfNieburSeed) {
    // xi_0(phi_{-1,s}(y) e(-x)) = conj(A(s)) 4 pi s (4 pi y)^{-1} M_{1,s-1/2}(4 pi y) e(x)
    R s(1.2), pi = pi_v<R>(), half(0.5);
    Evaluator<R> f = [&](const C& z) {
        R v = R(2 * pi) * sqrt(z.im) * bessel_i(R(s - half), R(2 * pi * z.im));
        return e_of(R(-z.re)) * v;
    };
    C t = at(0.3, 0.8);
    R A = pow(R(2), R(1 - 2 * s)) * rgamma(R(s + half)) * sqrt(pi);
    R Y = R(4 * pi * t.im);
    C rhs = e_of(t.re) * R(A * R(4 * pi * s) / Y * whittaker_m(R(1), R(s - half), Y));
    EXPECT_LT(cabs(xi_op(R(0), f, t) - rhs), 1e-6);
}
