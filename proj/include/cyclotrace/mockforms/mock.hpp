#pragma once

// Mock modular coefficients b(D, d), the regularized inner products, the
// holomorphic and non-holomorphic parts of k_d and the constant-term check.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "../arithmetic/quadform.hpp"
#include "../numerics/complex.hpp"
#include "../numerics/errors.hpp"
#include "../numerics/incomplete_gamma.hpp"
#include "../poincare/coefficients.hpp"
#include "../traces/modified.hpp"
#include "weakly_holo.hpp"

namespace cyclotrace {

struct MockCoeff {
    long D = 0, d = 0;
    ExtReal class_number_term;  // 192 pi H(|d|) H(|D|)
    ExtReal trace_term;         // Tr*_{d,D}(Jhat)
    double error_estimate = 0;
    TraceResult trace;

    ExtReal value() const { return class_number_term - ExtReal(8) * sqrt(ExtReal(D * d)) * trace_term; }
};

// b(D, d) = 192 pi H(|d|) H(|D|) - 8 sqrt(dD) Tr*_{d,D}(Jhat)
inline MockCoeff b_coeff_mock(long D, long d, const StarOptions& o = {}) {
    trace_detail::check_star(d, D, "b_coeff_mock");
    MockCoeff m;
    m.D = D;
    m.d = d;
    m.trace = trace_star_jhat(d, D, o);
    m.trace_term = m.trace.value;
    ExtReal hh = to_real<ExtReal>(mpq_class(hurwitz_class_number(-d) * hurwitz_class_number(-D)));
    m.class_number_term = ExtReal(192) * pi_v<ExtReal>() * hh;
    m.error_estimate = 8 * std::sqrt(double(D * d)) * m.trace.error_estimate;
    return m;
}

struct InnerProduct {
    ExtReal class_number_term;
    ExtReal trace_term;  // coefficient -12 sqrt(Dd) applied
    double error_estimate = 0;
    std::string reduction;

    ExtReal value() const { return class_number_term + trace_term; }
};

inline const char* kInnerReduction = "(f_D, xi_{3/2} k_d)^reg = 3/2 x coefficient of q^{|D|} in k_d^+";

// (f_D, f_d)^reg = -12 sqrt(Dd) Tr*_{d,D}(Jhat) + 288 pi H(|D|) H(|d|)
inline InnerProduct inner_prod_reg(long D, long d, const StarOptions& o = {}) {
    MockCoeff m = b_coeff_mock(D, d, o);
    InnerProduct r;
    r.class_number_term = m.class_number_term * ExtReal(1.5);
    r.trace_term = ExtReal(-12) * sqrt(ExtReal(D * d)) * m.trace_term;
    r.error_estimate = 1.5 * m.error_estimate;
    r.reduction = kInnerReduction;
    return r;
}

// (f_0, f_d)^reg = -24 pi H(|d|)
inline InnerProduct inner_prod_theta(long d) {
    if (d >= 0 || !is_discriminant(d)) throw domain_error("inner_prod_theta: d must be a negative discriminant");
    InnerProduct r;
    r.class_number_term = ExtReal(-24) * pi_v<ExtReal>() * to_real<ExtReal>(hurwitz_class_number(-d));
    r.trace_term = ExtReal(0);
    r.reduction = "(f_0, f_d)^reg = 3/2 x constant term of 2 sqrt(pi |d|) k_d^+";
    return r;
}

// k_d^+ = -2 sqrt(pi) i q^{|d|} - 8 sqrt(pi/|d|) H(|d|)
//         + sum_{n != |d|} (d/ds b_{|d|}(n, 3/4) 2 sqrt(n)/sqrt(pi) + 96 sqrt(pi/|d|) H(|d|) H(n)) q^n
struct KPlusSeries {
    long d = 0;
    QSeries<double> re, im;
    std::vector<double> error;  // per index from 0

    std::complex<double> coeff(long n) const { return {re.coeff(n), im.coeff(n)}; }
    template <class Real>
    Complex<Real> operator()(const Complex<Real>& tau) const {
        GrowthEnvelope none{0, 0, 0};
        Complex<Real> a = evaluate(re, tau, none).value, b = evaluate(im, tau, none).value;
        return a + Complex<Real>(-b.im, b.re);
    }
};

inline KPlusSeries kplus_series(long d, long N, const BcoeffOptions& o = {}) {
    if (d >= 0 || !is_discriminant(d)) throw domain_error("kplus_series: d must be a negative discriminant");
    if (N < 0) throw domain_error("kplus_series: N must be non-negative");
    const long m = -d;
    const double Hd = mpq_class(hurwitz_class_number(m)).get_d();
    const double spi = std::sqrt(M_PI);
    KPlusSeries k;
    k.d = d;
    std::vector<double> re(N + 1, 0.0), im(N + 1, 0.0);
    k.error.assign(N + 1, 0.0);
    re[0] = -8 * std::sqrt(M_PI / m) * Hd;
    for (long n = 1; n <= N; ++n) {
        if (!in_support(Support::plus_three_halves, n)) continue;
        if (n == m) {
            im[n] = -2 * spi;
            continue;
        }
        BcoeffDerivative db = bcoeff_ds(m, n, o);
        double f = 2 * std::sqrt(double(n)) / spi;
        re[n] = db.value.value * f + 96 * std::sqrt(M_PI / m) * Hd * mpq_class(hurwitz_class_number(n)).get_d();
        k.error[n] = f * std::max({db.value.error, db.route_gap, db.richardson_delta});
    }
    k.re = QSeries<double>(0, std::move(re), Support::plus_three_halves);
    k.im = QSeries<double>(0, std::move(im), Support::plus_three_halves);
    return k;
}

// Reading of the first term (-i) Gamma(-1/2, 4 pi d y) q^{-d} of k_d^-.
enum class KMinusHead {
    absolute,  // Gamma(-1/2, 4 pi |d| y)
    literal,   // Gamma(-1/2, -4 pi |d| y), principal branch
};

struct KMinusSeries {
    long d = 0;
    long N = 0;
    std::vector<double> b;  // b_{|d|}(-n, 3/4) for n = 0..N (zero off the support)
    std::vector<double> error;
    KMinusHead head = KMinusHead::absolute;
};

inline KMinusSeries kminus_coefficients(long d, long N, const BcoeffOptions& o = {}, KMinusHead head = KMinusHead::absolute) {
    if (d >= 0 || !is_discriminant(d)) throw domain_error("kminus: d must be a negative discriminant");
    if (N < 1) throw domain_error("kminus: N must be positive");
    KMinusSeries k;
    k.d = d;
    k.N = N;
    k.head = head;
    k.b.assign(N + 1, 0.0);
    k.error.assign(N + 1, 0.0);
    for (long n = 1; n <= N; ++n) {
        if (!in_support(Support::plus_three_halves, -n)) continue;
        CoeffResult r = bcoeff(-d, -n, 0.75, o);
        k.b[n] = r.value;
        k.error[n] = r.error;
    }
    return k;
}

// k_d^-(tau) = (-i) Gamma(-1/2, 4 pi |d| y) q^{-d} + sum_{n < 0} b_{|d|}(n, 3/4) sqrt|n| Gamma(-1/2, 4 pi |n| y) q^n
//              + (24 H(|d|)/sqrt|d|) sum_{0 < n = square} sqrt(n) Gamma(-1/2, 4 pi n y) q^{-n}
template <class Real>
Complex<Real> kminus_eval(const KMinusSeries& k, const Complex<Real>& tau) {
    using std::cos;
    using std::exp;
    using std::sin;
    using std::sqrt;
    if (!(tau.im >= Real(0.5) - Real(1e-12))) throw domain_error("kminus_eval: Im tau must be at least 1/2");
    const Real pi = pi_v<Real>(), a(-0.5);
    const long m = -k.d;
    auto qpow = [&](long n) {  // e(n tau)
        Real r = exp(Real(-2 * pi * Real(n) * tau.im)), t = Real(2 * pi * Real(n) * tau.re);
        return Complex<Real>(Real(r * cos(t)), Real(r * sin(t)));
    };
    Complex<Real> acc;
    Real X = Real(4 * pi * Real(m) * tau.im);
    Complex<Real> g = k.head == KMinusHead::absolute ? Complex<Real>(inc_gamma_upper(a, X)) : inc_gamma_upper_negative(a, X);
    acc += Complex<Real>(g.im, Real(-g.re)) * qpow(m);
    for (long n = 1; n <= k.N; ++n) {
        if (k.b[n] == 0) continue;
        Real gn = inc_gamma_upper(a, Real(4 * pi * Real(n) * tau.im));
        acc += qpow(-n) * Real(Real(k.b[n]) * sqrt(Real(n)) * gn);
    }
    Real h = to_real<Real>(hurwitz_class_number(m));
    Real pre = Real(24) * h / sqrt(Real(m));
    for (long r = 1; r * r <= k.N; ++r) {
        long n = r * r;
        Real gn = inc_gamma_upper(a, Real(4 * pi * Real(n) * tau.im));
        acc += qpow(-n) * Real(pre * Real(r) * gn);
    }
    return acc;
}

template <class Real>
Complex<Real> kminus_eval(long d, const Complex<Real>& tau, long N, const BcoeffOptions& o = {}) {
    return kminus_eval(kminus_coefficients(d, N, o), tau);
}

struct ConstantTermReport {
    long D = 0, d = 0, N = 0;
    std::complex<double> target;      // 3/2 x coefficient of q^{|D|} in k_d^+
    std::complex<double> half;        // f k + 1/2 f^e k^e + 1/2 f^o k^o
    std::complex<double> unweighted;  // f k + f^e k^e + f^o k^o
    bool half_matches = false, unweighted_matches = false;
    std::string verdict;  // "half", "unweighted" or "inconclusive"
};

// Constant terms of f_D k_d^+ plus the even/odd pairings under both weightings.
inline ConstantTermReport constant_term_check(long D, long d, long N, const BcoeffOptions& o = {}, double rel_tol = 1e-6) {
    if (D >= 0 || !is_discriminant(D) || d >= 0 || !is_discriminant(d))
        throw domain_error("constant_term_check: D and d must be negative discriminants");
    if (N < -D) throw domain_error("constant_term_check: N must reach |D|");
    ZSeries f = f_modular(D, N).series;
    KPlusSeries k = kplus_series(d, N, o);
    auto [fe, fo] = eo_split(f);
    auto [ke_re, ko_re] = eo_split(k.re);
    auto [ke_im, ko_im] = eo_split(k.im);
    const std::complex<double> I(0, 1);
    PhasedSeries<mpz_class> fw{f, 0};
    PhasedSeries<double> kr{k.re, 0}, ki{k.im, 0};
    std::complex<double> whole = constant_term(fw, kr) + I * constant_term(fw, ki);
    std::complex<double> even = constant_term(fe, ke_re) + I * constant_term(fe, ke_im);
    std::complex<double> odd = constant_term(fo, ko_re) + I * constant_term(fo, ko_im);
    ConstantTermReport r;
    r.D = D;
    r.d = d;
    r.N = N;
    r.target = 1.5 * k.coeff(-D);
    r.half = whole + 0.5 * (even + odd);
    r.unweighted = whole + even + odd;
    double scale = std::max(std::abs(r.target), 1e-300);
    r.half_matches = std::abs(r.half - r.target) <= rel_tol * scale;
    r.unweighted_matches = std::abs(r.unweighted - r.target) <= rel_tol * scale;
    r.verdict = r.half_matches == r.unweighted_matches ? "inconclusive" : (r.half_matches ? "half" : "unweighted");
    return r;
}

}  // namespace cyclotrace
