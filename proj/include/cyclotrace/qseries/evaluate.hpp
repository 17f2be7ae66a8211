#pragma once

#include <cmath>
#include <limits>
#include <string>

#include <gmpxx.h>

#include "../numerics/complex.hpp"
#include "../numerics/errors.hpp"
#include "../numerics/real_traits.hpp"
#include "qseries.hpp"

namespace cyclotrace {

// |c_n| <= A e^{beta sqrt(n)} (n+1)^power for all n beyond the stored range.
struct GrowthEnvelope {
    double A = 1;
    double beta = 0;
    double power = 0;

    double log_bound(long n) const {
        return std::log(A) + beta * std::sqrt(static_cast<double>(std::max<long>(n, 0))) +
               power * std::log(static_cast<double>(std::max<long>(n, 0)) + 1);
    }
};

// Fits A over the known non-negative indices for the given shape, with a
// safety factor of 2. beta comes from the principal part: 4 pi sqrt(m) for a
// pole q^{-m} at level 1 (pi sqrt(m) for level 4 plus-space forms).
template <class T>
GrowthEnvelope fit_envelope(const QSeries<T>& a, double beta, double power) {
    GrowthEnvelope e{1, beta, power};
    double logA = -std::numeric_limits<double>::infinity();
    for (long n = std::max<long>(1, a.valuation()); n <= a.precision(); ++n) {
        double v = std::fabs(to_double(to_real<double>(a.coeff(n))));
        if (v == 0) continue;
        double la = std::log(v) - beta * std::sqrt(double(n)) - power * std::log(double(n) + 1);
        logA = std::max(logA, la);
    }
    e.A = std::isfinite(logA) ? 2 * std::exp(logA) : 0;
    return e;
}

template <class Real>
struct SeriesValue {
    Complex<Real> value;
    double tail_bound = 0;
    long terms = 0;
};

// Rigorous tail of sum_{n > N} |c_n| r^n under the envelope, r = e^{-2 pi scale y}.
inline double series_tail_bound(const GrowthEnvelope& env, long N, double log_r) {
    if (env.A == 0) return 0;
    long n1 = std::max<long>(N + 1, 1);
    double log_first = env.log_bound(n1) + log_r * n1;
    double log_ratio = env.beta / (2 * std::sqrt(double(n1))) + env.power * std::log((n1 + 2.0) / (n1 + 1.0)) + log_r;
    if (log_ratio >= 0) return std::numeric_limits<double>::infinity();
    return std::exp(log_first) / (-std::expm1(log_ratio));
}

// Smallest N whose tail bound is below tol (for diagnostics), or -1.
inline long suggest_length(const GrowthEnvelope& env, double log_r, double tol, long start) {
    for (long N = start; N < start + 1000000; N += std::max<long>(1, N / 8))
        if (series_tail_bound(env, N, log_r) < tol) return N;
    return -1;
}

// sum c_n e(scale n tau) with the tail bound of the envelope; scale = num/den.
template <class Real, class T>
SeriesValue<Real> evaluate(const QSeries<T>& a, const Complex<Real>& tau, const GrowthEnvelope& env,
                           long scale_num = 1, long scale_den = 1, double tol = 0) {
    using std::exp;
    if (!(tau.im > 0)) throw domain_error("evaluate: tau must lie in the upper half plane");
    if (scale_num <= 0 || scale_den <= 0) throw domain_error("evaluate: scale must be positive");
    Real scale = Real(scale_num) / Real(scale_den);
    double log_r = -2 * M_PI * to_double(scale) * to_double(tau.im);
    SeriesValue<Real> out;
    out.tail_bound = series_tail_bound(env, a.precision(), log_r);
    if (tol > 0 && !(out.tail_bound <= tol)) {
        long sug = suggest_length(env, log_r, tol, a.precision() + 1);
        throw convergence_error("evaluate: tail bound " + std::to_string(out.tail_bound) + " exceeds tolerance; need N >= " +
                                std::to_string(sug));
    }
    Complex<Real> w(Real(0), Real(2 * pi_v<Real>() * scale));  // 2 pi i scale
    Complex<Real> z = exp(w * tau);
    long v = a.valuation();
    Complex<Real> p = exp(w * tau * Real(v));
    Complex<Real> acc;
    for (long n = v; n <= a.precision(); ++n) {
        T c = a.coeff(n);
        if (!qs_detail::is_zero(c)) {
            acc += p * to_real<Real>(c);
            ++out.terms;
        }
        p *= z;
    }
    out.value = acc;
    return out;
}

}  // namespace cyclotrace
