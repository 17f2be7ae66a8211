#pragma once

#include <cmath>

#include "errors.hpp"
#include "quadrature.hpp"
#include "real_traits.hpp"
#include "special.hpp"

namespace cyclotrace {

namespace hyp_detail {

inline long to_long(double x) { return static_cast<long>(std::lround(x)); }
inline long to_long(const ExtReal& x) { return x.to_long(); }

// sum_n (a)_n / Gamma(b+n) x^n / n!, i.e. M(a,b,x)/Gamma(b); terms with b+n a
// non-positive integer vanish.
template <class Real>
Real kummer_series(const Real& a, const Real& b, const Real& x, bool regularized) {
    using std::fabs;
    using std::floor;
    double xd = std::fabs(to_double(x));
    double ad = to_double(a);
    int extra = 16 + (x < 0 ? static_cast<int>(xd * 1.4426950408889634) : 0) +
                (ad < 0 ? static_cast<int>(std::fabs(ad) * 2 + 8) : 0);
    GuardBits<Real> g(extra);
    Real ae = g.in(a), be = g.in(b), xe = g.in(x);
    Real eps = real_traits<Real>::epsilon();
    long start = 0;
    Real term;
    if (regularized && be <= 0 && floor(be) == be) {
        // first surviving index n0 = 1 - b
        start = 1 - to_long(be);
        Real t(1);
        for (long n = 0; n < start; ++n) t *= (ae + n) * xe / (n + 1);
        term = t;  // (a)_{n0} x^{n0} / n0!, divided by Gamma(b + n0) = Gamma(1) = 1
    } else {
        term = regularized ? rgamma(be) : Real(1);
    }
    Real sum = term;
    Real peak = fabs(term);
    for (long n = start; n < start + 1000000; ++n) {
        term *= (ae + n) * xe;
        term /= (be + n) * (n + 1);
        sum += term;
        if (fabs(term) > peak) peak = fabs(term);
        if (term == 0 && ae + n == 0) return g.out(sum);
        if (n > xd + std::fabs(ad) && fabs(term) <= eps * fabs(sum)) return g.out(sum);
        if (n > xd + std::fabs(ad) && sum == 0 && fabs(term) <= eps * peak) return g.out(sum);
    }
    throw convergence_error("kummer_m series did not converge");
}

}  // namespace hyp_detail

// Confluent hypergeometric M(a, b; x) = sum (a)_n / (b)_n x^n / n!.
template <class Real>
Real kummer_m(const Real& a, const Real& b, const Real& x) {
    using std::floor;
    if (b <= 0 && floor(b) == b) throw domain_error("kummer_m: b is a non-positive integer");
    if (x == 0) return Real(1);
    return hyp_detail::kummer_series(a, b, x, false);
}

// M(a, b; x) / Gamma(b); entire in b.
template <class Real>
Real kummer_m_regularized(const Real& a, const Real& b, const Real& x) {
    return hyp_detail::kummer_series(a, b, x, true);
}

template <class Real>
struct WhittakerValue {
    Real value;
    bool degenerate = false;  // 1 + 2 nu a non-positive integer: regularized limit used
};

// M_{mu,nu}(y) = e^{-y/2} y^{nu+1/2} M(nu - mu + 1/2, 1 + 2 nu; y)
template <class Real>
WhittakerValue<Real> whittaker_m_info(const Real& mu, const Real& nu, const Real& y) {
    using std::exp;
    using std::floor;
    using std::pow;
    if (!(y > 0)) throw domain_error("whittaker_m: y must be positive");
    Real b = 1 + 2 * nu;
    Real a = nu - mu + Real(0.5);
    Real pre = exp(-y / 2) * pow(y, Real(nu + Real(0.5)));
    if (b <= 0 && floor(b) == b) return {pre * kummer_m_regularized(a, b, y), true};
    return {pre * kummer_m(a, b, y), false};
}

template <class Real>
Real whittaker_m(const Real& mu, const Real& nu, const Real& y) {
    return whittaker_m_info(mu, nu, y).value;
}

namespace hyp_detail {

// Tricomi U(a, b, y) = Gamma(a)^{-1} int_0^inf e^{-yt} t^{a-1} (1+t)^{b-a-1} dt, a > 0.
template <class Real>
Real tricomi_u_integral(const Real& a, const Real& b, const Real& y) {
    using std::exp;
    using std::log;
    using std::log1p;
    Real am1 = a - 1, p = b - a - 1;
    auto f = [&](const Real& t) -> Real {
        return exp(-y * t + am1 * log(t) + p * log1p(t));
    };
    auto r = exp_sinh(f, Real(0), 0.0, to_double(real_traits<Real>::epsilon()) * 64);
    return r.value / gamma(a);
}

// U(-n, b, y) = (-1)^n (b)_n M(-n, b, y)
template <class Real>
Real tricomi_u_polynomial(long n, const Real& b, const Real& y) {
    Real poch(1);
    for (long k = 0; k < n; ++k) poch *= (b + k);
    Real s = poch * kummer_m(Real(-n), b, y);
    return (n % 2) ? Real(-s) : s;
}

}  // namespace hyp_detail

// W_{mu,nu}(y). For 2 nu not an integer, the Gamma-weighted combination of
// M_{mu,nu} and M_{mu,-nu}; otherwise e^{-y/2} y^{nu+1/2} U(nu - mu + 1/2, 1 + 2 nu, y).
template <class Real>
Real whittaker_w(const Real& mu, const Real& nu, const Real& y) {
    using std::exp;
    using std::fabs;
    using std::floor;
    using std::log2;
    using std::pow;
    using std::round;
    if (!(y > 0)) throw domain_error("whittaker_w: y must be positive");
    Real two_nu = 2 * nu;
    Real a = nu - mu + Real(0.5);
    double gap = std::fabs(to_double(two_nu) - std::round(to_double(two_nu)));
    if (gap > 1e-12) {
        int extra = 24 + static_cast<int>(to_double(y) * 1.4426950408889634) +
                    static_cast<int>(std::log2(1.0 / gap) + 1);
        GuardBits<Real> g(extra);
        Real me = g.in(mu), ne = g.in(nu), ye = g.in(y);
        Real t1 = gamma(Real(-2 * ne)) * rgamma(Real(Real(0.5) - ne - me)) * whittaker_m(me, ne, ye);
        Real t2 = gamma(Real(2 * ne)) * rgamma(Real(Real(0.5) + ne - me)) * whittaker_m(me, Real(-ne), ye);
        return g.out(t1 + t2);
    }
    Real pre = exp(-y / 2) * pow(y, Real(nu + Real(0.5)));
    if (a > 0) return pre * hyp_detail::tricomi_u_integral(a, Real(1 + two_nu), y);
    if (floor(a) == a) return pre * hyp_detail::tricomi_u_polynomial(-hyp_detail::to_long(a), Real(1 + two_nu), y);
    throw domain_error("whittaker_w: integral 2 nu with non-integral a = nu - mu + 1/2 <= 0 is not supported");
}

}  // namespace cyclotrace
