#pragma once

#include <cmath>

#include "complex.hpp"
#include "errors.hpp"
#include "real_traits.hpp"
#include "special.hpp"

namespace cyclotrace {

namespace incgamma_detail {

// sum_{n>=0} z^n / (n! (a+n)); z may be negative. Cancellation for z < 0 is
// absorbed by guard bits chosen by the caller.
template <class Real>
Real lower_series(const Real& a, const Real& z) {
    using std::fabs;
    Real term(1);  // z^n / n!
    Real sum = term / a;
    Real eps = real_traits<Real>::epsilon();
    double zd = std::fabs(to_double(z));
    for (long n = 1; n < 1000000; ++n) {
        term *= z;
        term /= n;
        Real t = term / (a + n);
        sum += t;
        if (n > zd && fabs(t) <= eps * fabs(sum)) return sum;
    }
    throw convergence_error("incomplete gamma series did not converge");
}

// Gamma(a,x) = e^{-x} x^a / (x + 1 - a - 1(1-a)/(x + 3 - a - ...)), modified Lentz.
template <class Real>
Real upper_cf(const Real& a, const Real& x) {
    using std::exp;
    using std::fabs;
    using std::pow;
    Real tiny = real_traits<Real>::epsilon() * real_traits<Real>::epsilon() * Real(1e-30);
    Real eps = real_traits<Real>::epsilon();
    Real b = x + 1 - a;
    Real c = 1 / tiny;
    Real d = 1 / b;
    Real h = d;
    for (long i = 1; i < 1000000; ++i) {
        Real an = -Real(i) * (Real(i) - a);
        b += 2;
        d = an * d + b;
        if (fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (fabs(c) < tiny) c = tiny;
        d = 1 / d;
        Real del = d * c;
        h *= del;
        if (fabs(del - 1) <= eps) return exp(-x) * pow(x, a) * h;
    }
    throw convergence_error("incomplete gamma continued fraction did not converge");
}

}  // namespace incgamma_detail

// Upper incomplete gamma Gamma(a, x) for real a and x > 0.
template <class Real>
Real inc_gamma_upper(const Real& a, const Real& x) {
    using std::exp;
    using std::floor;
    using std::pow;
    if (!(x > 0)) throw domain_error("inc_gamma_upper: x must be positive");
    if (x >= a + 1) return incgamma_detail::upper_cf(a, x);
    if (a <= 0 && floor(a) == a)
        throw domain_error("inc_gamma_upper: non-positive integer order below the continued-fraction range");
    using std::fabs;
    GuardBits<Real> g(16);
    Real ae = g.in(a), xe = g.in(x);
    // gamma(a,x) = x^a e^{-x} sum x^n / (a (a+1) ... (a+n))
    Real term = 1 / ae, sum = term;
    Real eps = real_traits<Real>::epsilon();
    for (long n = 1;; ++n) {
        if (n > 1000000) throw convergence_error("incomplete gamma series did not converge");
        term *= xe / (ae + n);
        sum += term;
        if (Real(n) > xe && fabs(term) <= eps * fabs(sum)) break;
    }
    return g.out(gamma(ae) - pow(xe, ae) * exp(-xe) * sum);
}

// Gamma(a, -X) for X > 0 on the principal branch:
//   Gamma(a, -X) = Gamma(a) - X^a e^{i pi a} sum_{n>=0} X^n / (n! (a+n)).
template <class Real>
Complex<Real> inc_gamma_upper_negative(const Real& a, const Real& X) {
    using std::cos;
    using std::floor;
    using std::pow;
    using std::sin;
    if (!(X > 0)) throw domain_error("inc_gamma_upper_negative: X must be positive");
    if (a <= 0 && floor(a) == a) throw domain_error("inc_gamma_upper_negative: non-positive integer order");
    Real s = pow(X, a) * incgamma_detail::lower_series(a, X);
    Real pa = pi_v<Real>() * a;
    return Complex<Real>(gamma(a) - s * cos(pa), -s * sin(pa));
}

}  // namespace cyclotrace
