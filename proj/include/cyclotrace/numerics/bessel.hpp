#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "differentiation.hpp"
#include "errors.hpp"
#include "real_traits.hpp"
#include "special.hpp"

namespace cyclotrace {

namespace bessel_detail {

// Switchover point between the small-x and large-x branches. The Hankel
// expansions are accurate to roughly e^{-2x}, so the seam moves outward with
// the working precision.
template <class Real>
double seam(double nu) {
    double bits = real_traits<Real>::bits();
    return std::max({12.0, 2.0 * std::fabs(nu), 0.5 * (bits + 8) * 0.6931471805599453});
}

template <class Real>
Real i_series(const Real& nu, const Real& x) {
    using std::pow;
    using std::fabs;
    Real half = x / 2;
    Real q = half * half;
    Real term = pow(half, nu) / gamma(Real(nu + 1));
    Real sum = term;
    Real eps = real_traits<Real>::epsilon();
    for (long k = 1; k < 100000; ++k) {
        term *= q;
        term /= Real(k) * (nu + k);
        sum += term;
        if (k > to_double(half) && fabs(term) <= eps * fabs(sum)) return sum;
    }
    throw convergence_error("bessel_i series did not converge");
}

template <class Real>
Real j_series(const Real& nu, const Real& x) {
    using std::pow;
    using std::fabs;
    int extra = static_cast<int>(to_double(x) * 1.4426950408889634) + 16;
    GuardBits<Real> g(extra);
    Real xe = g.in(x), ne = g.in(nu);
    Real half = xe / 2;
    Real q = half * half;
    Real term = pow(half, ne) / gamma(Real(ne + 1));
    Real sum = term;
    Real peak = fabs(term);
    Real eps = real_traits<Real>::epsilon();
    for (long k = 1; k < 100000; ++k) {
        term *= q;
        term /= Real(-k) * (ne + k);
        sum += term;
        if (fabs(term) > peak) peak = fabs(term);
        if (k > to_double(half) && fabs(term) <= eps * peak) return g.out(sum);
    }
    throw convergence_error("bessel_j series did not converge");
}

// Hankel coefficients a_k(nu)/x^k, summed with the caller's sign pattern.
// sign_mode 0: all +, 1: alternating (-1)^k.
template <class Real>
Real hankel_sum(const Real& nu, const Real& x, int sign_mode) {
    using std::fabs;
    Real mu = 4 * nu * nu;
    Real term(1), sum(1);
    Real eps = real_traits<Real>::epsilon();
    Real prev = fabs(term);
    for (long k = 1; k < 100000; ++k) {
        term *= (mu - Real((2 * k - 1) * (2 * k - 1)));
        term /= Real(8 * k) * x;
        Real t = (sign_mode == 1 && (k & 1)) ? Real(-term) : term;
        if (fabs(term) > prev && k > 2) throw convergence_error("Hankel expansion diverged before reaching precision");
        sum += t;
        prev = fabs(term);
        if (fabs(term) <= eps * fabs(sum)) return sum;
    }
    throw convergence_error("Hankel expansion did not converge");
}

template <class Real>
Real i_asymptotic(const Real& nu, const Real& x) {
    using std::exp;
    using std::sqrt;
    return exp(x) / sqrt(2 * pi_v<Real>() * x) * hankel_sum(nu, x, 1);
}

template <class Real>
Real k_asymptotic(const Real& nu, const Real& x) {
    using std::exp;
    using std::sqrt;
    return sqrt(pi_v<Real>() / (2 * x)) * exp(-x) * hankel_sum(nu, x, 0);
}

template <class Real>
Real j_asymptotic(const Real& nu, const Real& x) {
    using std::cos;
    using std::fabs;
    using std::sin;
    using std::sqrt;
    Real mu = 4 * nu * nu;
    Real term(1), P(1), Q(0);
    Real eps = real_traits<Real>::epsilon();
    Real prev = term;
    for (long k = 1; k < 100000; ++k) {
        term *= (mu - Real((2 * k - 1) * (2 * k - 1)));
        term /= Real(8 * k) * x;
        if (fabs(term) > fabs(prev) && k > 2) throw convergence_error("Hankel expansion diverged before reaching precision");
        // P takes even k with sign (-1)^{k/2}; Q takes odd k with sign (-1)^{(k-1)/2}
        long r = k % 4;
        if (r == 0) P += term;
        else if (r == 2) P -= term;
        else if (r == 1) Q += term;
        else Q -= term;
        prev = term;
        if (fabs(term) <= eps * (fabs(P) + fabs(Q))) break;
    }
    Real chi = x - (nu / 2 + Real(1) / 4) * pi_v<Real>();
    return sqrt(2 / (pi_v<Real>() * x)) * (P * cos(chi) - Q * sin(chi));
}

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by the trapezoid rule; the
// integrand is analytic in |Im t| < pi/2 so the error decays like exp(-pi^2/h).
template <class Real>
Real k_integral(const Real& nu, const Real& x) {
    using std::exp;
    using std::fabs;
    GuardBits<Real> g(16);
    Real xe = g.in(x), ne = g.in(nu);
    // Shifting the contour to Im t = a costs a factor e^{x(1 - cos a)}; take
    // the step that balances it against the e^{-2 pi a / h} decay.
    double budget = (real_traits<Real>::bits() + 20.0) * 0.6931471805599453;
    double xd0 = to_double(x), hd = 0;
    for (int i = 1; i <= 400; ++i) {
        double a = 1.5707963267948966 * i / 400;
        hd = std::max(hd, 2 * 3.141592653589793 * a / (xd0 * (1 - std::cos(a)) + budget));
    }
    Real h(hd);
    Real eh = exp(h), enh = exp(ne * h);
    Real E(1), F(1);
    Real sum = exp(-xe) / 2;
    Real eps = real_traits<Real>::epsilon();
    double xd = to_double(x), nd = std::fabs(to_double(nu));
    for (long k = 1; k < 1000000; ++k) {
        E *= eh;
        F *= enh;
        Real ch = (E + 1 / E) / 2;
        Real f = exp(-xe * ch) * (F + 1 / F) / 2;
        sum += f;
        double t = k * hd;
        if (xd * std::sinh(t) > nd && f <= eps * sum) return g.out(sum * h);
    }
    throw convergence_error("bessel_k quadrature did not converge");
}

}  // namespace bessel_detail

template <class Real>
Real bessel_i(const Real& nu, const Real& x) {
    if (!(x > 0)) throw domain_error("bessel_i: x must be positive");
    if (nu < Real(-0.5)) throw domain_error("bessel_i: order below -1/2");
    if constexpr (!real_traits<Real>::extended) {
        if (nu < 0) return std::cyl_bessel_i(-nu, x) - 2 / M_PI * std::sin(nu * M_PI) * std::cyl_bessel_k(-nu, x);
        return std::cyl_bessel_i(nu, x);
    } else {
        if (to_double(x) < bessel_detail::seam<Real>(to_double(nu))) return bessel_detail::i_series(nu, x);
        return bessel_detail::i_asymptotic(nu, x);
    }
}

template <class Real>
Real bessel_j(const Real& nu, const Real& x) {
    if (!(x > 0)) throw domain_error("bessel_j: x must be positive");
    if constexpr (!real_traits<Real>::extended) {
        if (nu < 0)
            return std::cos(nu * M_PI) * std::cyl_bessel_j(-nu, x) + std::sin(nu * M_PI) * std::cyl_neumann(-nu, x);
        return std::cyl_bessel_j(nu, x);
    } else {
        if (to_double(x) < bessel_detail::seam<Real>(to_double(nu))) return bessel_detail::j_series(nu, x);
        return bessel_detail::j_asymptotic(nu, x);
    }
}

template <class Real>
Real bessel_k(const Real& nu, const Real& x) {
    using std::fabs;
    if (!(x > 0)) throw domain_error("bessel_k: x must be positive");
    if constexpr (!real_traits<Real>::extended) {
        return std::cyl_bessel_k(std::fabs(nu), x);
    } else {
        if (to_double(x) < bessel_detail::seam<Real>(to_double(nu))) return bessel_detail::k_integral(nu, x);
        return bessel_detail::k_asymptotic(nu, x);
    }
}

// d/dnu J_nu(x): central differences at h and h/2 combined by Richardson.
template <class Real>
DerivativeEstimate<Real> bessel_j_dorder(const Real& nu, const Real& x, const Real& h, double tol = 0) {
    using std::fabs;
    if (!(x > 0)) throw domain_error("bessel_j_dorder: x must be positive");
    if (!(h > 0) || h > Real(1e-2)) throw domain_error("bessel_j_dorder: need 0 < h <= 1e-2");
    auto d = richardson_derivative([&](const Real& v) { return bessel_j(v, x); }, nu, h);
    Real err = d.error;
    if (tol > 0 && err > Real(tol))
        throw convergence_error("bessel_j_dorder: Richardson disagreement above tolerance");
    return d;
}

}  // namespace cyclotrace
