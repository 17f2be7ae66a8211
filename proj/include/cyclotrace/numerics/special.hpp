#pragma once

#include <boost/math/special_functions/digamma.hpp>
#include <cmath>

#include "complex.hpp"
#include "errors.hpp"
#include "real_traits.hpp"

// Gamma, digamma and zeta are delegated to MPFR (ExtReal) and the C++ standard
// library / Boost.Math (double).

namespace cyclotrace {

namespace detail {
template <class Real>
inline bool is_nonpositive_integer(const Real& x) {
    using std::floor;
    return x <= 0 && floor(x) == x;
}
}  // namespace detail

template <class Real>
Real gamma(const Real& x) {
    if (detail::is_nonpositive_integer(x)) throw domain_error("gamma: pole at non-positive integer");
    if constexpr (real_traits<Real>::extended) {
        Real r(x);
        mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
        return r;
    } else {
        return std::tgamma(x);
    }
}

// log|Gamma(x)|
template <class Real>
Real lgamma(const Real& x) {
    if (detail::is_nonpositive_integer(x)) throw domain_error("lgamma: pole at non-positive integer");
    if constexpr (real_traits<Real>::extended) {
        Real r(x);
        int sgn = 0;
        mpfr_lgamma(r.raw(), &sgn, x.raw(), MPFR_RNDN);
        return r;
    } else {
        return std::lgamma(x);
    }
}

// 1/Gamma(x), entire; zero at the poles of Gamma.
template <class Real>
Real rgamma(const Real& x) {
    if (detail::is_nonpositive_integer(x)) return Real(0) * x;
    return Real(1) / gamma(x);
}

template <class Real>
Real digamma(const Real& x) {
    if (detail::is_nonpositive_integer(x)) throw domain_error("digamma: pole at non-positive integer");
    if constexpr (real_traits<Real>::extended) {
        Real r(x);
        mpfr_digamma(r.raw(), x.raw(), MPFR_RNDN);
        return r;
    } else {
        return boost::math::digamma(x);
    }
}

template <class Real>
Real zeta(const Real& s) {
    if (s == 1) throw domain_error("zeta: pole at s = 1");
    if constexpr (real_traits<Real>::extended) {
        Real r(s);
        mpfr_zeta(r.raw(), s.raw(), MPFR_RNDN);
        return r;
    } else {
        return std::riemann_zeta(s);
    }
}

// xi(s) = pi^{-s/2} Gamma(s/2) zeta(s)
template <class Real>
Real xi_completed(const Real& s) {
    using std::pow;
    if (s == 0 || s == 1) throw domain_error("xi_completed: pole at s = 0 or 1");
    Real half = s / 2;
    return pow(pi_v<Real>(), -half) * gamma(half) * zeta(s);
}

}  // namespace cyclotrace
