#pragma once

#include <cmath>
#include <limits>
#include <string>

#include <gmpxx.h>

#include "ext_real.hpp"

namespace cyclotrace {

template <class Real>
struct real_traits;

template <>
struct real_traits<double> {
    static constexpr bool extended = false;
    static double pi() { return 3.141592653589793238462643383279502884; }
    static double ln2() { return 0.693147180559945309417232121458176568; }
    static double epsilon() { return std::numeric_limits<double>::epsilon(); }
    static unsigned bits() { return 53; }
    static double from(double x) { return x; }
    static double from_string(const std::string& s) { return std::stod(s); }
    static double to_double(double x) { return x; }
};

template <>
struct real_traits<ExtReal> {
    static constexpr bool extended = true;
    static ExtReal pi() { return ExtReal::pi(); }
    static ExtReal ln2() { return ExtReal::ln2(); }
    static ExtReal epsilon() { return ExtReal::pow2(1 - static_cast<long>(working_precision())); }
    static unsigned bits() { return working_precision(); }
    static ExtReal from(double x) { return ExtReal(x); }
    static ExtReal from_string(const std::string& s) { return ExtReal::from_string(s); }
    static double to_double(const ExtReal& x) { return x.to_double(); }
};

template <class Real>
inline Real pi_v() { return real_traits<Real>::pi(); }

template <class Real>
inline double to_double(const Real& x) { return real_traits<Real>::to_double(x); }

// Exact integers/rationals rounded to Real at the working precision.
template <class Real>
inline Real to_real(const mpz_class& z) {
    if constexpr (std::is_same_v<Real, double>) {
        return z.get_d();
    } else {
        Real r;
        mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN);
        return r;
    }
}

template <class Real>
inline Real to_real(const mpq_class& q) {
    if constexpr (std::is_same_v<Real, double>) {
        return q.get_d();
    } else {
        Real r;
        mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
}

template <class Real>
inline Real to_real(const Real& x) {
    return x;
}

template <class Real>
    requires(!std::is_same_v<Real, double>)
inline Real to_real(double x) {
    return Real(x);
}

// Extra mantissa for a cancellation-prone evaluation; a no-op for double.
//   GuardBits<Real> g(extra); Real xi = g.in(x); ...; return g.out(r);
template <class Real>
class GuardBits {
public:
    explicit GuardBits(int) {}
    const Real& in(const Real& x) const { return x; }
    const Real& out(const Real& x) const { return x; }
    unsigned bits() const { return real_traits<Real>::bits(); }
};

template <>
class GuardBits<ExtReal> {
public:
    explicit GuardBits(int extra)
        : outer_(working_precision()), ctx_(working_precision() + static_cast<unsigned>(extra > 0 ? extra : 0)) {}
    ExtReal in(const ExtReal& x) const { return x.rounded(working_precision()); }
    ExtReal out(const ExtReal& x) const { return x.rounded(outer_); }
    unsigned bits() const { return working_precision(); }

private:
    unsigned outer_;
    PrecisionContext ctx_;
};

}  // namespace cyclotrace
