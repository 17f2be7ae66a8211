#pragma once

#include <cmath>
#include <ostream>

#include "real_traits.hpp"

namespace cyclotrace {

// Minimal complex type that works for both double and ExtReal
// (std::complex is unspecified for non-builtin scalars).
template <class Real>
struct Complex {
    Real re{};
    Real im{};

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
    Complex(T r) : re(r), im(0) {}  // NOLINT

    static Complex i() { return Complex(Real(0), Real(1)); }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        Real den = o.re * o.re + o.im * o.im;
        Real r = (re * o.re + im * o.im) / den;
        im = (im * o.re - re * o.im) / den;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
    Complex& operator/=(const Real& s) { re /= s; im /= s; return *this; }

    Complex operator-() const { return Complex(-re, -im); }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const Real& s) { return a *= s; }
    friend Complex operator*(const Real& s, Complex a) { return a *= s; }
    friend Complex operator/(Complex a, const Real& s) { return a /= s; }
    friend Complex operator+(Complex a, const Real& s) { a.re += s; return a; }
    friend Complex operator-(Complex a, const Real& s) { a.re -= s; return a; }

    friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
        return os << "(" << z.re << ", " << z.im << ")";
    }
};

using ExtComplex = Complex<ExtReal>;

template <class Real>
inline Complex<Real> conj(const Complex<Real>& z) { return Complex<Real>(z.re, -z.im); }

template <class Real>
inline Real norm(const Complex<Real>& z) { return z.re * z.re + z.im * z.im; }

template <class Real>
inline Real abs(const Complex<Real>& z) {
    using std::hypot;
    return hypot(z.re, z.im);
}

template <class Real>
inline Real arg(const Complex<Real>& z) {
    using std::atan2;
    return atan2(z.im, z.re);
}

// cos t + i sin t
template <class Real>
inline Complex<Real> expi(const Real& t) {
    using std::cos;
    using std::sin;
    return Complex<Real>(cos(t), sin(t));
}

template <class Real>
inline Complex<Real> exp(const Complex<Real>& z) {
    using std::exp;
    return expi(z.im) * exp(z.re);
}

// e(x) = exp(2 pi i x)
template <class Real>
inline Complex<Real> e_of(const Real& x) {
    return expi(Real(2 * pi_v<Real>() * x));
}

template <class Real>
inline Complex<Real> sqrt(const Complex<Real>& z) {
    using std::sqrt;
    Real r = abs(z);
    Real a = sqrt((r + z.re) / 2);
    Real b = sqrt((r - z.re) / 2);
    if (z.im < 0) b = -b;
    return Complex<Real>(a, b);
}

template <class Real>
inline Complex<Real> rounded(const Complex<Real>& z, unsigned bits) {
    if constexpr (real_traits<Real>::extended)
        return Complex<Real>(z.re.rounded(bits), z.im.rounded(bits));
    else
        return z;
}

template <class To, class From>
inline Complex<To> complex_cast(const Complex<From>& z) {
    if constexpr (std::is_same_v<To, From>)
        return z;
    else if constexpr (std::is_same_v<To, double>)
        return Complex<double>(to_double(z.re), to_double(z.im));
    else
        return Complex<To>(To(z.re), To(z.im));
}

}  // namespace cyclotrace
