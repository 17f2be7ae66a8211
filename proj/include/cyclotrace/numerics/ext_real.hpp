#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <climits>
#include <cstdint>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>

#include "errors.hpp"

namespace cyclotrace {

inline constexpr unsigned default_precision_bits = 256;

namespace detail {
inline unsigned& precision_slot() {
    thread_local unsigned bits = default_precision_bits;
    return bits;
}
}  // namespace detail

// Mantissa width used for newly created ExtReal values on this thread.
inline unsigned working_precision() { return detail::precision_slot(); }

// Scoped precision: values created inside the scope carry `bits` of mantissa.
class PrecisionContext {
public:
    explicit PrecisionContext(unsigned bits) : saved_(detail::precision_slot()) {
        if (bits < MPFR_PREC_MIN || bits > 1u << 20)
            throw domain_error("precision out of range: " + std::to_string(bits));
        detail::precision_slot() = bits;
    }
    ~PrecisionContext() { detail::precision_slot() = saved_; }
    PrecisionContext(const PrecisionContext&) = delete;
    PrecisionContext& operator=(const PrecisionContext&) = delete;
    unsigned outer() const { return saved_; }

private:
    unsigned saved_;
};

class ExtReal {
public:
    ExtReal() { mpfr_init2(v_, working_precision()); mpfr_set_zero(v_, 1); }

    template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    ExtReal(T x) {  // NOLINT: implicit by design, mirrors builtin promotion
        mpfr_init2(v_, working_precision());
        if constexpr (std::is_signed_v<T>)
            mpfr_set_si(v_, static_cast<long>(x), MPFR_RNDN);
        else
            mpfr_set_ui(v_, static_cast<unsigned long>(x), MPFR_RNDN);
    }

    template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
    ExtReal(T x) {  // NOLINT
        mpfr_init2(v_, working_precision());
        mpfr_set_d(v_, static_cast<double>(x), MPFR_RNDN);
    }

    ExtReal(const ExtReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    ExtReal(ExtReal&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    // Rounds `o` to `bits` of mantissa.
    ExtReal(const ExtReal& o, unsigned bits) {
        mpfr_init2(v_, bits);
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    ~ExtReal() { mpfr_clear(v_); }

    ExtReal& operator=(const ExtReal& o) {
        if (this != &o) {
            if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ExtReal& operator=(ExtReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    static ExtReal from_string(const std::string& s) {
        ExtReal r;
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 && mpfr_nan_p(r.v_))
            throw domain_error("not a decimal number: " + s);
        return r;
    }
    static ExtReal pi() {
        ExtReal r;
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static ExtReal ln2() {
        ExtReal r;
        mpfr_const_log2(r.v_, MPFR_RNDN);
        return r;
    }
    static ExtReal euler_gamma() {
        ExtReal r;
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }
    // 2^e at the working precision.
    static ExtReal pow2(long e) {
        ExtReal r(1);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
    ExtReal rounded(unsigned bits) const { return ExtReal(*this, bits); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    explicit operator double() const { return to_double(); }

    // Decimal string with `digits` significant digits (%Rg style, trailing zeros trimmed).
    std::string str(int digits = 0) const {
        if (digits <= 0) digits = static_cast<int>(precision() * 0.30103) + 1;
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    long exponent2() const { return is_zero() ? LONG_MIN / 2 : mpfr_get_exp(v_); }

    ExtReal operator-() const {
        ExtReal r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    ExtReal& operator+=(const ExtReal& o) { check(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    ExtReal& operator-=(const ExtReal& o) { check(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    ExtReal& operator*=(const ExtReal& o) { check(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    ExtReal& operator/=(const ExtReal& o) { check(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    ExtReal& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
    ExtReal& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
    ExtReal& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
    ExtReal& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

    friend ExtReal operator+(ExtReal a, const ExtReal& b) { return a += b; }
    friend ExtReal operator-(ExtReal a, const ExtReal& b) { return a -= b; }
    friend ExtReal operator*(ExtReal a, const ExtReal& b) { return a *= b; }
    friend ExtReal operator/(ExtReal a, const ExtReal& b) { return a /= b; }

    template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    friend ExtReal operator+(ExtReal a, T b) { return a += static_cast<long>(b); }
    template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    friend ExtReal operator+(T b, ExtReal a) { return a += static_cast<long>(b); }
    template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    friend ExtReal operator-(ExtReal a, T b) { return a -= static_cast<long>(b); }
    template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    friend ExtReal operator-(T b, const ExtReal& a) {
        ExtReal r(a);
        mpfr_si_sub(r.v_, static_cast<long>(b), a.v_, MPFR_RNDN);
        return r;
    }
    template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    friend ExtReal operator*(ExtReal a, T b) { return a *= static_cast<long>(b); }
    template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    friend ExtReal operator*(T b, ExtReal a) { return a *= static_cast<long>(b); }
    template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    friend ExtReal operator/(ExtReal a, T b) { return a /= static_cast<long>(b); }
    template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
    friend ExtReal operator/(T b, const ExtReal& a) {
        ExtReal r(a);
        mpfr_si_div(r.v_, static_cast<long>(b), a.v_, MPFR_RNDN);
        return r;
    }

    template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
    friend ExtReal operator+(const ExtReal& a, T b) { return a + ExtReal(ExtReal(b), a.precision()); }
    template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
    friend ExtReal operator+(T b, const ExtReal& a) { return a + b; }
    template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
    friend ExtReal operator-(const ExtReal& a, T b) { return a - ExtReal(ExtReal(b), a.precision()); }
    template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
    friend ExtReal operator-(T b, const ExtReal& a) { return ExtReal(ExtReal(b), a.precision()) - a; }
    template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
    friend ExtReal operator*(const ExtReal& a, T b) { return a * ExtReal(ExtReal(b), a.precision()); }
    template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
    friend ExtReal operator*(T b, const ExtReal& a) { return a * b; }
    template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
    friend ExtReal operator/(const ExtReal& a, T b) { return a / ExtReal(ExtReal(b), a.precision()); }
    template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
    friend ExtReal operator/(T b, const ExtReal& a) { return ExtReal(ExtReal(b), a.precision()) / a; }

    friend bool operator==(const ExtReal& a, const ExtReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
    friend bool operator<(const ExtReal& a, const ExtReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const ExtReal& a, const ExtReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const ExtReal& a, const ExtReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const ExtReal& a, const ExtReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
    friend bool operator<(const ExtReal& a, T b) { return cmp(a, b) < 0; }
    template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
    friend bool operator>(const ExtReal& a, T b) { return cmp(a, b) > 0; }
    template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
    friend bool operator<=(const ExtReal& a, T b) { return cmp(a, b) <= 0; }
    template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
    friend bool operator>=(const ExtReal& a, T b) { return cmp(a, b) >= 0; }
    template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
    friend bool operator==(const ExtReal& a, T b) { return cmp(a, b) == 0; }
    template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
    friend bool operator!=(const ExtReal& a, T b) { return cmp(a, b) != 0; }
    template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
    friend bool operator<(T b, const ExtReal& a) { return cmp(a, b) > 0; }
    template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
    friend bool operator>(T b, const ExtReal& a) { return cmp(a, b) < 0; }

    friend std::ostream& operator<<(std::ostream& os, const ExtReal& x) { return os << x.str(30); }

private:
    template <class T>
    static int cmp(const ExtReal& a, T b) {
        if constexpr (std::is_floating_point_v<T>)
            return mpfr_cmp_d(a.v_, static_cast<double>(b));
        else if constexpr (std::is_signed_v<T>)
            return mpfr_cmp_si(a.v_, static_cast<long>(b));
        else
            return mpfr_cmp_ui(a.v_, static_cast<unsigned long>(b));
    }
    void check(const ExtReal& o) const {
        if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_))
            throw precision_error("ExtReal precision mismatch: " + std::to_string(mpfr_get_prec(v_)) +
                                  " vs " + std::to_string(mpfr_get_prec(o.v_)));
    }

    mpfr_t v_;
};

namespace detail {
template <class F>
inline ExtReal unary(const ExtReal& x, F f) {
    ExtReal r(x);
    f(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
}  // namespace detail

inline ExtReal sqrt(const ExtReal& x) { return detail::unary(x, mpfr_sqrt); }
inline ExtReal cbrt(const ExtReal& x) { return detail::unary(x, mpfr_cbrt); }
inline ExtReal exp(const ExtReal& x) { return detail::unary(x, mpfr_exp); }
inline ExtReal expm1(const ExtReal& x) { return detail::unary(x, mpfr_expm1); }
inline ExtReal log(const ExtReal& x) { return detail::unary(x, mpfr_log); }
inline ExtReal log1p(const ExtReal& x) { return detail::unary(x, mpfr_log1p); }
inline ExtReal log2(const ExtReal& x) { return detail::unary(x, mpfr_log2); }
inline ExtReal sin(const ExtReal& x) { return detail::unary(x, mpfr_sin); }
inline ExtReal cos(const ExtReal& x) { return detail::unary(x, mpfr_cos); }
inline ExtReal tan(const ExtReal& x) { return detail::unary(x, mpfr_tan); }
inline ExtReal atan(const ExtReal& x) { return detail::unary(x, mpfr_atan); }
inline ExtReal asin(const ExtReal& x) { return detail::unary(x, mpfr_asin); }
inline ExtReal acos(const ExtReal& x) { return detail::unary(x, mpfr_acos); }
inline ExtReal sinh(const ExtReal& x) { return detail::unary(x, mpfr_sinh); }
inline ExtReal cosh(const ExtReal& x) { return detail::unary(x, mpfr_cosh); }
inline ExtReal tanh(const ExtReal& x) { return detail::unary(x, mpfr_tanh); }
inline ExtReal asinh(const ExtReal& x) { return detail::unary(x, mpfr_asinh); }
inline ExtReal acosh(const ExtReal& x) { return detail::unary(x, mpfr_acosh); }
inline ExtReal abs(const ExtReal& x) { return detail::unary(x, mpfr_abs); }
inline ExtReal fabs(const ExtReal& x) { return abs(x); }
inline ExtReal erf(const ExtReal& x) { return detail::unary(x, mpfr_erf); }
inline ExtReal erfc(const ExtReal& x) { return detail::unary(x, mpfr_erfc); }

inline ExtReal floor(const ExtReal& x) {
    ExtReal r(x);
    mpfr_floor(r.raw(), x.raw());
    return r;
}
inline ExtReal ceil(const ExtReal& x) {
    ExtReal r(x);
    mpfr_ceil(r.raw(), x.raw());
    return r;
}
inline ExtReal round(const ExtReal& x) {
    ExtReal r(x);
    mpfr_round(r.raw(), x.raw());
    return r;
}
inline ExtReal trunc(const ExtReal& x) {
    ExtReal r(x);
    mpfr_trunc(r.raw(), x.raw());
    return r;
}
inline long lround(const ExtReal& x) { return round(x).to_long(); }

inline ExtReal atan2(const ExtReal& y, const ExtReal& x) {
    if (y.precision() != x.precision()) throw precision_error("atan2 precision mismatch");
    ExtReal r(y);
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline ExtReal hypot(const ExtReal& x, const ExtReal& y) {
    if (y.precision() != x.precision()) throw precision_error("hypot precision mismatch");
    ExtReal r(x);
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
inline ExtReal pow(const ExtReal& x, const ExtReal& y) {
    if (y.precision() != x.precision()) throw precision_error("pow precision mismatch");
    ExtReal r(x);
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
inline ExtReal pow(const ExtReal& x, long n) {
    ExtReal r(x);
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
inline ExtReal pow(const ExtReal& x, int n) { return pow(x, static_cast<long>(n)); }
inline ExtReal pow(const ExtReal& x, double y) { return pow(x, ExtReal(ExtReal(y), x.precision())); }
inline ExtReal ldexp(const ExtReal& x, long e) {
    ExtReal r(x);
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}
inline ExtReal fmax(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }
inline ExtReal fmin(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
inline bool isfinite(const ExtReal& x) { return x.is_finite(); }
inline bool signbit(const ExtReal& x) { return mpfr_signbit(x.raw()) != 0; }

inline void sin_cos(const ExtReal& x, ExtReal& s, ExtReal& c) {
    s = ExtReal(x);
    c = ExtReal(x);
    mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}

}  // namespace cyclotrace
