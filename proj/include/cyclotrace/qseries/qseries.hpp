#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "../numerics/errors.hpp"
#include "../numerics/ext_real.hpp"
#include "../numerics/real_traits.hpp"

namespace cyclotrace {

// Residue-class support of a plus-space series.
enum class Support {
    none,
    plus_half,         // c_n = 0 unless n = 0, 1 (mod 4)
    plus_three_halves  // c_n = 0 unless n = 0, 3 (mod 4)
};

inline const char* support_name(Support s) {
    switch (s) {
        case Support::plus_half: return "plus_1/2";
        case Support::plus_three_halves: return "plus_3/2";
        default: return "none";
    }
}

inline bool in_support(Support s, long n) {
    long r = ((n % 4) + 4) % 4;
    switch (s) {
        case Support::plus_half: return r == 0 || r == 1;
        case Support::plus_three_halves: return r == 0 || r == 3;
        default: return true;
    }
}

namespace qs_detail {

inline bool is_zero(const mpz_class& x) { return x == 0; }
inline bool is_zero(const mpq_class& x) { return x == 0; }
inline bool is_zero(const ExtReal& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0; }

// x / b for the leading coefficient b of a divisor. Integers must divide exactly.
inline mpz_class divide_lead(const mpz_class& x, const mpz_class& b) {
    if (!mpz_divisible_p(x.get_mpz_t(), b.get_mpz_t()))
        throw domain_error("QSeries division: leading coefficient does not divide exactly over the integers");
    mpz_class r;
    mpz_divexact(r.get_mpz_t(), x.get_mpz_t(), b.get_mpz_t());
    return r;
}
inline mpq_class divide_lead(const mpq_class& x, const mpq_class& b) {
    mpq_class r = x / b;
    r.canonicalize();
    return r;
}
inline ExtReal divide_lead(const ExtReal& x, const ExtReal& b) { return x / b; }
inline double divide_lead(double x, double b) { return x / b; }

template <class T>
inline void normalize(T&) {}
inline void normalize(mpq_class& x) { x.canonicalize(); }

}  // namespace qs_detail

// Truncated Laurent series sum_{n=v}^{N} c_n q^n. Coefficients above N are
// unknown; reading them throws.
template <class T>
class QSeries {
public:
    QSeries() = default;

    QSeries(long valuation, std::vector<T> coeffs, Support s = Support::none)
        : val_(valuation), N_(valuation + static_cast<long>(coeffs.size()) - 1), c_(std::move(coeffs)), support_(s) {}

    // Zero series known through q^N.
    static QSeries zero(long N, long valuation = 0) {
        return QSeries(valuation, std::vector<T>(std::max<long>(0, N - valuation + 1), T(0)));
    }
    static QSeries monomial(long n, const T& c, long N) {
        QSeries r = zero(N, std::min(n, N));
        if (n <= N) r.c_[n - r.val_] = c;
        return r;
    }

    long valuation() const { return val_; }  // first stored index
    long precision() const { return N_; }    // last known index
    Support support() const { return support_; }
    void set_support(Support s) { support_ = s; }

    T coeff(long n) const {
        if (n > N_) throw domain_error("QSeries: coefficient q^" + std::to_string(n) + " beyond known precision q^" +
                                       std::to_string(N_));
        if (n < val_) return T(0);
        return c_[n - val_];
    }
    void set_coeff(long n, const T& v) {
        if (n > N_ || n < val_) throw domain_error("QSeries::set_coeff: index outside stored range");
        c_[n - val_] = v;
    }
    const std::vector<T>& coefficients() const { return c_; }

    // Index of the first nonzero coefficient; throws if none is known.
    long order() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!qs_detail::is_zero(c_[i])) return val_ + static_cast<long>(i);
        throw domain_error("QSeries::order: no nonzero coefficient within known precision");
    }

    bool satisfies_support() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!qs_detail::is_zero(c_[i]) && !in_support(support_, val_ + static_cast<long>(i))) return false;
        return true;
    }

    QSeries truncated(long N) const {
        if (N > N_) throw domain_error("QSeries::truncated: beyond known precision");
        QSeries r = *this;
        r.c_.resize(std::max<long>(0, N - val_ + 1));
        r.N_ = N;
        return r;
    }

    // q^k * A
    QSeries shifted(long k) const {
        QSeries r = *this;
        r.val_ += k;
        r.N_ += k;
        r.support_ = Support::none;
        return r;
    }

    // A(q^k)
    QSeries dilated(long k) const {
        if (k < 1) throw domain_error("QSeries::dilated: k must be positive");
        long v = val_ * k, N = N_ * k + (k - 1);
        std::vector<T> c(N - v + 1, T(0));
        for (size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
        return QSeries(v, std::move(c));
    }

    template <class U, class F>
    QSeries<U> map(F&& f) const {
        std::vector<U> c;
        c.reserve(c_.size());
        for (const T& x : c_) c.push_back(f(x));
        return QSeries<U>(val_, std::move(c), support_);
    }

    QSeries& operator+=(const QSeries& o) { return add_scaled(o, 1); }
    QSeries& operator-=(const QSeries& o) { return add_scaled(o, -1); }
    QSeries& operator*=(const T& s) {
        for (T& x : c_) {
            x *= s;
            qs_detail::normalize(x);
        }
        return *this;
    }
    QSeries operator-() const {
        QSeries r = *this;
        for (T& x : r.c_) x = -x;
        return r;
    }
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const T& s) { return a *= s; }
    friend QSeries operator*(const T& s, QSeries a) { return a *= s; }

    friend QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }
    friend QSeries operator/(const QSeries& a, const QSeries& b) { return div(a, b); }

    static QSeries mul(const QSeries& a, const QSeries& b) {
        if (a.c_.empty() || b.c_.empty()) throw domain_error("QSeries::mul: empty operand");
        long v = a.val_ + b.val_;
        long N = std::min(a.N_ + b.val_, b.N_ + a.val_);
        std::vector<T> c(std::max<long>(0, N - v + 1), T(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (qs_detail::is_zero(a.c_[i])) continue;
            long ni = a.val_ + static_cast<long>(i);
            for (size_t j = 0; j < b.c_.size(); ++j) {
                long n = ni + b.val_ + static_cast<long>(j);
                if (n > N) break;
                c[n - v] += a.c_[i] * b.c_[j];
            }
        }
        for (T& x : c) qs_detail::normalize(x);
        return QSeries(v, std::move(c));
    }

    // 1/B, valid to the length B determines.
    static QSeries inverse(const QSeries& b) {
        long vb = b.order();
        const T& b0 = b.coeff(vb);
        long L = b.N_ - vb;  // relative length
        std::vector<T> d(L + 1, T(0));
        T one(1);
        d[0] = qs_detail::divide_lead(one, b0);
        for (long k = 1; k <= L; ++k) {
            T s(0);
            for (long i = 1; i <= k; ++i) s += b.coeff(vb + i) * d[k - i];
            d[k] = qs_detail::divide_lead(T(-s), b0);
        }
        return QSeries(-vb, std::move(d));
    }

    static QSeries div(const QSeries& a, const QSeries& b) { return mul(a, inverse(b)); }

    static QSeries pow(const QSeries& a, unsigned k) {
        if (k == 0) return monomial(0, T(1), a.N_ - a.val_);
        QSeries base = a, acc;
        bool have = false;
        while (k) {
            if (k & 1) {
                acc = have ? mul(acc, base) : base;
                have = true;
            }
            k >>= 1;
            if (k) base = mul(base, base);
        }
        return acc;
    }

private:
    QSeries& add_scaled(const QSeries& o, int sign) {
        if (c_.empty()) {
            *this = sign > 0 ? o : -o;
            return *this;
        }
        long v = std::min(val_, o.val_);
        long N = std::min(N_, o.N_);
        std::vector<T> c(std::max<long>(0, N - v + 1), T(0));
        for (long n = v; n <= N; ++n) {
            T x = (n >= val_) ? c_[n - val_] : T(0);
            if (n >= o.val_) {
                if (sign > 0)
                    x += o.c_[n - o.val_];
                else
                    x -= o.c_[n - o.val_];
            }
            c[n - v] = x;
        }
        Support s = support_ == o.support_ ? support_ : Support::none;
        *this = QSeries(v, std::move(c), s);
        return *this;
    }

    long val_ = 0;
    long N_ = -1;
    std::vector<T> c_;
    Support support_ = Support::none;
};

using ZSeries = QSeries<mpz_class>;
using RSeries = QSeries<mpq_class>;

inline RSeries to_rational(const ZSeries& a) {
    return a.map<mpq_class>([](const mpz_class& x) { return mpq_class(x); });
}

// Exact conversion back; throws if a coefficient is not integral.
inline ZSeries to_integer(const RSeries& a) {
    return a.map<mpz_class>([](const mpq_class& x) {
        if (x.get_den() != 1) throw domain_error("QSeries: non-integral coefficient");
        return mpz_class(x.get_num());
    });
}

template <class Real, class T>
QSeries<Real> to_real_series(const QSeries<T>& a) {
    return a.template map<Real>([](const T& x) { return to_real<Real>(x); });
}

}  // namespace cyclotrace
