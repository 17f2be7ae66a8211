#pragma once

// Weakly holomorphic forms g_D (weight 3/2) and f_d (weight 1/2) on Gamma_0(4)
// in the plus space, Zagier's weight 3/2 Eisenstein series and the even/odd split.

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "../arithmetic/quadform.hpp"
#include "../numerics/complex.hpp"
#include "../numerics/errors.hpp"
#include "../qseries/evaluate.hpp"
#include "../qseries/modular.hpp"
#include "../traces/singular.hpp"

namespace cyclotrace {

enum class CoeffSource { principal, cm_trace, modular, support_zero, unavailable };

inline const char* coeff_source_name(CoeffSource s) {
    switch (s) {
        case CoeffSource::principal: return "principal";
        case CoeffSource::cm_trace: return "cm-trace";
        case CoeffSource::modular: return "modular";
        case CoeffSource::support_zero: return "support-zero";
        default: return "unavailable";
    }
}

// Integer q-series with one provenance flag per stored index.
struct TracedSeries {
    ZSeries series;
    std::vector<CoeffSource> source;

    CoeffSource source_at(long n) const {
        if (n < series.valuation() || n > series.precision())
            throw domain_error("TracedSeries: index " + std::to_string(n) + " outside the stored range");
        return source[n - series.valuation()];
    }
    bool available(long n) const { return source_at(n) != CoeffSource::unavailable; }
    mpz_class coeff(long n) const {
        if (!available(n)) throw domain_error("TracedSeries: coefficient " + std::to_string(n) + " is unavailable");
        return series.coeff(n);
    }
};

namespace mock_detail {

inline mpz_class round_to_integer(const ExtReal& x, double tol, const char* who) {
    ExtReal r = round(x);
    if (!(to_double(abs(ExtReal(x - r))) < tol))
        throw internal_error(std::string(who) + ": trace " + x.str(20) + " is not integral");
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), r.raw(), MPFR_RNDN);
    return z;
}

inline bool twist_column(long D) { return D == 1 || (D > 1 && is_fundamental_discriminant(D)); }

}  // namespace mock_detail

// g_D = q^{-D} - 2 delta_{D, square} - sum_{d < 0} Tr_{d,D}(J) q^{|d|}, through q^N.
inline ZSeries g_weakly_holo(long D, long N, const CmOptions& o = {}) {
    if (!mock_detail::twist_column(D)) throw domain_error("g_weakly_holo: D must be 1 or a positive fundamental discriminant");
    if (N < 1) throw domain_error("g_weakly_holo: N must be positive");
    std::vector<mpz_class> c(N + D + 1, 0);
    c[0] = 1;
    if (is_square(D)) c[D] = -2;
    for (long n = 3; n <= N; ++n) {
        if (!in_support(Support::plus_three_halves, n)) continue;
        c[n + D] = -mock_detail::round_to_integer(trace_cm(-n, D, o).value, 1e-6, "g_weakly_holo");
    }
    return ZSeries(-D, std::move(c), Support::plus_three_halves);
}

// f_d = q^d + sum_{D > 0} Tr_{d,D}(J) q^D through q^N. Only columns D = 1 and D
// fundamental are computed; the rest of the plus-space indices are unavailable.
inline TracedSeries f_weakly_holo(long d, long N, const CmOptions& o = {}) {
    if (d >= 0 || !is_discriminant(d)) throw domain_error("f_weakly_holo: d must be a negative discriminant");
    if (N < 1) throw domain_error("f_weakly_holo: N must be positive");
    const long L = N - d + 1;
    std::vector<mpz_class> c(L, 0);
    std::vector<CoeffSource> src(L, CoeffSource::support_zero);
    for (long n = d; n <= 0; ++n) src[n - d] = CoeffSource::principal;
    c[0] = 1;
    for (long D = 1; D <= N; ++D) {
        if (!in_support(Support::plus_half, D)) continue;
        if (!mock_detail::twist_column(D)) {
            src[D - d] = CoeffSource::unavailable;
            continue;
        }
        c[D - d] = mock_detail::round_to_integer(trace_cm(d, D, o).value, 1e-6, "f_weakly_holo");
        src[D - d] = CoeffSource::cm_trace;
    }
    return {ZSeries(d, std::move(c), Support::plus_half), std::move(src)};
}

namespace mock_detail {

// Unique solution of the consistent system A x = b over Q; throws when the
// columns are dependent or the rows are inconsistent.
inline std::vector<mpq_class> solve_exact(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b) {
    const size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    size_t r = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t p = r;
        while (p < rows && A[p][col] == 0) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[r]);
        std::swap(b[p], b[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][col] == 0) continue;
            mpq_class f = A[i][col] / A[r][col];
            for (size_t j = col; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(col);
        ++r;
    }
    if (r < cols) throw internal_error("solve_exact: system is underdetermined");
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0) throw internal_error("solve_exact: system is inconsistent");
    std::vector<mpq_class> x(cols);
    for (size_t i = 0; i < r; ++i) {
        x[pivot_col[i]] = b[i] / A[i][pivot_col[i]];
        x[pivot_col[i]].canonicalize();
    }
    return x;
}

}  // namespace mock_detail

// f_d through q^N as theta times a rational function of the Gamma_0(4) Hauptmodul
// u = eta(4 tau)^8 / (eta(2 tau)^4 theta^4), which has its pole at 1/2 and takes
// the value 1/16 at 0. The coefficients are exact and every index is filled.
inline TracedSeries f_modular(long d, long N) {
    if (d > 0 || (d < 0 && !is_discriminant(d))) throw domain_error("f_modular: d must be 0 or a negative discriminant");
    if (N < 1) throw domain_error("f_modular: N must be positive");
    const long n = -d, K = n + 2, B = n;
    const long U = (K + n + 1) + B;
    const long M = 6 * U + 40;
    const long W = std::max(N, M) + 2 * (n + K + B) + 8;

    ZSeries th = theta_series(W);
    ZSeries F = euler_product(W, {{4, 8}, {2, -4}}).shifted(1).truncated(W);
    ZSeries u = F * ZSeries::inverse(ZSeries::pow(th, 4));
    ZSeries uinv = ZSeries::inverse(u);
    ZSeries w = ZSeries::inverse(ZSeries::monomial(0, mpz_class(1), W) - u * mpz_class(16));

    std::vector<ZSeries> basis;
    ZSeries one = ZSeries::monomial(0, mpz_class(1), W);
    ZSeries p = one;
    for (long k = 0; k <= n; ++k) {
        basis.push_back(th * p);
        p = p * uinv;
    }
    p = u;
    for (long k = 1; k <= K; ++k) {
        basis.push_back(th * p);
        p = p * u;
    }
    p = w;
    for (long b = 1; b <= B; ++b) {
        basis.push_back(th * p);
        p = p * w;
    }
    long top = W;
    for (const auto& s : basis) top = std::min(top, s.precision());
    if (top < std::max(N, M)) throw internal_error("f_modular: working length too short");

    std::vector<std::vector<mpq_class>> A;
    std::vector<mpq_class> rhs;
    for (long m = d; m <= M; ++m) {
        bool fixed = m <= 0 || !in_support(Support::plus_half, m);
        if (!fixed) continue;
        std::vector<mpq_class> row;
        for (const auto& s : basis) row.push_back(mpq_class(m >= s.valuation() ? s.coeff(m) : mpz_class(0)));
        A.push_back(std::move(row));
        rhs.push_back(mpq_class(m == d ? 1 : 0));
    }
    std::vector<mpq_class> x = mock_detail::solve_exact(A, rhs);

    std::vector<mpz_class> c(N - d + 1, 0);
    std::vector<CoeffSource> src(N - d + 1, CoeffSource::modular);
    for (long m = d; m <= N; ++m) {
        mpq_class acc = 0;
        for (size_t j = 0; j < basis.size(); ++j)
            if (x[j] != 0 && m >= basis[j].valuation()) acc += x[j] * mpq_class(basis[j].coeff(m));
        acc.canonicalize();
        if (acc.get_den() != 1) throw internal_error("f_modular: non-integral coefficient at q^" + std::to_string(m));
        c[m - d] = acc.get_num();
        if (m <= 0) src[m - d] = CoeffSource::principal;
        else if (!in_support(Support::plus_half, m)) src[m - d] = CoeffSource::support_zero;
    }
    ZSeries out(d, std::move(c), Support::plus_half);
    if (!out.satisfies_support()) throw internal_error("f_modular: result leaves the plus space");
    return {std::move(out), std::move(src)};
}

// Holomorphic part of Zagier's weight 3/2 Eisenstein series: sum H(n) q^n, H(0) = -1/12.
inline RSeries zagier_eisenstein(long N) {
    if (N < 1) throw domain_error("zagier_eisenstein: N must be positive");
    std::vector<mpq_class> c(N + 1, 0);
    for (long n = 0; n <= N; ++n)
        if (in_support(Support::plus_three_halves, n)) c[n] = hurwitz_class_number(n);
    return RSeries(0, std::move(c), Support::plus_three_halves);
}

// sum_n c_n e(phase n / 8) e(n tau / 4): the coefficients sit on q^{n/4}.
template <class T>
struct PhasedSeries {
    QSeries<T> coeffs;
    int phase = 0;
};

// f^e = sum_{n even} c_n q^{n/4}, f^o = sum_{n odd} c_n e(n/8) q^{n/4}.
template <class T>
std::pair<PhasedSeries<T>, PhasedSeries<T>> eo_split(const QSeries<T>& a) {
    if (a.support() != Support::plus_half && a.support() != Support::plus_three_halves)
        throw domain_error("eo_split: series carries no plus-space tag");
    std::vector<T> e(a.coefficients().size(), T(0)), o(a.coefficients().size(), T(0));
    for (long n = a.valuation(); n <= a.precision(); ++n) {
        long i = n - a.valuation();
        if (n % 2 == 0)
            e[i] = a.coeff(n);
        else
            o[i] = a.coeff(n);
    }
    return {PhasedSeries<T>{QSeries<T>(a.valuation(), std::move(e), a.support()), 0},
            PhasedSeries<T>{QSeries<T>(a.valuation(), std::move(o), a.support()), 1}};
}

// Inverse substitution: f^e(4 tau) + f^o(4 tau - 1/2).
template <class T>
QSeries<T> eo_recombine(const PhasedSeries<T>& e, const PhasedSeries<T>& o) {
    if (e.phase != 0 || o.phase != 1) throw domain_error("eo_recombine: expected phases 0 and 1");
    QSeries<T> r = e.coeffs + o.coeffs;
    r.set_support(e.coeffs.support());
    return r;
}

template <class Real, class T>
Complex<Real> evaluate_phased(const PhasedSeries<T>& a, const Complex<Real>& tau) {
    GrowthEnvelope none{0, 0, 0};
    Complex<Real> t(Real(tau.re + Real(a.phase) / Real(2)), tau.im);
    return evaluate(a.coeffs, t, none, 1, 4).value;
}

// Constant term of the product of two phased series.
template <class A, class B>
std::complex<double> constant_term(const PhasedSeries<A>& a, const PhasedSeries<B>& b) {
    std::complex<double> acc = 0;
    for (long n = a.coeffs.valuation(); n <= a.coeffs.precision(); ++n) {
        long m = -n;
        if (m < b.coeffs.valuation() || m > b.coeffs.precision()) continue;
        double x = to_double(to_real<double>(a.coeffs.coeff(n))) * to_double(to_real<double>(b.coeffs.coeff(m)));
        if (x == 0) continue;
        double ph = 2 * M_PI * double(a.phase * n + b.phase * m) / 8;
        acc += x * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return acc;
}

}  // namespace cyclotrace
