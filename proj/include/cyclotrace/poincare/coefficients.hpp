#pragma once

// Kloosterman-Bessel coefficient series: c_m(n, s) of the Niebur series and
// b_m(n, s) of the weight 3/2 plus-space Poincare series.

#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "../kloosterman/summation.hpp"
#include "../kloosterman/sweep.hpp"
#include "../numerics/bessel.hpp"
#include "../numerics/differentiation.hpp"
#include "../numerics/errors.hpp"

namespace cyclotrace {

struct CoeffResult {
    double value = 0;
    double error = 0;       // observed spread |V(C) - V(C/2)|
    double tail_bound = 0;  // Weil-type envelope of the omitted terms (truncation only)
    long c_max = 0;
    long window = 0;
    SumMethod method = SumMethod::truncate;
};

namespace coeff_detail {

// Cached K_0(m, n; c) rows, indexed by c.
inline std::map<std::pair<long, long>, std::vector<double>>& int_rows() {
    thread_local std::map<std::pair<long, long>, std::vector<double>> rows;
    return rows;
}

// Cached Re K^+(m, n; c) rows, indexed by c/4.
inline std::map<std::pair<long, long>, std::vector<double>>& plus_rows() {
    thread_local std::map<std::pair<long, long>, std::vector<double>> rows;
    return rows;
}

inline bool is_plus_index(long n) {
    long r = ((n % 4) + 4) % 4;
    return r == 0 || r == 3;
}

}  // namespace coeff_detail

// Makes K_0(m, n; c), c <= c_max, available for every request in one sweep.
inline void prefetch_kloosterman_int(long m, const std::vector<SweepRequest>& req) {
    auto& rows = coeff_detail::int_rows();
    std::vector<SweepRequest> todo;
    for (const auto& r : req) {
        auto it = rows.find({m, r.n});
        if (it == rows.end() || static_cast<long>(it->second.size()) - 1 < r.c_max) todo.push_back(r);
    }
    if (todo.empty()) return;
    auto t = kloosterman_int_sweep(m, todo);
    for (size_t i = 0; i < todo.size(); ++i) rows[{m, todo[i].n}] = std::move(t[i]);
}

inline const std::vector<double>& kloosterman_int_row(long m, long n, long c_max) {
    prefetch_kloosterman_int(m, {{n, c_max}});
    return coeff_detail::int_rows().at({m, n});
}

inline void prefetch_kloosterman_plus(long m, const std::vector<SweepRequest>& req) {
    auto& rows = coeff_detail::plus_rows();
    std::vector<SweepRequest> todo;
    for (const auto& r : req) {
        auto it = rows.find({m, r.n});
        if (it == rows.end() || 4 * (static_cast<long>(it->second.size()) - 1) < r.c_max) todo.push_back(r);
    }
    if (todo.empty()) return;
    auto t = kloosterman_plus_sweep(m, todo);
    if (t.max_imag > 1e-6) throw internal_error("K^+ sweep: imaginary part " + std::to_string(t.max_imag));
    for (size_t i = 0; i < todo.size(); ++i) rows[{m, todo[i].n}] = std::move(t.values[i]);
}

inline const std::vector<double>& kloosterman_plus_row(long m, long n, long c_max) {
    prefetch_kloosterman_plus(m, {{n, c_max}});
    return coeff_detail::plus_rows().at({m, n});
}

// c_m(n, s) = sum_{c >= 1} c^{-1} K_0(m, n; c) {I if mn < 0, J if mn > 0}_{2s-1}(4 pi sqrt|mn| / c)
inline CoeffResult coeff_c(long m, long n, double s, long c_max = 4000, SumMethod method = SumMethod::smooth) {
    if (m == 0 || n == 0) throw domain_error("coeff_c: m and n must be nonzero");
    if (!(s > 0.75 && s <= 2)) throw domain_error("coeff_c: s must lie in (3/4, 2]");
    if (c_max < 8) throw domain_error("coeff_c: c_max too small");
    const auto& K = kloosterman_int_row(m, n, c_max);
    const double nu = 2 * s - 1;
    const double x0 = 4 * M_PI * std::sqrt(static_cast<double>(std::labs(m)) * static_cast<double>(std::labs(n)));
    const bool use_i = (m > 0) != (n > 0);
    std::vector<double> a(c_max + 1, 0.0);
    for (long c = 1; c <= c_max; ++c) {
        if (K[c] == 0) continue;
        double x = x0 / static_cast<double>(c);
        a[c] = K[c] / static_cast<double>(c) * (use_i ? std::cyl_bessel_i(nu, x) : std::cyl_bessel_j(nu, x));
    }
    SumResult r = accelerate(a, method);
    CoeffResult out;
    out.value = r.value;
    out.error = r.spread;
    out.c_max = c_max;
    out.method = method;
    out.window = r.window;
    double A = 0;
    for (long c = c_max / 2; c <= c_max; ++c) A = std::max(A, std::fabs(a[c]) * std::pow(double(c), 2 * s - 0.5));
    out.tail_bound = A * std::pow(double(c_max), 1.5 - 2 * s) / (2 * s - 1.5);
    return out;
}

struct BcoeffOptions {
    long c_max = 40000;
    SumMethod method = SumMethod::smooth;
    long window = 64;
    double tol = 0;  // > 0: throw convergence_error when the spread exceeds it
};

namespace coeff_detail {

// Terms of b_m(n, s) indexed by c/4 (without the -sqrt(2) pi prefactor), and
// optionally their s-derivative taken inside the sum.
inline std::vector<double> bcoeff_terms(long m, long n, double s, long c_max, bool derivative) {
    const auto& K = kloosterman_plus_row(-m, -n, c_max);
    long L = c_max / 4;
    std::vector<double> a(L + 1, 0.0);
    const double nu = 2 * s - 1;
    if (n == 0) {
        // |m|^{-1/4} (2 pi sqrt|m|)^{2s-1} (4 pi)^{3/4-s} sum K^+(-m, 0; c) c^{-2s}
        double am = static_cast<double>(std::labs(m));
        double base = std::pow(am, -0.25);
        double l1 = std::log(2 * M_PI * std::sqrt(am)), l2 = std::log(4 * M_PI);
        for (long i = 1; i <= L; ++i) {
            double c = 4.0 * i;
            double f = std::exp((2 * s - 1) * l1 + (0.75 - s) * l2 - 2 * s * std::log(c));
            double d = derivative ? f * (2 * l1 - l2 - 2 * std::log(c)) : f;
            a[i] = base * K[i] * d;
        }
        return a;
    }
    double amn = static_cast<double>(std::labs(m)) * static_cast<double>(std::labs(n));
    double x0 = 4 * M_PI * std::sqrt(amn), pre = std::pow(amn, -0.25);
    for (long i = 1; i <= L; ++i) {
        if (K[i] == 0) continue;
        double c = 4.0 * i, x = x0 / c;
        double b;
        if (!derivative) {
            b = n > 0 ? std::cyl_bessel_j(nu, x) : std::cyl_bessel_i(nu, x);
        } else if (n > 0) {
            b = 2 * bessel_j_dorder(nu, x, 1e-3).value;
        } else {
            auto f = [&](double v) { return std::cyl_bessel_i(v, x); };
            b = 2 * richardson_derivative(f, nu, 1e-3).value;
        }
        a[i] = K[i] / c * pre * b;
    }
    return a;
}

inline CoeffResult finish(const std::vector<double>& a, const BcoeffOptions& o, const char* who) {
    SumResult r = accelerate(a, o.method, o.window);
    CoeffResult out;
    out.value = -std::sqrt(2.0) * M_PI * r.value;
    out.error = std::sqrt(2.0) * M_PI * r.spread;
    out.c_max = o.c_max;
    out.method = o.method;
    out.window = r.window;
    if (o.tol > 0 && !(out.error <= o.tol))
        throw convergence_error(std::string(who) + ": spread " + std::to_string(out.error) + " exceeds tolerance at c_max " +
                                std::to_string(o.c_max) + " (" + sum_method_name(o.method) + ")");
    return out;
}

inline void check_plus(long m, long n, double s) {
    if (m < 1 || !is_plus_index(m)) throw domain_error("bcoeff: m must be positive with m = 0, 3 (mod 4)");
    if (!is_plus_index(n)) throw domain_error("bcoeff: n must be = 0, 3 (mod 4)");
    if (!(s > 0.5 && s <= 2)) throw domain_error("bcoeff: s out of range");
}

}  // namespace coeff_detail

// b_m(n, s) = -sqrt(2) pi sum_{4 | c} K^+(-m, -n; c)/c |mn|^{-1/4} {J if n > 0, I if n < 0}_{2s-1}(4 pi sqrt|mn| / c)
inline CoeffResult bcoeff(long m, long n, double s, const BcoeffOptions& o = {}) {
    coeff_detail::check_plus(m, n, s);
    return coeff_detail::finish(coeff_detail::bcoeff_terms(m, n, s, o.c_max, false), o, "bcoeff");
}

struct BcoeffDerivative {
    CoeffResult value;        // difference of sums (Richardson in s)
    CoeffResult termwise;     // sum of termwise order derivatives
    double richardson_delta;  // |Richardson - plain central difference at h/2|
    double route_gap;         // |value - termwise|
};

// d/ds b_m(n, s) at s0 (default 3/4), by two routes.
inline BcoeffDerivative bcoeff_ds(long m, long n, const BcoeffOptions& o = {}, double h = 1e-3, double s0 = 0.75,
                                  double route_tol = 0) {
    coeff_detail::check_plus(m, n, s0);
    auto at = [&](double s) { return bcoeff(m, n, s, o); };
    CoeffResult p1 = at(s0 + h), m1 = at(s0 - h), p2 = at(s0 + h / 2), m2 = at(s0 - h / 2);
    double d1 = (p1.value - m1.value) / (2 * h), d2 = (p2.value - m2.value) / h;
    BcoeffDerivative out;
    out.value = p2;
    out.value.value = (4 * d2 - d1) / 3;
    out.richardson_delta = std::fabs(out.value.value - d2);
    out.termwise = coeff_detail::finish(coeff_detail::bcoeff_terms(m, n, s0, o.c_max, true), o, "bcoeff_ds");
    out.value.error = out.termwise.error;
    out.route_gap = std::fabs(out.value.value - out.termwise.value);
    if (route_tol > 0 && out.route_gap > route_tol)
        throw convergence_error("bcoeff_ds: routes disagree by " + std::to_string(out.route_gap));
    return out;
}

}  // namespace cyclotrace
