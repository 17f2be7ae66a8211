#pragma once

// Summation of slowly or conditionally convergent series sum_{i >= 1} a_i.

#include <cmath>
#include <string>
#include <vector>

#include "../numerics/errors.hpp"

namespace cyclotrace {

enum class SumMethod { smooth, cesaro, truncate };

inline const char* sum_method_name(SumMethod m) {
    switch (m) {
        case SumMethod::smooth: return "smooth";
        case SumMethod::cesaro: return "cesaro";
        default: return "truncate";
    }
}

inline SumMethod parse_sum_method(const std::string& s) {
    if (s == "smooth") return SumMethod::smooth;
    if (s == "cesaro") return SumMethod::cesaro;
    if (s == "truncate") return SumMethod::truncate;
    throw domain_error("unknown summation method: " + s);
}

struct SumResult {
    double value = 0;
    double spread = 0;  // |V(L) - V(L/2)|
    long terms = 0;
    long window = 0;
    SumMethod method = SumMethod::smooth;
};

// Smooth step: 1 at u = 0, 0 at u = 1, flat to all orders at both ends.
inline double smooth_cutoff(double u) {
    if (u <= 0) return 1;
    if (u >= 1) return 0;
    auto f = [](double z) { return std::exp(-1 / z); };
    double a = f(1 - u), b = f(u);
    return a / (a + b);
}

namespace sum_detail {

inline double smooth_value(const std::vector<double>& a, long L) {
    double s = 0;
    for (long i = 1; i <= L; ++i) s += a[i] * smooth_cutoff(static_cast<double>(i) / static_cast<double>(L + 1));
    return s;
}

inline double cesaro_value(const std::vector<double>& a, long L, long W) {
    if (W > L) W = L;
    double s = 0, acc = 0;
    for (long i = 1; i <= L; ++i) {
        s += a[i];
        if (i > L - W) acc += s;
    }
    return acc / static_cast<double>(W);
}

inline double partial(const std::vector<double>& a, long L) {
    double s = 0;
    for (long i = 1; i <= L; ++i) s += a[i];
    return s;
}

}  // namespace sum_detail

// a[0] is ignored; uses a[1..L] with L = a.size() - 1.
inline SumResult accelerate(const std::vector<double>& a, SumMethod method, long window = 64) {
    long L = static_cast<long>(a.size()) - 1;
    if (L < 2) throw domain_error("accelerate: need at least two terms");
    SumResult r;
    r.method = method;
    r.terms = L;
    r.window = method == SumMethod::cesaro ? window : 0;
    double full = 0, half = 0;
    switch (method) {
        case SumMethod::smooth:
            full = sum_detail::smooth_value(a, L);
            half = sum_detail::smooth_value(a, L / 2);
            break;
        case SumMethod::cesaro:
            full = sum_detail::cesaro_value(a, L, window);
            half = sum_detail::cesaro_value(a, L / 2, window);
            break;
        case SumMethod::truncate:
            full = sum_detail::partial(a, L);
            half = sum_detail::partial(a, L / 2);
            break;
    }
    r.value = full;
    r.spread = std::fabs(full - half);
    return r;
}

}  // namespace cyclotrace
