#pragma once

// Modified traces Tr*_{d,D} for negative d, D: the b-coefficient route, the
// Salie-sum route and the s-derivative at s = 1 (the Jhat trace).

#include <cmath>
#include <string>

#include "../arithmetic/quadform.hpp"
#include "../kloosterman/summation.hpp"
#include "../kloosterman/sweep.hpp"
#include "../numerics/bessel.hpp"
#include "../numerics/errors.hpp"
#include "../numerics/quadrature.hpp"
#include "../numerics/special.hpp"
#include "../poincare/coefficients.hpp"
#include "result.hpp"

namespace cyclotrace {

namespace trace_detail {

inline void check_star(long d, long D, const char* who) {
    if (!(D < 0 && is_fundamental_discriminant(D)))
        throw domain_error(std::string(who) + ": D must be a negative fundamental discriminant");
    if (!(d < 0 && is_discriminant(d))) throw domain_error(std::string(who) + ": d must be a negative discriminant");
    if (is_square(d * D)) throw domain_error(std::string(who) + ": dD must not be a square");
}

inline void check_s(double s, const char* who) {
    if (!(s > 0.75 && s <= 1.5)) throw domain_error(std::string(who) + ": s must lie in (3/4, 3/2]");
}

// 2^s Gamma(s/2)^2 / Gamma(s)
inline double gamma_ratio(double s) { return std::exp(s * M_LN2 + 2 * std::lgamma(s / 2) - std::lgamma(s)); }

}  // namespace trace_detail

// Phi(t) = pi t^{1/2} 2^s Gamma(s/2)^2 / Gamma(s) J_{s-1/2}(2 pi t), the |m| = 1 transform of phi_{-1,s}.
template <class Real>
Real phi_closed_form(const Real& t, const Real& s) {
    using std::exp;
    using std::lgamma;
    using std::log;
    using std::sqrt;
    Real pi = pi_v<Real>();
    Real g = exp(Real(s * log(Real(2)) + Real(2) * lgamma(Real(s / 2)) - lgamma(s)));
    return pi * sqrt(t) * g * bessel_j(Real(s - Real(0.5)), Real(2 * pi * t));
}

// int_0^pi cos(2 pi t cos th) 2 pi (t sin th)^{1/2} I_{s-1/2}(2 pi t sin th) dth / sin th
template <class Real>
Real phi_by_quadrature(const Real& t, const Real& s, double tol = 1e-14) {
    using std::cos;
    using std::sin;
    using std::sqrt;
    Real pi = pi_v<Real>();
    auto f = [&](const Real& th) {
        Real st = sin(th);
        return cos(Real(2 * pi * t * cos(th))) * Real(2 * pi) * sqrt(Real(t * st)) *
               bessel_i(Real(s - Real(0.5)), Real(2 * pi * t * st)) / st;
    };
    return tanh_sinh(f, Real(0), pi, tol).value;
}

struct StarOptions {
    BcoeffOptions b;
    double h = 1e-3;
};

// Tr*(G_{-1}(., s)) = -(2^s Gamma(s/2)^2 / (2 pi Gamma(s))) b_{|D|}(|d|, s/2 + 1/4)
inline TraceResult trace_star_series(long d, long D, double s, const StarOptions& o = {}) {
    trace_detail::check_star(d, D, "trace_star_series");
    trace_detail::check_s(s, "trace_star_series");
    CoeffResult b = bcoeff(-D, -d, s / 2 + 0.25, o.b);
    double f = trace_detail::gamma_ratio(s) / (2 * M_PI);
    TraceResult r;
    r.method = TraceMethod::kloosterman_series;
    r.value = ExtReal(-f * b.value);
    r.error_estimate = f * b.error;
    r.params.c_max = b.c_max;
    r.params.s = s;
    r.params.precision = 53;
    r.params.sum_method = b.method;
    return r;
}

// 2 pi sqrt(dD) Tr*(G_{-1}(., s)) = sum_{0 < c = 0 (4)} S_{-1}(d, D; c) Phi(2 sqrt(dD) / c)
inline TraceResult trace_star_salie(long d, long D, double s, const StarOptions& o = {}) {
    trace_detail::check_star(d, D, "trace_star_salie");
    trace_detail::check_s(s, "trace_star_salie");
    if (o.b.c_max < 64) throw domain_error("trace_star_salie: c_max too small");
    SalieSweep S = salie_sweep(-1, d, D, o.b.c_max);
    const double dD = static_cast<double>(d) * static_cast<double>(D);
    const double g = trace_detail::gamma_ratio(s);
    const long L = o.b.c_max / 4;
    std::vector<double> re(L + 1, 0.0), im(L + 1, 0.0);
    for (long i = 1; i <= L; ++i) {
        double t = 2 * std::sqrt(dD) / (4.0 * i);
        double phi = M_PI * std::sqrt(t) * g * std::cyl_bessel_j(s - 0.5, 2 * M_PI * t);
        re[i] = S.re[i] * phi;
        im[i] = S.im[i] * phi;
    }
    SumResult a = accelerate(re, o.b.method, o.b.window), b = accelerate(im, o.b.method, o.b.window);
    double scale = 1 / (2 * M_PI * std::sqrt(dD));
    TraceResult r;
    r.method = TraceMethod::salie_series;
    r.value = ExtReal(a.value * scale);
    r.error_estimate = a.spread * scale;
    r.imag_residual = std::fabs(b.value) * scale;
    r.params.c_max = o.b.c_max;
    r.params.s = s;
    r.params.precision = 53;
    r.params.sum_method = o.b.method;
    return r;
}

// Tr*(Jhat) = -(1/2) d/ds b_{|D|}(|d|, s) at s = 3/4
inline TraceResult trace_star_jhat(long d, long D, const StarOptions& o = {}) {
    trace_detail::check_star(d, D, "trace_star_jhat");
    BcoeffDerivative db = bcoeff_ds(-D, -d, o.b, o.h);
    TraceResult r;
    r.method = TraceMethod::jhat_derivative;
    r.value = ExtReal(-0.5 * db.value.value);
    r.error_estimate = 0.5 * std::max({db.value.error, db.route_gap, db.richardson_delta});
    r.params.c_max = o.b.c_max;
    r.params.h = o.h;
    r.params.s = 1;
    r.params.precision = 53;
    r.params.sum_method = o.b.method;
    return r;
}

}  // namespace cyclotrace
