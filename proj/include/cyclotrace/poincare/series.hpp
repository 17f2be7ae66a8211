#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include "../arithmetic/characters.hpp"
#include "../numerics/complex.hpp"
#include "../numerics/errors.hpp"
#include "../numerics/special.hpp"
#include "coefficients.hpp"
#include "expansion.hpp"

namespace cyclotrace {

struct SeriesOptions {
    long n_max = 24;
    long c_max = 4000;
    SumMethod method = SumMethod::smooth;
    double y_min = 0.5;
};

struct F32Options {
    long n_max = 40;
    BcoeffOptions b{20000, SumMethod::smooth, 64, 0};
    double y_min = 0.5;
};

namespace series_detail {

template <class Real>
std::map<std::string, std::shared_ptr<const Expansion<Real>>>& cache() {
    thread_local std::map<std::string, std::shared_ptr<const Expansion<Real>>> c;
    return c;
}

inline std::string to_string_exact(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
inline std::string to_string_exact(const ExtReal& x) { return x.str(); }

template <class Real>
std::string key(const char* tag, long m, const Real& s, long n_max, long c_max, int method, double y_min) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s|%ld|%s|%ld|%ld|%d|%.6g|%u", tag, m, to_string_exact(s).c_str(), n_max, c_max, method,
                  y_min, real_traits<Real>::bits());
    return buf;
}

template <class Real, class Build>
std::shared_ptr<const Expansion<Real>> cached(const std::string& k, Build&& build) {
    auto& c = cache<Real>();
    auto it = c.find(k);
    if (it != c.end()) return it->second;
    if (c.size() > 256) c.clear();
    auto e = std::make_shared<const Expansion<Real>>(build());
    c.emplace(k, e);
    return e;
}

}  // namespace series_detail

// G_0(tau, s) = y^s + xi(2s-1)/xi(2s) y^{1-s} + sum_{n != 0} 2/xi(2s) |n|^{s-1/2} sigma_{1-2s}(|n|) y^{1/2} K_{s-1/2}(2 pi |n| y) e(nx)
template <class Real>
std::shared_ptr<const Expansion<Real>> eisenstein_g0_expansion(const Real& s, long n_max = 30) {
    using std::pow;
    double sd = to_double(s);
    if (!(sd > 0.5 && sd <= 2)) throw domain_error("eisenstein_g0: s must lie in (1/2, 2]");
    if (std::fabs(sd - 1) < 1e-8) throw domain_error("eisenstein_g0: s too close to the pole at s = 1");
    auto k = series_detail::key("G0", 0, s, n_max, 0, 0, 0.0);
    return series_detail::cached<Real>(k, [&] {
        Expansion<Real> e(s);
        e.n_max = n_max;
        e.y_min = 0;
        Real xi2s = xi_completed(Real(2 * s));
        e.add(0, Complex<Real>(Real(1)), Profile::power_s);
        e.add(0, Complex<Real>(Real(xi_completed(Real(2 * s - 1)) / xi2s)), Profile::power_1ms);
        for (long n = 1; n <= n_max; ++n) {
            Real c = Real(2) / xi2s * pow(Real(n), Real(s - Real(0.5))) * sigma_real(Real(1 - 2 * s), n);
            e.add(n, Complex<Real>(c), Profile::k_bessel);
            e.add(-n, Complex<Real>(c), Profile::k_bessel);
        }
        return e;
    });
}

template <class Real>
Complex<Real> eisenstein_g0(const Complex<Real>& tau, const Real& s, long n_max = 30) {
    return eisenstein_g0_expansion(s, n_max)->evaluate(tau);
}

// G_m(tau, s) = 2 pi |m|^{1/2} y^{1/2} I_{s-1/2}(2 pi |m| y) e(mx) + 4 pi |m|^{1-s} sigma_{2s-1}(|m|)/((2s-1) xi(2s)) y^{1-s}
//             + 4 pi |m|^{1/2} y^{1/2} sum_{n != 0} c_m(n, s) K_{s-1/2}(2 pi |n| y) e(nx)
template <class Real>
std::shared_ptr<const Expansion<Real>> niebur_expansion(long m, const Real& s, const SeriesOptions& o = {}) {
    using std::pow;
    using std::sqrt;
    if (m == 0) throw domain_error("niebur_g: m must be nonzero (use eisenstein_g0)");
    double sd = to_double(s);
    if (!(sd > 0.75 && sd <= 2)) throw domain_error("niebur_g: s must lie in (3/4, 2]");
    auto k = series_detail::key("Gm", m, s, o.n_max, o.c_max, static_cast<int>(o.method), o.y_min);
    return series_detail::cached<Real>(k, [&] {
        std::vector<SweepRequest> req;
        for (long n = -o.n_max; n <= o.n_max; ++n)
            if (n != 0) req.push_back({n, o.c_max});
        prefetch_kloosterman_int(m, req);
        Expansion<Real> e(s);
        e.n_max = o.n_max;
        e.c_max = o.c_max;
        e.y_min = o.y_min;
        long am = std::labs(m);
        Real four_pi = Real(4 * pi_v<Real>());
        e.add(m, Complex<Real>(Real(1)), Profile::i_bessel);
        Real c0 = four_pi * pow(Real(am), Real(1 - s)) * sigma_real(Real(2 * s - 1), am) /
                  (Real(2 * s - 1) * xi_completed(Real(2 * s)));
        e.add(0, Complex<Real>(c0), Profile::power_1ms);
        Real pre = four_pi * sqrt(Real(am));
        for (long n = -o.n_max; n <= o.n_max; ++n) {
            if (n == 0) continue;
            CoeffResult c = coeff_c(m, n, sd, o.c_max, o.method);
            e.add(n, Complex<Real>(Real(pre * Real(c.value))), Profile::k_bessel);
        }
        return e;
    });
}

template <class Real>
Complex<Real> niebur_g(long m, const Complex<Real>& tau, const Real& s, const SeriesOptions& o = {}) {
    return niebur_expansion(m, s, o)->evaluate(tau);
}

// j_m(tau, s) = G_{-m}(tau, s) - 2 m^{1-s} sigma_{2s-1}(m) / (pi^{-(s+1/2)} Gamma(s+1/2) zeta(2s-1)) G_0(tau, s)
template <class Real>
Complex<Real> jm_s(long m, const Complex<Real>& tau, const Real& s, const SeriesOptions& o = {}) {
    using std::pow;
    if (m < 1) throw domain_error("jm_s: m must be positive");
    // the pole of G_0 cancels the zero of the quotient; the limit is 24 sigma(m)
    if (std::fabs(to_double(s) - 1) < 1e-8) return niebur_g(-m, tau, s, o) - Complex<Real>(Real(24 * sigma(1, m).get_si()));
    Real half = Real(0.5);
    Real f = Real(2) * pow(Real(m), Real(1 - s)) * sigma_real(Real(2 * s - 1), m) /
             (pow(pi_v<Real>(), Real(-(s + half))) * gamma(Real(s + half)) * zeta(Real(2 * s - 1)));
    return niebur_g(-m, tau, s, o) - eisenstein_g0(tau, s, o.n_max) * f;
}

struct JhatOptions {
    SeriesOptions series;
    double h = 1e-3;
    double tol = 0;  // > 0: throw when the Richardson correction exceeds it
};

template <class Real>
struct JhatValue {
    Complex<Real> value;
    double richardson_delta = 0;
};

// d/ds G_{-m}(tau, s) at s = 1: central differences at h and h/2 with Richardson.
template <class Real>
JhatValue<Real> jhat_estimate(long m, const Complex<Real>& tau, const JhatOptions& o = {}) {
    if (m < 1) throw domain_error("jhat: m must be positive");
    Real one(1), h(o.h), h2 = Real(o.h) / 2;
    auto G = [&](const Real& s) { return niebur_g(-m, tau, s, o.series); };
    Complex<Real> d1 = (G(Real(one + h)) - G(Real(one - h))) / Real(2 * h);
    Complex<Real> d2 = (G(Real(one + h2)) - G(Real(one - h2))) / Real(2 * h2);
    JhatValue<Real> out;
    out.value = (d2 * Real(4) - d1) / Real(3);
    out.richardson_delta = to_double(abs(out.value - d2));
    if (o.tol > 0 && out.richardson_delta > o.tol)
        throw convergence_error("jhat: Richardson correction " + std::to_string(out.richardson_delta) + " exceeds tolerance");
    return out;
}

template <class Real>
Complex<Real> jhat(long m, const Complex<Real>& tau, const JhatOptions& o = {}) {
    return jhat_estimate(m, tau, o).value;
}

// F_m^+(tau, s) = M_m(y, s) e(mx) + sum_{n = 0, 3 (4)} b_m(n, s) W_n(y, s) e(nx), weight 3/2.
template <class Real>
std::shared_ptr<const Expansion<Real>> f32_expansion(long m, const Real& s, const F32Options& o = {}) {
    double sd = to_double(s);
    if (m < 1 || !coeff_detail::is_plus_index(m)) throw domain_error("assemble_f32: m must be positive with m = 0, 3 (mod 4)");
    if (!(sd > 0.6 && sd <= 1.2)) throw domain_error("assemble_f32: s must lie in (0.6, 1.2]");
    auto k = series_detail::key("F32", m, s, o.n_max, o.b.c_max, static_cast<int>(o.b.method), o.y_min);
    return series_detail::cached<Real>(k, [&] {
        std::vector<SweepRequest> req;
        for (long n = -o.n_max; n <= o.n_max; ++n)
            if (coeff_detail::is_plus_index(n)) req.push_back({-n, o.b.c_max});
        prefetch_kloosterman_plus(-m, req);
        Expansion<Real> e(s, Real(1.5));
        e.n_max = o.n_max;
        e.c_max = o.b.c_max;
        e.y_min = o.y_min;
        e.add(m, Complex<Real>(Real(1)), Profile::whittaker_m);
        for (long n = -o.n_max; n <= o.n_max; ++n) {
            if (!coeff_detail::is_plus_index(n)) continue;
            CoeffResult b = bcoeff(m, n, sd, o.b);
            e.add(n, Complex<Real>(Real(b.value)), Profile::whittaker_w);
        }
        return e;
    });
}

template <class Real>
Complex<Real> assemble_f32(long m, const Complex<Real>& tau, const Real& s, const F32Options& o = {}) {
    return f32_expansion(m, s, o)->evaluate(tau);
}

}  // namespace cyclotrace
