#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "../numerics/bessel.hpp"
#include "../numerics/complex.hpp"
#include "../numerics/errors.hpp"
#include "../numerics/hypergeometric.hpp"
#include "../numerics/real_traits.hpp"
#include "../numerics/special.hpp"

namespace cyclotrace {

// Radial factor of one Fourier term.
enum class Profile {
    i_bessel,     // 2 pi |n|^{1/2} y^{1/2} I_{s-1/2}(2 pi |n| y)
    k_bessel,     // y^{1/2} K_{s-1/2}(2 pi |n| y)
    power_s,      // y^s
    power_1ms,    // y^{1-s}
    whittaker_m,  // M_n(y, s) at weight k
    whittaker_w,  // W_n(y, s) at weight k
};

inline const char* profile_name(Profile p) {
    switch (p) {
        case Profile::i_bessel: return "I";
        case Profile::k_bessel: return "K";
        case Profile::power_s: return "y^s";
        case Profile::power_1ms: return "y^(1-s)";
        case Profile::whittaker_m: return "M";
        default: return "W";
    }
}

// Weight-k spherical Whittaker profiles:
//   M_n = Gamma(2s)^{-1} (4 pi |n| y)^{-k/2} M_{sgn(n) k/2, s-1/2}(4 pi |n| y),  M_0 = y^{s-k/2}
//   W_n = Gamma(s + sgn(n) k/2)^{-1} |n|^{k/2-1} (4 pi y)^{-k/2} W_{sgn(n) k/2, s-1/2}(4 pi |n| y),
//   W_0 = (4 pi)^{1-k} y^{1-s-k/2} / ((2s-1) Gamma(s-k/2) Gamma(s+k/2))
template <class Real>
Real spherical_m(long n, const Real& y, const Real& s, const Real& k) {
    using std::pow;
    if (n == 0) return pow(y, Real(s - k / 2));
    Real x = Real(4 * pi_v<Real>()) * Real(std::labs(n)) * y;
    Real mu = n > 0 ? Real(k / 2) : Real(-k / 2);
    return rgamma(Real(2 * s)) * pow(x, Real(-k / 2)) * whittaker_m(mu, Real(s - Real(0.5)), x);
}

template <class Real>
Real spherical_w(long n, const Real& y, const Real& s, const Real& k) {
    using std::pow;
    Real four_pi = Real(4 * pi_v<Real>());
    if (n == 0)
        return pow(four_pi, Real(1 - k)) * pow(y, Real(1 - s - k / 2)) * rgamma(Real(s - k / 2)) * rgamma(Real(s + k / 2)) /
               Real(2 * s - 1);
    Real an(std::labs(n));
    Real mu = n > 0 ? Real(k / 2) : Real(-k / 2);
    return rgamma(Real(s + mu)) * pow(an, Real(k / 2 - 1)) * pow(Real(four_pi * y), Real(-k / 2)) *
           whittaker_w(mu, Real(s - Real(0.5)), Real(four_pi * an * y));
}

template <class Real>
struct ExpansionTerm {
    long n = 0;
    Complex<Real> coeff;
    Profile profile = Profile::k_bessel;
};

// sum_terms coeff * profile_n(y) * e(n x), with parameters s and weight k shared by all terms.
template <class Real>
struct Expansion {
    Real s;
    Real k;
    std::vector<ExpansionTerm<Real>> terms;
    long n_max = 0;
    long c_max = 0;
    unsigned precision = 0;
    double y_min = 0.5;

    Expansion(Real s_, Real k_ = Real(0)) : s(std::move(s_)), k(std::move(k_)), precision(real_traits<Real>::bits()) {}

    void add(long n, Complex<Real> c, Profile p) { terms.push_back({n, std::move(c), p}); }

    Real profile_value(const ExpansionTerm<Real>& t, const Real& y) const {
        using std::pow;
        using std::sqrt;
        Real two_pi = Real(2 * pi_v<Real>());
        Real an(std::labs(t.n));
        switch (t.profile) {
            case Profile::i_bessel:
                return two_pi * sqrt(an) * sqrt(y) * bessel_i(Real(s - Real(0.5)), Real(two_pi * an * y));
            case Profile::k_bessel: return sqrt(y) * bessel_k(Real(s - Real(0.5)), Real(two_pi * an * y));
            case Profile::power_s: return pow(y, s);
            case Profile::power_1ms: return pow(y, Real(1 - s));
            case Profile::whittaker_m: return spherical_m(t.n, y, s, k);
            default: return spherical_w(t.n, y, s, k);
        }
    }

    Complex<Real> evaluate(const Complex<Real>& tau) const {
        if (!(tau.im > 0)) throw domain_error("Expansion::evaluate: tau must lie in the upper half plane");
        if (to_double(tau.im) < y_min * 0.999)
            throw domain_error("Expansion::evaluate: Im tau = " + std::to_string(to_double(tau.im)) +
                               " below the supported minimum " + std::to_string(y_min));
        Complex<Real> acc;
        for (const auto& t : terms) {
            if (t.coeff.re == 0 && t.coeff.im == 0) continue;
            Real p = profile_value(t, tau.im);
            Complex<Real> e = t.n == 0 ? Complex<Real>(Real(1)) : e_of(Real(tau.re * Real(t.n)));
            acc += t.coeff * e * p;
        }
        return acc;
    }

    // Heuristic size of the omitted terms |n| > n_max: the outermost retained
    // terms continued geometrically with ratio e^{-2 pi y}.
    double tail_envelope(double y) const {
        double edge = 0;
        for (const auto& t : terms) {
            if (std::labs(t.n) != n_max) continue;
            Real p = profile_value(t, Real(y));
            edge += to_double(abs(t.coeff)) * std::fabs(to_double(p));
        }
        double r = std::exp(-2 * M_PI * y);
        return edge * r / (1 - r);
    }
};

}  // namespace cyclotrace
