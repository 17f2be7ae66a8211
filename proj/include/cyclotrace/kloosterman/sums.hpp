#pragma once

#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "../arithmetic/characters.hpp"
#include "../arithmetic/integers.hpp"
#include "../arithmetic/quadform.hpp"
#include "../numerics/complex.hpp"
#include "../numerics/errors.hpp"
#include "../numerics/real_traits.hpp"

namespace cyclotrace {

namespace kl_detail {

// e(k/c) for k = 0..c-1, cached per (c, precision) for small moduli.
template <class Real>
const std::vector<Complex<Real>>& roots_of_unity(long c) {
    thread_local std::map<std::pair<long, unsigned>, std::vector<Complex<Real>>> cache;
    auto key = std::make_pair(c, real_traits<Real>::bits());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (cache.size() > 512) cache.clear();
    std::vector<Complex<Real>> t(c);
    Real step = Real(2 * pi_v<Real>()) / Real(c);
    for (long k = 0; k < c; ++k) t[k] = expi(Real(step * Real(k)));
    return cache.emplace(key, std::move(t)).first->second;
}

inline void require_level4(long c, const char* who) {
    if (c < 4 || c % 4 != 0) throw domain_error(std::string(who) + ": c must be a positive multiple of 4");
}

// (1 + (4 / (c/4))): 2 if c/4 is odd, else 1.
inline int plus_factor(long c) { return (c / 4) % 2 ? 2 : 1; }

}  // namespace kl_detail

// sum over v mod c, (v, c) = 1, of e((m vbar + n v)/c)
template <class Real = ExtReal>
Complex<Real> kloosterman_int(long m, long n, long c) {
    if (c < 1) throw domain_error("kloosterman_int: c must be positive");
    const auto& e = kl_detail::roots_of_unity<Real>(c);
    long mm = pos_mod(m, c), nn = pos_mod(n, c);
    Complex<Real> s;
    for (long v = 0; v < c; ++v) {
        if (std::gcd(v, c) != 1) continue;
        long k = (mul_mod(mm, inv_mod(v, c), c) + mul_mod(nn, v, c)) % c;
        s += e[k];
    }
    return s;
}

// Weight k = twice_k / 2 in {1/2, 3/2}: sum (c/v)^{2k} eps_v^{2k} e((m vbar + n v)/c), 4 | c.
template <class Real = ExtReal>
Complex<Real> kloosterman_half(int twice_k, long m, long n, long c) {
    if (twice_k != 1 && twice_k != 3) throw domain_error("kloosterman_half: weight must be 1/2 or 3/2");
    kl_detail::require_level4(c, "kloosterman_half");
    const auto& e = kl_detail::roots_of_unity<Real>(c);
    long mm = pos_mod(m, c), nn = pos_mod(n, c);
    Complex<Real> s;
    for (long v = 1; v < c; v += 2) {
        if (std::gcd(v, c) != 1) continue;
        int sym = kronecker(c, v);  // odd power of +-1
        long k = (mul_mod(mm, inv_mod(v, c), c) + mul_mod(nn, v, c)) % c;
        Complex<Real> t = e[k];
        if (v % 4 == 3) t = twice_k == 1 ? Complex<Real>(-t.im, t.re) : Complex<Real>(t.im, -t.re);
        if (sym < 0)
            s -= t;
        else
            s += t;
    }
    return s;
}

// (1 - i)(1 + (4/(c/4))) K_{1/2}(m, n; c)
template <class Real = ExtReal>
Complex<Real> kloosterman_plus(long m, long n, long c) {
    Complex<Real> k = kloosterman_half<Real>(1, m, n, c);
    Real f(kl_detail::plus_factor(c));
    return Complex<Real>((k.re + k.im) * f, (k.im - k.re) * f);
}

// sum over b mod c with b^2 = Dd (mod c) of chi_D([c/4, b, (b^2 - Dd)/c]) e(2 m b / c)
template <class Real = ExtReal>
Complex<Real> salie(long m, long d, long D, long c) {
    kl_detail::require_level4(c, "salie");
    if (!is_fundamental_discriminant(D)) throw domain_error("salie: D must be a fundamental discriminant");
    if (!is_discriminant(d)) throw domain_error("salie: d must be a discriminant");
    long Dd = D * d;
    const auto& e = kl_detail::roots_of_unity<Real>(c);
    long target = pos_mod(Dd, c);
    Complex<Real> s;
    for (long b = 0; b < c; ++b) {
        if (mul_mod(b, b, c) != target) continue;
        QuadForm q{c / 4, b, (b * b - Dd) / c};
        int chi = genus_character(D, q);
        if (chi == 0) continue;
        long k = mul_mod(pos_mod(2 * m, c), b, c);
        if (chi > 0)
            s += e[k];
        else
            s -= e[k];
    }
    return s;
}

// Number of b mod c with b^2 = x (mod c).
inline long count_square_roots(long x, long c) {
    long t = pos_mod(x, c), r = 0;
    for (long b = 0; b < c; ++b)
        if (mul_mod(b, b, c) == t) ++r;
    return r;
}

}  // namespace cyclotrace
