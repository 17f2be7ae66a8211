#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <numeric>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "../numerics/errors.hpp"

namespace cyclotrace {

inline long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long pos_mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline long mul_mod(long a, long b, long m) {
    return static_cast<long>(static_cast<__int128>(a) * b % m);
}

inline long isqrt(long n) {
    if (n < 0) throw domain_error("isqrt: negative argument");
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(long n) {
    if (n < 0) return false;
    long r = isqrt(n);
    return r * r == n;
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
inline long inv_mod(long a, long m) {
    long g = m, x = 0, x1 = 1, r = pos_mod(a, m);
    while (r != 0) {
        long q = g / r;
        std::tie(g, r) = std::make_pair(r, g - q * r);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw domain_error("inv_mod: not invertible");
    return pos_mod(x, m);
}

// (prime, exponent) pairs of |n|, n != 0.
inline std::vector<std::pair<long, int>> factorize(long n) {
    if (n == 0) throw domain_error("factorize: zero");
    if (n < 0) n = -n;
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline bool is_squarefree(long n) {
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> d{1};
    for (auto& [p, e] : factorize(n)) {
        size_t sz = d.size();
        long pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

inline long euler_phi(long n) {
    long r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

}  // namespace cyclotrace
