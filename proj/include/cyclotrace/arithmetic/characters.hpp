#pragma once

#include <cmath>

#include <gmpxx.h>

#include "../numerics/errors.hpp"
#include "integers.hpp"

namespace cyclotrace {

// Kronecker symbol (a/n) for arbitrary integers.
inline int kronecker(long a, long n) {
    static const int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a % 2 == 0) && (n % 2 == 0)) return 0;
    int k = 1;
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v % 2) k = tab2[a & 7];
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    long b = n;
    long x = pos_mod(a, b);
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            long r = b & 7;
            if (r == 3 || r == 5) k = -k;
        }
        std::swap(x, b);
        if ((x & 3) == 3 && (b & 3) == 3) k = -k;
        x %= b;
    }
    return b == 1 ? k : 0;
}

// sum_{t | m} t^k
inline mpz_class sigma(unsigned k, long m) {
    if (m < 1) throw domain_error("sigma: m must be positive");
    mpz_class s = 0, t;
    for (long d : divisors(m)) {
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), k);
        s += t;
    }
    return s;
}

// sum_{t | m} t^alpha for real alpha
template <class Real>
Real sigma_real(const Real& alpha, long m) {
    using std::pow;
    if (m < 1) throw domain_error("sigma_real: m must be positive");
    Real s(0);
    for (long d : divisors(m)) s += pow(Real(d), alpha);
    return s;
}

}  // namespace cyclotrace
