#pragma once

#include <map>
#include <vector>

#include <gmpxx.h>

#include "../arithmetic/characters.hpp"
#include "../numerics/errors.hpp"
#include "qseries.hpp"

namespace cyclotrace {

// 1 + 240 sum sigma_3(n) q^n
inline ZSeries eisenstein_e4(long N) {
    std::vector<mpz_class> c(N + 1);
    c[0] = 1;
    for (long n = 1; n <= N; ++n) c[n] = 240 * sigma(3, n);
    return ZSeries(0, std::move(c));
}

// 1 - 504 sum sigma_5(n) q^n
inline ZSeries eisenstein_e6(long N) {
    std::vector<mpz_class> c(N + 1);
    c[0] = 1;
    for (long n = 1; n <= N; ++n) c[n] = -504 * sigma(5, n);
    return ZSeries(0, std::move(c));
}

// (E4^3 - E6^2) / 1728 = q - 24 q^2 + ...
inline ZSeries delta(long N) {
    ZSeries e4 = eisenstein_e4(N), e6 = eisenstein_e6(N);
    ZSeries d = ZSeries::pow(e4, 3) - e6 * e6;
    std::vector<mpz_class> c(N + 1);
    for (long n = 0; n <= N; ++n) c[n] = qs_detail::divide_lead(d.coeff(n), mpz_class(1728));
    return ZSeries(0, std::move(c));
}

// j = E4^3 / Delta, known through q^N.
inline ZSeries j_invariant(long N) {
    if (N < 1) throw domain_error("j_invariant: N must be at least 1");
    ZSeries e4 = eisenstein_e4(N + 2);
    ZSeries dl = delta(N + 2);
    return (ZSeries::pow(e4, 3) / dl).truncated(N);
}

// j_0 = 1, j_1 = J, ..., j_m = q^{-m} + O(q): all known through q^N.
inline std::vector<ZSeries> faber_basis(long m_max, long N) {
    if (m_max < 0 || N < 1) throw domain_error("faber_basis: need m_max >= 0 and N >= 1");
    ZSeries J = j_invariant(N + m_max);
    J -= ZSeries::monomial(0, mpz_class(744), J.precision());
    std::vector<ZSeries> out;
    out.push_back(ZSeries::monomial(0, mpz_class(1), N));
    ZSeries Jpow = ZSeries::monomial(0, mpz_class(1), J.precision());
    for (long m = 1; m <= m_max; ++m) {
        Jpow = Jpow * J;
        ZSeries P = Jpow;
        for (long k = m - 1; k >= 1; --k) {
            mpz_class ck = P.coeff(-k);
            if (ck != 0) P -= out[k] * ck;
        }
        mpz_class c0 = P.coeff(0);
        if (c0 != 0) P -= ZSeries::monomial(0, c0, P.precision());
        out.push_back(P.truncated(N));
    }
    return out;
}

inline ZSeries faber(long m, long N) {
    if (m < 1) throw domain_error("faber: m must be positive");
    return faber_basis(m, N)[m];
}

// theta = sum_{n in Z} q^{n^2}
inline ZSeries theta_series(long N) {
    std::vector<mpz_class> c(N + 1, 0);
    for (long n = 0; n * n <= N; ++n) c[n * n] += (n == 0 ? 1 : 2);
    return ZSeries(0, std::move(c), Support::plus_half);
}

// sum_{n in Z} (-1)^n q^{n^2} = theta(tau + 1/2)
inline ZSeries theta_alt_series(long N) {
    std::vector<mpz_class> c(N + 1, 0);
    for (long n = 0; n * n <= N; ++n) c[n * n] += (n == 0 ? 1 : ((n % 2) ? -2 : 2));
    return ZSeries(0, std::move(c));
}

// prod_{n>=1} prod_k (1 - q^{k n})^{e_k}, known through q^N.
inline ZSeries euler_product(long N, const std::map<long, long>& exponents) {
    ZSeries acc = ZSeries::monomial(0, mpz_class(1), N);
    for (auto [k, e] : exponents) {
        if (k < 1) throw domain_error("euler_product: k must be positive");
        // log-free: multiply/divide by (1 - q^{kn}) one factor at a time
        for (long n = 1; k * n <= N; ++n) {
            long step = k * n;
            std::vector<mpz_class> c = acc.coefficients();
            long reps = e > 0 ? e : -e;
            for (long r = 0; r < reps; ++r) {
                if (e > 0) {
                    for (long i = N; i >= step; --i) c[i] -= c[i - step];
                } else {
                    for (long i = step; i <= N; ++i) c[i] += c[i - step];
                }
            }
            acc = ZSeries(0, std::move(c));
        }
    }
    return acc;
}

// eta(tau)^8 / eta(4 tau)^8 = q^{-1} - 8 + 20 q - 62 q^3 + ..., a Hauptmodul for Gamma_0(4).
inline ZSeries hauptmodul_gamma0_4(long N) {
    ZSeries p = euler_product(N + 1, {{1, 8}, {4, -8}});
    return p.shifted(-1).truncated(N);
}

}  // namespace cyclotrace
