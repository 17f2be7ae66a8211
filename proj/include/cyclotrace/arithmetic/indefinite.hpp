#pragma once

#include <map>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "../numerics/errors.hpp"
#include "integers.hpp"
#include "quadform.hpp"

namespace cyclotrace {

struct PellSolution {
    mpz_class t, u;
};

namespace pell_detail {

// Minimal x, y > 0 with x^2 - n y^2 = 1 from the continued fraction of sqrt(n).
inline PellSolution pell_one(long n) {
    long a0 = isqrt(n);
    mpz_class h_prev = 1, h = a0, k_prev = 0, k = 1;
    long m = 0, d = 1, a = a0;
    for (int iter = 0; iter < 1000000; ++iter) {
        if (h * h - n * k * k == 1) return {h, k};
        m = d * a - m;
        d = (n - m * m) / d;
        a = (a0 + m) / d;
        mpz_class hn = a * h + h_prev, kn = a * k + k_prev;
        h_prev = h;
        k_prev = k;
        h = hn;
        k = kn;
    }
    throw internal_error("pell: continued fraction did not close");
}

inline bool exact_sqrt(const mpz_class& v, mpz_class& r) {
    if (v < 0) return false;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r * r == v;
}

}  // namespace pell_detail

// Minimal t, u > 0 with t^2 - Delta u^2 = 4.
inline PellSolution pell_fundamental(long Delta) {
    if (Delta <= 0 || !is_discriminant(Delta)) throw domain_error("pell_fundamental: need a positive discriminant");
    if (is_square(Delta)) throw domain_error("pell_fundamental: square discriminant");
    PellSolution one = pell_detail::pell_one(Delta);
    // (t + u sqrt(Delta))/2 is a root of X + Y sqrt(Delta) of order 1, 2 or 3.
    mpz_class X = one.t;
    PellSolution best{2 * one.t, 2 * one.u};
    mpz_class t, u, uu;
    // order 3: t^3 - 3t = 2X
    {
        mpz_class target = 2 * X, r;
        mpz_root(r.get_mpz_t(), target.get_mpz_t(), 3);
        for (mpz_class c = r - 1; c <= r + 2; ++c) {
            if (c > 0 && c * c * c - 3 * c == target) {
                mpz_class v = c * c - 4;
                if (v % Delta == 0 && pell_detail::exact_sqrt(mpz_class(v / Delta), uu) && uu > 0) {
                    if (c < best.t) best = {c, uu};
                }
            }
        }
    }
    // order 2: t^2 - 2 = 2X
    {
        mpz_class v = 2 * X + 2;
        if (pell_detail::exact_sqrt(v, t)) {
            mpz_class w = t * t - 4;
            if (w % Delta == 0 && pell_detail::exact_sqrt(mpz_class(w / Delta), uu) && uu > 0 && t < best.t)
                best = {t, uu};
        }
    }
    return best;
}

inline PellSolution pell_fundamental(const Discriminant& D) { return pell_fundamental(D.value); }

// Generator of the automorph group of Q (modulo -1).
inline Mat2 automorph(const QuadForm& q) {
    long Delta = q.disc();
    if (Delta <= 0 || is_square(Delta)) throw domain_error("automorph: need a positive non-square discriminant");
    PellSolution p = pell_fundamental(Delta);
    if (!p.t.fits_slong_p() || !p.u.fits_slong_p()) throw domain_error("automorph: fundamental unit exceeds 64-bit entries");
    long t = p.t.get_si(), u = p.u.get_si();
    if ((t + q.b * u) % 2 != 0) throw internal_error("automorph: parity failure");
    return Mat2{(t + q.b * u) / 2, q.c * u, -q.a * u, (t - q.b * u) / 2};
}

// [a, b, c] with 0 < a <= a_max, b in [0, 2a) and b^2 = Delta (mod 4a): one form per
// Gamma_infty orbit of forms with a > 0.
inline std::vector<QuadForm> gamma_infty_reps(long Delta, long a_max) {
    if (Delta <= 0) throw domain_error("gamma_infty_reps: need a positive discriminant");
    std::vector<QuadForm> out;
    for (long a = 1; a <= a_max; ++a)
        for (long b = 0; b < 2 * a; ++b)
            if (pos_mod(b * b - Delta, 4 * a) == 0) out.push_back({a, b, (b * b - Delta) / (4 * a)});
    return out;
}

// Gauss-reduced indefinite forms: 0 < b < sqrt(D), sqrt(D) - b < 2|a| < sqrt(D) + b.
inline bool is_reduced_indefinite(const QuadForm& q) {
    long D = q.disc();
    long s = isqrt(D);  // sqrt(D) not an integer
    if (!(q.b > 0 && q.b <= s)) return false;
    long A = 2 * std::labs(q.a);
    // sqrt(D) - b < A  <=>  A + b > sqrt(D)  <=>  A + b > s (strict since sqrt(D) irrational)
    return A + q.b > s && A - q.b <= s;
}

// Right neighbour: [a, b, c] -> [c, b', a'] with b' = -b (mod 2c) in the
// normalizing window; preserves reducedness.
inline QuadForm rho(const QuadForm& q) {
    long D = q.disc();
    long s = isqrt(D);
    long C = std::labs(q.c);
    long r;
    if (C > s) {
        // -|c| < r <= |c|
        r = pos_mod(-q.b, 2 * C);
        if (r > C) r -= 2 * C;
    } else {
        // sqrt(D) - 2|c| < r < sqrt(D), i.e. the largest r = -b (mod 2c) with r <= s
        r = s - pos_mod(s + q.b, 2 * C);
    }
    return {q.c, r, (r * r - D) / (4 * q.c)};
}

// Iterates rho until the form is reduced.
inline QuadForm reduce_indefinite(QuadForm q) {
    long D = q.disc();
    if (D <= 0 || is_square(D)) throw domain_error("reduce_indefinite: need a positive non-square discriminant");
    for (int i = 0; i < 100000; ++i) {
        if (is_reduced_indefinite(q)) return q;
        q = rho(q);
    }
    throw internal_error("reduce_indefinite: no reduced form reached");
}

struct IndefiniteClass {
    QuadForm representative;
    std::vector<QuadForm> cycle;
};

// Classes of forms of non-square discriminant Delta > 0 (imprimitive ones
// included), as cycles of reduced forms.
inline std::vector<IndefiniteClass> class_list_indefinite(long Delta) {
    if (Delta <= 0 || !is_discriminant(Delta) || is_square(Delta))
        throw domain_error("class_list_indefinite: need a positive non-square discriminant");
    long s = isqrt(Delta);
    std::set<QuadForm> reduced;
    for (long b = 1; b <= s; ++b) {
        if (pos_mod(b * b - Delta, 4) != 0) continue;
        long N = (Delta - b * b) / 4;  // = -a c > 0
        for (long a : divisors(N)) {
            if (!(2 * a + b > s && 2 * a - b <= s)) continue;
            long c = N / a;
            reduced.insert({a, b, -c});
            reduced.insert({-a, b, c});
        }
    }
    std::vector<IndefiniteClass> out;
    std::set<QuadForm> seen;
    for (const QuadForm& q : reduced) {
        if (seen.count(q)) continue;
        IndefiniteClass cls;
        cls.representative = q;
        QuadForm cur = q;
        do {
            if (!is_reduced_indefinite(cur)) throw internal_error("class_list_indefinite: rho left the reduced set");
            seen.insert(cur);
            cls.cycle.push_back(cur);
            cur = rho(cur);
        } while (cur != q && cls.cycle.size() < 100000);
        out.push_back(std::move(cls));
    }
    return out;
}

// Index of the class of q in a list from class_list_indefinite, or -1.
inline int find_indefinite_class(const std::vector<IndefiniteClass>& classes, const QuadForm& q) {
    QuadForm r = reduce_indefinite(q);
    for (size_t i = 0; i < classes.size(); ++i)
        for (const QuadForm& f : classes[i].cycle)
            if (f == r) return static_cast<int>(i);
    return -1;
}

}  // namespace cyclotrace
