#pragma once

#include <array>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "../numerics/complex.hpp"
#include "../numerics/errors.hpp"
#include "characters.hpp"
#include "integers.hpp"

namespace cyclotrace {

inline bool is_discriminant(long v) {
    long r = pos_mod(v, 4);
    return v != 0 && (r == 0 || r == 1);
}

inline bool is_fundamental_discriminant(long v) {
    if (!is_discriminant(v)) return false;
    if (v == 1) return true;
    if (pos_mod(v, 4) == 1) return is_squarefree(v);
    long m = v / 4;
    long r = pos_mod(m, 4);
    return (r == 2 || r == 3) && is_squarefree(m);
}

struct Discriminant {
    long value = 0;
    bool is_fundamental = false;
    bool is_square = false;

    Discriminant() = default;
    explicit Discriminant(long v) : value(v) {
        if (!is_discriminant(v)) throw domain_error("not a discriminant: " + std::to_string(v));
        is_fundamental = is_fundamental_discriminant(v);
        is_square = cyclotrace::is_square(v);
    }
};

// 2x2 integer matrix [[a, b], [c, d]]
struct Mat2 {
    long a = 1, b = 0, c = 0, d = 1;
    long det() const { return a * d - b * c; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

// Q = [a, b, c] = a X^2 + b X Y + c Y^2
struct QuadForm {
    long a = 0, b = 0, c = 0;

    long disc() const { return b * b - 4 * a * c; }
    long content() const { return std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c)); }
    long operator()(long x, long y) const { return a * x * x + b * x * y + c * y * y; }
    QuadForm operator-() const { return {-a, -b, -c}; }

    // (Q o g)(X, Y) = Q(g.a X + g.b Y, g.c X + g.d Y)
    QuadForm act(const Mat2& g) const {
        return {(*this)(g.a, g.c), 2 * a * g.a * g.b + b * (g.a * g.d + g.b * g.c) + 2 * c * g.c * g.d,
                (*this)(g.b, g.d)};
    }

    friend bool operator==(const QuadForm& x, const QuadForm& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
    friend bool operator!=(const QuadForm& x, const QuadForm& y) { return !(x == y); }
    friend bool operator<(const QuadForm& x, const QuadForm& y) {
        return std::array<long, 3>{x.a, x.b, x.c} < std::array<long, 3>{y.a, y.b, y.c};
    }
    friend std::ostream& operator<<(std::ostream& os, const QuadForm& q) {
        return os << "[" << q.a << "," << q.b << "," << q.c << "]";
    }
};

inline QuadForm make_definite_form(long a, long b, long c) {
    QuadForm q{a, b, c};
    if (q.disc() < 0 && a <= 0) throw domain_error("definite forms must have a > 0");
    return q;
}

// |b| <= a <= c, with b >= 0 when |b| = a or a = c.
inline QuadForm reduce_definite(QuadForm q) {
    if (q.disc() >= 0) throw domain_error("reduce_definite: discriminant must be negative");
    if (q.a < 0) throw domain_error("reduce_definite: form is negative definite");
    for (;;) {
        // translate b into (-a, a]
        long k = floor_div(q.a - q.b, 2 * q.a);
        q = q.act(Mat2{1, k, 0, 1});
        if (q.a > q.c) {
            q = QuadForm{q.c, -q.b, q.a};
            continue;
        }
        if (q.a == q.c && q.b < 0) q.b = -q.b;
        return q;
    }
}

struct ClassList {
    long discriminant = 0;
    std::vector<QuadForm> forms;
    std::vector<int> w;  // |Gamma_Q| / 2 for definite classes: 1, 2 or 3
};

// Stabilizer order from the reduced shape: k[1,1,1] -> 3, k[1,0,1] -> 2.
inline int stabilizer_order(const QuadForm& reduced) {
    if (reduced.a == reduced.b && reduced.b == reduced.c) return 3;
    if (reduced.b == 0 && reduced.a == reduced.c) return 2;
    return 1;
}

// All reduced forms of discriminant d < 0, imprimitive ones included.
inline ClassList class_list_definite(long d) {
    if (d >= 0 || !is_discriminant(d)) throw domain_error("class_list_definite: need a negative discriminant");
    ClassList cl;
    cl.discriminant = d;
    long amax = isqrt(-d / 3);
    for (long a = 1; a <= amax; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - d;
            if (num % (4 * a)) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            QuadForm q{a, b, c};
            cl.forms.push_back(q);
            cl.w.push_back(stabilizer_order(q));
        }
    }
    return cl;
}

// H(n): classes of discriminant -n weighted by 1/w; H(0) = -1/12.
inline mpq_class hurwitz_class_number(long n) {
    if (n < 0) throw domain_error("hurwitz_class_number: n must be non-negative");
    if (n == 0) return mpq_class(-1, 12);
    long r = n % 4;
    if (r == 1 || r == 2) throw domain_error("hurwitz_class_number: n must be 0 or 3 mod 4");
    ClassList cl = class_list_definite(-n);
    mpq_class h = 0;
    for (int w : cl.w) h += mpq_class(1, w);
    h.canonicalize();
    return h;
}

inline long genus_search_bound(long D) { return 2 * std::labs(D) + 8; }

// chi_D(Q) = (D/r) for r represented by Q with gcd(r, D) = 1; 0 if gcd(a, b, c, D) > 1.
inline int genus_character(long D, const QuadForm& q) {
    if (!is_fundamental_discriminant(D)) throw domain_error("genus_character: D must be fundamental");
    long Dd = q.disc();
    if (Dd % D != 0 || !is_discriminant(Dd / D)) throw domain_error("genus_character: disc(Q)/D is not a discriminant");
    if (std::gcd(q.content(), std::labs(D)) > 1) return 0;
    long B = genus_search_bound(D);
    for (long s = 1; s <= 2 * B; ++s) {
        for (long x = -B; x <= B; ++x) {
            long y = s - std::labs(x);
            if (y < 0 || y > B) continue;
            for (long ys : {y, -y}) {
                long r = q(x, ys);
                if (r != 0 && std::gcd(std::labs(r), std::labs(D)) == 1) return kronecker(D, r);
                if (y == 0) break;
            }
        }
    }
    throw internal_error("genus_character: no represented value coprime to D within the search bound");
}

// Root of Q(tau, 1) = 0 in the upper half plane.
template <class Real>
Complex<Real> cm_point(const QuadForm& q) {
    using std::sqrt;
    long d = q.disc();
    if (d >= 0 || q.a <= 0) throw domain_error("cm_point: need a positive definite form");
    Real two_a(2 * q.a);
    return Complex<Real>(Real(-q.b) / two_a, sqrt(Real(-d)) / two_a);
}

}  // namespace cyclotrace
