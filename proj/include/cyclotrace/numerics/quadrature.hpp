#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "real_traits.hpp"

namespace cyclotrace {

template <class V>
struct QuadResult {
    V value;
    double error = 0;
    long evaluations = 0;
};

namespace quad_detail {

template <class Real>
double magnitude(const Real& x) {
    return std::fabs(to_double(x));
}
template <class Real>
double magnitude(const Complex<Real>& z) {
    return std::hypot(to_double(z.re), to_double(z.im));
}

}  // namespace quad_detail

template <class Real>
struct GaussLegendreRule {
    std::vector<Real> nodes;    // on [-1, 1], ascending positive half only
    std::vector<Real> weights;
};

// Nodes by Newton iteration on P_n at the working precision. Cached per
// thread and precision, so repeated calls are cheap.
template <class Real>
const GaussLegendreRule<Real>& gauss_legendre(int n) {
    using std::cos;
    using std::fabs;
    thread_local std::map<std::pair<int, unsigned>, GaussLegendreRule<Real>> cache;
    auto key = std::make_pair(n, real_traits<Real>::bits());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (n < 1) throw domain_error("gauss_legendre: n must be positive");
    GaussLegendreRule<Real> rule;
    Real pi = pi_v<Real>();
    Real tol = real_traits<Real>::epsilon() * 8;
    for (int i = 1; i <= (n + 1) / 2; ++i) {
        Real x = cos(pi * (Real(i) - Real(0.25)) / (Real(n) + Real(0.5)));
        Real dp(0);
        for (int iter = 0; iter < 100; ++iter) {
            Real p0(1), p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            if (n == 1) p0 = Real(1);
            dp = n * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / dp;
            x -= dx;
            if (fabs(dx) <= tol) {
                // one more refresh of dp at the converged node
                Real q0(1), q1 = x;
                for (int k = 2; k <= n; ++k) {
                    Real q2 = ((2 * k - 1) * x * q1 - (k - 1) * q0) / k;
                    q0 = std::move(q1);
                    q1 = std::move(q2);
                }
                if (n == 1) q0 = Real(1);
                dp = n * (x * q1 - q0) / (x * x - 1);
                break;
            }
        }
        rule.nodes.push_back(x);
        rule.weights.push_back(2 / ((1 - x * x) * dp * dp));
    }
    return cache.emplace(key, std::move(rule)).first->second;
}

template <class Real, class F>
auto gauss_legendre_integrate(F&& f, const Real& a, const Real& b, int n) {
    const auto& rule = gauss_legendre<Real>(n);
    Real mid = (a + b) / 2, half = (b - a) / 2;
    using V = decltype(f(a));
    V sum = V(Real(0));
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const Real& x = rule.nodes[i];
        bool center = (n % 2 == 1) && i + 1 == rule.nodes.size();
        if (center) {
            sum += f(Real(mid + half * x)) * rule.weights[i];
        } else {
            sum += (f(Real(mid + half * x)) + f(Real(mid - half * x))) * rule.weights[i];
        }
    }
    return sum * half;
}

namespace quad_detail {

template <class Real, class F, class V>
V adaptive_rec(F& f, const Real& a, const Real& b, const V& whole, int n, double tol, int depth, long& evals,
               double& err) {
    Real m = (a + b) / 2;
    V left = gauss_legendre_integrate(f, a, m, n);
    V right = gauss_legendre_integrate(f, m, b, n);
    evals += 2 * n;
    V both = left + right;
    double diff = magnitude(V(both - whole));
    if (diff <= tol) {
        err += diff;
        return both;
    }
    if (depth <= 0) throw convergence_error("adaptive Gauss-Legendre: subdivision depth exhausted");
    return adaptive_rec(f, a, m, left, n, tol / 2, depth - 1, evals, err) +
           adaptive_rec(f, m, b, right, n, tol / 2, depth - 1, evals, err);
}

}  // namespace quad_detail

// Adaptive bisection driven by the disagreement between an n-point rule on an
// interval and on its two halves.
template <class Real, class F>
auto integrate_adaptive(F&& f, const Real& a, const Real& b, double abs_tol, int n = 64, int max_depth = 30) {
    using V = decltype(f(a));
    QuadResult<V> res{V(Real(0)), 0, 0};
    V whole = gauss_legendre_integrate(f, a, b, n);
    res.evaluations = n;
    res.value = quad_detail::adaptive_rec(f, a, b, whole, n, abs_tol, max_depth, res.evaluations, res.error);
    return res;
}

namespace quad_detail {

// Shared driver for double-exponential rules: x(u), w(u) supplied by the caller.
template <class Real, class F, class Map>
auto de_sum(F& f, Map& map, double tol, double rel_tol) {
    using V = decltype(f(Real(0)));
    using std::isfinite;
    Real h(1);
    long evals = 0;
    auto eval_at = [&](const Real& u, bool& negligible, bool& valid) -> V {
        Real x, w;
        valid = map(u, x, w);
        if (!valid) {
            negligible = true;
            return V(Real(0));
        }
        V fx = f(x) * w;
        ++evals;
        negligible = magnitude(fx) == 0 || !std::isfinite(magnitude(fx));
        if (!std::isfinite(magnitude(fx))) return V(Real(0));
        return fx;
    };
    auto sweep = [&](const Real& start, const Real& step, double scale) {
        V acc = V(Real(0));
        for (int dir = -1; dir <= 1; dir += 2) {
            int small_run = 0;
            for (long k = 0; k < 100000; ++k) {
                Real u = start + step * k;
                if (dir < 0) u = -u;
                bool neg = false, valid = true;
                V t = eval_at(u, neg, valid);
                if (!valid) break;
                acc += t;
                double mt = magnitude(t);
                if (neg || mt <= scale * 1e-3 * to_double(real_traits<Real>::epsilon())) {
                    if (++small_run >= 3) break;
                } else {
                    small_run = 0;
                }
            }
        }
        return acc;
    };
    // level 0: u = k for all integers
    bool neg = false, valid = true;
    V center = eval_at(Real(0), neg, valid);
    V total = center;
    double scale = magnitude(center) + 1e-300;
    {
        V s = sweep(Real(1), Real(1), scale);
        total += s;
        scale = std::max(scale, magnitude(total));
    }
    V estimate = total * h;
    for (int level = 1; level < 14; ++level) {
        h /= 2;
        V fresh = sweep(h, Real(2 * h), scale);
        total += fresh;
        V next = total * h;
        double diff = magnitude(V(next - estimate));
        estimate = next;
        if (level >= 3 && diff <= std::max(tol, rel_tol * magnitude(estimate))) return QuadResult<V>{estimate, diff, evals};
    }
    throw convergence_error("double-exponential quadrature did not converge");
}

}  // namespace quad_detail

// int_a^b f(x) dx by tanh-sinh; tolerates integrable endpoint singularities.
template <class Real, class F>
auto tanh_sinh(F&& f, const Real& a, const Real& b, double abs_tol, double rel_tol = 0) {
    using std::cosh;
    using std::exp;
    using std::sinh;
    Real half = (b - a) / 2;
    Real hp = pi_v<Real>() / 2;
    auto map = [&](const Real& u, Real& x, Real& w) {
        if (std::fabs(to_double(u)) > 7) return false;
        Real s = hp * sinh(u);
        Real e = exp(-2 * s);
        // t = tanh(s), 1 - t = 2e/(1+e) keeps endpoint distances accurate
        Real one_minus = 2 * e / (1 + e);
        Real one_plus = 2 / (1 + e);
        if (one_minus == 0 || one_plus == 0) return false;
        x = u >= 0 ? Real(b - half * one_minus) : Real(a + half * one_plus);
        if (!(x > a && x < b)) return false;
        Real sech = 2 / (exp(s) + exp(-s));
        w = half * hp * cosh(u) * sech * sech;
        return true;
    };
    return quad_detail::de_sum<Real>(f, map, abs_tol, rel_tol);
}

// int_a^inf f(x) dx by exp-sinh.
template <class Real, class F>
auto exp_sinh(F&& f, const Real& a, double abs_tol, double rel_tol = 0) {
    using std::cosh;
    using std::exp;
    using std::sinh;
    Real hp = pi_v<Real>() / 2;
    auto map = [&](const Real& u, Real& x, Real& w) {
        if (std::fabs(to_double(u)) > 7) return false;
        Real e = exp(hp * sinh(u));
        if (e == 0) return false;
        if constexpr (!real_traits<Real>::extended)
            if (!std::isfinite(e)) return false;
        x = a + e;
        if (!(x > a)) return false;
        w = hp * cosh(u) * e;
        return true;
    };
    return quad_detail::de_sum<Real>(f, map, abs_tol, rel_tol);
}

}  // namespace cyclotrace
