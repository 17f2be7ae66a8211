#pragma once

// Traces of J = j - 744: CM traces for dD < 0 and cycle-integral traces for d, D > 0.

#include <cmath>
#include <vector>

#include "../arithmetic/indefinite.hpp"
#include "../arithmetic/quadform.hpp"
#include "../numerics/complex.hpp"
#include "../numerics/errors.hpp"
#include "../numerics/quadrature.hpp"
#include "../numerics/real_traits.hpp"
#include "../qseries/evaluate.hpp"
#include "../qseries/modular.hpp"
#include "result.hpp"

namespace cyclotrace {

// Gamma-equivalent point with |Re| <= 1/2 and |tau| >= 1.
template <class Real>
Complex<Real> reduce_to_fundamental_domain(Complex<Real> tau) {
    using std::floor;
    if (!(tau.im > 0)) throw domain_error("reduce_to_fundamental_domain: tau must lie in the upper half plane");
    for (int i = 0; i < 100000; ++i) {
        tau.re -= floor(Real(tau.re + Real(0.5)));
        Real r = norm(tau);
        if (!(r < 1)) return tau;
        tau = Complex<Real>(Real(-tau.re / r), Real(tau.im / r));
    }
    throw internal_error("reduce_to_fundamental_domain: no termination");
}

// J(tau) from its q-expansion, long enough that the tail bound on Im tau >= sqrt(3)/2
// stays below tol. Arguments are reduced to the fundamental domain first.
template <class Real>
class JFunction {
public:
    explicit JFunction(double tol) : tol_(tol) {
        if (!(tol > 0)) throw domain_error("JFunction: tolerance must be positive");
        const double log_r = -2 * M_PI * std::sqrt(3.0) / 2;
        long N = 32;
        for (int round = 0; round < 8; ++round) {
            series_ = j_invariant(N);
            series_ -= ZSeries::monomial(0, mpz_class(744), N);
            env_ = fit_envelope(series_, 4 * M_PI, -0.75);
            long need = suggest_length(env_, log_r, tol, 1);
            if (need < 0) throw convergence_error("JFunction: no series length reaches the tolerance");
            if (need <= N) return;
            N = need + 4;
        }
        throw internal_error("JFunction: length selection did not settle");
    }

    SeriesValue<Real> evaluate_reduced(const Complex<Real>& tau) const {
        return evaluate(series_, reduce_to_fundamental_domain(tau), env_);
    }
    Complex<Real> operator()(const Complex<Real>& tau) const { return evaluate_reduced(tau).value; }

    long length() const { return series_.precision(); }
    double tolerance() const { return tol_; }

private:
    double tol_;
    ZSeries series_;
    GrowthEnvelope env_;
};

namespace trace_detail {

inline void check_twist(long D, const char* who) {
    if (D != 1 && !(D > 1 && is_fundamental_discriminant(D)))
        throw domain_error(std::string(who) + ": D must be 1 or a positive fundamental discriminant");
}

inline int twist(long D, const QuadForm& q) { return D == 1 ? 1 : genus_character(D, q); }

}  // namespace trace_detail

// Bits used by trace_cm: the dominant class has |J| ~ e^{pi sqrt|dD|}.
inline unsigned cm_precision(long dD) {
    return static_cast<unsigned>(std::ceil(1.2 * M_PI * std::sqrt(std::fabs(double(dD))) * M_LOG2E)) + 64;
}

struct CmOptions {
    unsigned precision = 0;  // raised to cm_precision(dD) if lower
};

// (1/sqrt D) sum_{Q in Gamma \ Q_dD} chi_D(Q) J(tau_Q) / |Gamma_Q|, d < 0.
inline TraceResult trace_cm(long d, long D, const CmOptions& o = {}) {
    if (d >= 0 || !is_discriminant(d)) throw domain_error("trace_cm: d must be a negative discriminant");
    trace_detail::check_twist(D, "trace_cm");
    const unsigned outer = working_precision();
    const long dD = d * D;
    const unsigned P = std::max(cm_precision(dD), o.precision);
    PrecisionContext ctx(P);
    ClassList cl = class_list_definite(dD);
    JFunction<ExtReal> J(std::ldexp(1.0, -60));
    ExtComplex acc;
    double tail = 0, jmax = 0;
    long amax = 0;
    for (size_t i = 0; i < cl.forms.size(); ++i) {
        const QuadForm& q = cl.forms[i];
        amax = std::max(amax, q.a);
        int chi = trace_detail::twist(D, q);
        if (chi == 0) continue;
        auto v = J.evaluate_reduced(cm_point<ExtReal>(q));
        ExtReal w(cl.w[i]);
        acc += v.value * ExtReal(chi) / w;
        tail += v.tail_bound / cl.w[i];
        jmax = std::max(jmax, to_double(abs(v.value)));
    }
    ExtReal sd = sqrt(ExtReal(D));
    TraceResult r;
    r.method = TraceMethod::cm;
    r.value = ExtReal(acc.re / sd).rounded(outer);
    r.imag_residual = to_double(abs(acc.im)) / std::sqrt(double(D));
    r.error_estimate = (tail + jmax * std::ldexp(1.0, 8 - static_cast<int>(P))) / std::sqrt(double(D));
    r.params.precision = P;
    r.params.a_max = amax;
    r.params.classes = static_cast<long>(cl.forms.size());
    r.params.terms = J.length();
    return r;
}

// Generator of the automorph group of Q modulo +-1, valid for imprimitive forms.
inline Mat2 primitive_automorph(const QuadForm& q) {
    long g = q.content();
    Mat2 m = automorph(QuadForm{q.a / g, q.b / g, q.c / g});
    return m;
}

// Hyperbolic length 2 log eps of the closed geodesic Gamma_Q \ S_Q.
template <class Real>
Real cycle_period(const QuadForm& q) {
    using std::log;
    using std::sqrt;
    long g = q.content();
    long delta = q.disc() / (g * g);
    PellSolution p = pell_fundamental(delta);
    Real t = to_real<Real>(p.t), u = to_real<Real>(p.u);
    return Real(2) * log(Real((t + u * sqrt(Real(delta))) / Real(2)));
}

// Point of S_Q at signed arclength u from the top of the semicircle.
template <class Real>
Complex<Real> geodesic_point(const QuadForm& q, const Real& u) {
    using std::cosh;
    using std::sqrt;
    using std::tanh;
    long delta = q.disc();
    if (delta <= 0) throw domain_error("geodesic_point: need a positive discriminant");
    if (q.a == 0) throw domain_error("geodesic_point: a = 0 gives a vertical geodesic");
    Real c0 = Real(-q.b) / Real(2 * q.a);
    Real r = sqrt(Real(delta)) / Real(2 * std::labs(q.a));
    return Complex<Real>(Real(c0 - r * tanh(u)), Real(r / cosh(u)));
}

template <class Real>
struct CycleIntegral {
    Complex<Real> value;
    double error = 0;
    long evaluations = 0;
    Real period;
};

struct CycleOptions {
    int nodes = 64;
    double rel_tol = 1e-12;
    double base = 0;  // arclength offset of the start of the fundamental arc
};

// int_{Gamma_Q \ S_Q} J(tau) dtau / Q(tau, 1) = (1/sqrt(disc)) int_{u0}^{u0 + L} J(tau(u)) du
// for either orientation of S_Q.
template <class Real>
CycleIntegral<Real> cycle_integral(const QuadForm& q, const JFunction<Real>& J, const CycleOptions& o = {}) {
    using std::sqrt;
    if (o.nodes < 2) throw domain_error("cycle_integral: need at least two nodes");
    CycleIntegral<Real> out;
    out.period = cycle_period<Real>(q);
    Real a(o.base), b = Real(o.base) + out.period;
    auto f = [&](const Real& u) { return J(geodesic_point(q, u)); };
    Complex<Real> whole = gauss_legendre_integrate(f, a, b, o.nodes);
    double tol = o.rel_tol * std::max(1.0, to_double(abs(whole)));
    auto res = integrate_adaptive(f, a, b, tol, o.nodes);
    Real s = sqrt(Real(q.disc()));
    out.value = res.value / s;
    out.error = res.error / to_double(s) + J.tolerance() * to_double(out.period / s);
    out.evaluations = res.evaluations + o.nodes;
    return out;
}

// (1/2 pi) sum_{Q in Gamma \ Q_dD} chi_D(Q) int_{Gamma_Q \ S_Q} J(tau) dtau / Q(tau, 1), d, D > 0.
inline TraceResult trace_cycle(long d, long D, const CycleOptions& o = {}) {
    if (d <= 0 || !is_discriminant(d)) throw domain_error("trace_cycle: d must be a positive discriminant");
    trace_detail::check_twist(D, "trace_cycle");
    const long dD = d * D;
    if (is_square(dD)) throw domain_error("trace_cycle: dD must not be a square");
    const unsigned P = working_precision();
    JFunction<ExtReal> J(std::ldexp(1.0, -static_cast<int>(std::min(P, 1000u)) + 16));
    auto classes = class_list_indefinite(dD);
    ExtComplex acc;
    double err = 0;
    long evals = 0, amax = 0;
    for (const auto& cls : classes) {
        const QuadForm& q = cls.representative;
        amax = std::max(amax, std::labs(q.a));
        int chi = trace_detail::twist(D, q);
        if (chi == 0) continue;
        auto I = cycle_integral(q, J, o);
        acc += I.value * ExtReal(chi);
        err += I.error;
        evals += I.evaluations;
    }
    ExtReal two_pi = ExtReal(2) * pi_v<ExtReal>();
    TraceResult r;
    r.method = TraceMethod::cycle;
    r.value = acc.re / two_pi;
    r.imag_residual = to_double(abs(acc.im / two_pi));
    r.error_estimate = err / (2 * M_PI);
    r.params.precision = P;
    r.params.a_max = amax;
    r.params.classes = static_cast<long>(classes.size());
    r.params.terms = evals;
    return r;
}

}  // namespace cyclotrace
