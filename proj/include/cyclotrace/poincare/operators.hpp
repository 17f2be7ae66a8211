#pragma once

#include <functional>

#include "../numerics/complex.hpp"
#include "../numerics/errors.hpp"

namespace cyclotrace {

template <class Real>
using Evaluator = std::function<Complex<Real>(const Complex<Real>&)>;

namespace op_detail {

template <class Real>
void check_step(const Complex<Real>& tau, double step) {
    if (!(tau.im > 0)) throw domain_error("differential operator: tau must lie in the upper half plane");
    if (!(step > 0) || step > 1e-2 * to_double(tau.im))
        throw domain_error("differential operator: step must lie in (0, 1e-2 Im tau]");
}

// f_xx + f_yy by the 5-point stencil
template <class Real>
Complex<Real> plain_laplacian(const Evaluator<Real>& f, const Complex<Real>& tau, const Real& h) {
    Complex<Real> c = f(tau);
    Complex<Real> s = f(Complex<Real>(Real(tau.re + h), tau.im)) + f(Complex<Real>(Real(tau.re - h), tau.im)) +
                      f(Complex<Real>(tau.re, Real(tau.im + h))) + f(Complex<Real>(tau.re, Real(tau.im - h)));
    return (s - c * Real(4)) / Real(h * h);
}

template <class Real>
std::pair<Complex<Real>, Complex<Real>> gradient(const Evaluator<Real>& f, const Complex<Real>& tau, const Real& h) {
    Complex<Real> fx = (f(Complex<Real>(Real(tau.re + h), tau.im)) - f(Complex<Real>(Real(tau.re - h), tau.im))) / Real(2 * h);
    Complex<Real> fy = (f(Complex<Real>(tau.re, Real(tau.im + h))) - f(Complex<Real>(tau.re, Real(tau.im - h)))) / Real(2 * h);
    return {fx, fy};
}

// f_xx + f_yy, two Richardson levels over (h, h/2, h/4): error O(h^6).
template <class Real>
Complex<Real> richardson_laplacian(const Evaluator<Real>& f, const Complex<Real>& tau, double step) {
    Real h(step), h2 = Real(step) / 2, h4 = Real(step) / 4;
    Complex<Real> a = plain_laplacian(f, tau, h), b = plain_laplacian(f, tau, h2), c = plain_laplacian(f, tau, h4);
    Complex<Real> r1 = (b * Real(4) - a) / Real(3), r2 = (c * Real(4) - b) / Real(3);
    return (r2 * Real(16) - r1) / Real(15);
}

}  // namespace op_detail

// Delta_0 f = -y^2 (f_xx + f_yy); default step 1e-3 Im tau.
template <class Real>
Complex<Real> laplacian0(const Evaluator<Real>& f, const Complex<Real>& tau, double step = 0) {
    if (step == 0) step = 1e-3 * to_double(tau.im);
    op_detail::check_step(tau, step);
    return -(op_detail::richardson_laplacian(f, tau, step) * Real(tau.im * tau.im));
}

// Delta_k f = -y^2 (f_xx + f_yy) + i k y (f_x + i f_y)
template <class Real>
Complex<Real> laplacian_k(const Real& k, const Evaluator<Real>& f, const Complex<Real>& tau, double step = 0) {
    if (step == 0) step = 1e-3 * to_double(tau.im);
    op_detail::check_step(tau, step);
    Real h(step), h2 = Real(step) / 2;
    Complex<Real> lap = op_detail::richardson_laplacian(f, tau, step);
    auto [fx1, fy1] = op_detail::gradient(f, tau, h);
    auto [fx2, fy2] = op_detail::gradient(f, tau, h2);
    Complex<Real> fx = (fx2 * Real(4) - fx1) / Real(3), fy = (fy2 * Real(4) - fy1) / Real(3);
    Complex<Real> i = Complex<Real>::i();
    return -(lap * Real(tau.im * tau.im)) + i * (fx + i * fy) * Real(k * tau.im);
}

// xi_k f = 2 i y^k conj(d f / d tau-bar), d/d tau-bar = (d_x + i d_y)/2; default step 1e-4 Im tau.
template <class Real>
Complex<Real> xi_op(const Real& k, const Evaluator<Real>& f, const Complex<Real>& tau, double step = 0) {
    using std::pow;
    if (step == 0) step = 1e-4 * to_double(tau.im);
    op_detail::check_step(tau, step);
    Real h(step), h2 = Real(step) / 2;
    auto [fx1, fy1] = op_detail::gradient(f, tau, h);
    auto [fx2, fy2] = op_detail::gradient(f, tau, h2);
    Complex<Real> fx = (fx2 * Real(4) - fx1) / Real(3), fy = (fy2 * Real(4) - fy1) / Real(3);
    Complex<Real> i = Complex<Real>::i();
    Complex<Real> dbar = (fx + i * fy) * Real(0.5);
    return i * conj(dbar) * Real(2 * pow(tau.im, k));
}

}  // namespace cyclotrace
