#pragma once

#include <cmath>

#include "errors.hpp"
#include "real_traits.hpp"

namespace cyclotrace {

template <class Real>
struct DerivativeEstimate {
    Real value;
    Real error;
};

// Central difference at h and h/2 with one Richardson step.
template <class Real, class F>
DerivativeEstimate<Real> richardson_derivative(F&& f, const Real& x, const Real& h) {
    using std::fabs;
    Real h2 = h / 2;
    Real d1 = (f(Real(x + h)) - f(Real(x - h))) / (2 * h);
    Real d2 = (f(Real(x + h2)) - f(Real(x - h2))) / (2 * h2);
    Real r = (4 * d2 - d1) / 3;
    return {r, Real(fabs(r - d2))};
}

// Second derivative, same scheme.
template <class Real, class F>
DerivativeEstimate<Real> richardson_second_derivative(F&& f, const Real& x, const Real& h) {
    using std::fabs;
    Real h2 = h / 2;
    Real f0 = f(x);
    Real d1 = (f(Real(x + h)) - 2 * f0 + f(Real(x - h))) / (h * h);
    Real d2 = (f(Real(x + h2)) - 2 * f0 + f(Real(x - h2))) / (h2 * h2);
    Real r = (4 * d2 - d1) / 3;
    return {r, Real(fabs(r - d2))};
}

}  // namespace cyclotrace
