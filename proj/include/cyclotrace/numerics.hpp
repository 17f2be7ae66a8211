#pragma once

#include "numerics/bessel.hpp"
#include "numerics/complex.hpp"
#include "numerics/differentiation.hpp"
#include "numerics/errors.hpp"
#include "numerics/ext_real.hpp"
#include "numerics/hypergeometric.hpp"
#include "numerics/incomplete_gamma.hpp"
#include "numerics/quadrature.hpp"
#include "numerics/real_traits.hpp"
#include "numerics/special.hpp"
