#pragma once

#include "poincare/coefficients.hpp"
#include "poincare/expansion.hpp"
#include "poincare/operators.hpp"
#include "poincare/series.hpp"
