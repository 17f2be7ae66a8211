#pragma once

#include "kloosterman/summation.hpp"
#include "kloosterman/sums.hpp"
#include "kloosterman/sweep.hpp"
