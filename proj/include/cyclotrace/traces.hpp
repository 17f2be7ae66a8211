#pragma once

#include "traces/modified.hpp"
#include "traces/result.hpp"
#include "traces/singular.hpp"
