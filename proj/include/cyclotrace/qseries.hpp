#pragma once

#include "qseries/qseries.hpp"
#include "qseries/modular.hpp"
#include "qseries/evaluate.hpp"
#include "qseries/json.hpp"
