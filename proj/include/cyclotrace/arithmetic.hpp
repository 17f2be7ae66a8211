#pragma once

#include "arithmetic/characters.hpp"
#include "arithmetic/indefinite.hpp"
#include "arithmetic/integers.hpp"
#include "arithmetic/quadform.hpp"
