#pragma once

#include "mockforms/mock.hpp"
#include "mockforms/weakly_holo.hpp"
