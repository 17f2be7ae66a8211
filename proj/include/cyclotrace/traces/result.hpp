#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "../kloosterman/summation.hpp"
#include "../numerics/errors.hpp"
#include "../numerics/ext_real.hpp"

namespace cyclotrace {

enum class TraceMethod { cm, cycle, salie_series, kloosterman_series, jhat_derivative };

inline const char* trace_method_name(TraceMethod m) {
    switch (m) {
        case TraceMethod::cm: return "cm";
        case TraceMethod::cycle: return "cycle";
        case TraceMethod::salie_series: return "salie-series";
        case TraceMethod::kloosterman_series: return "kloosterman-series";
        default: return "jhat-derivative";
    }
}

struct TraceParams {
    long c_max = 0;
    long a_max = 0;       // largest |a| among the class representatives
    unsigned precision = 0;
    double h = 0;
    double s = std::numeric_limits<double>::quiet_NaN();
    long classes = 0;
    long terms = 0;       // q-series length (cm, cycle) or quadrature nodes
    SumMethod sum_method = SumMethod::smooth;
};

struct TraceResult {
    ExtReal value;
    TraceMethod method = TraceMethod::cm;
    double error_estimate = 0;
    double imag_residual = 0;  // size of the discarded imaginary part
    TraceParams params;
};

}  // namespace cyclotrace
