#pragma once

// Command implementations shared by the cyclotrace tool. Each returns a JSON
// payload whose numbers are decimal strings.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include <json.hpp>

#include "../arithmetic.hpp"
#include "../kloosterman.hpp"
#include "../mockforms.hpp"
#include "../poincare.hpp"
#include "../qseries.hpp"
#include "../qseries/json.hpp"
#include "../traces.hpp"
#include "cache.hpp"
#include "config.hpp"

namespace cyclotrace::cli {

using nlohmann::json;

// Significant digits supported by the error estimate plus one guard digit,
// capped by the precision.
inline std::string decimal(const ExtReal& v, double err) {
    int cap = static_cast<int>(v.precision() * 0.30103) - 6;
    double av = std::fabs(to_double(v));
    int digits = cap;
    if (err > 0 && av > 0) digits = static_cast<int>(std::floor(std::log10(av / err))) + 1;
    digits = std::max(1, std::min(cap, digits));
    return v.str(digits);
}

inline std::string decimal(double v, double err) {
    double av = std::fabs(v);
    int digits = 17;
    if (err > 0 && av > 0) digits = static_cast<int>(std::floor(std::log10(av / err))) + 1;
    digits = std::max(1, std::min(17, digits));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Echo of a user-supplied double.
inline std::string input(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline BcoeffOptions bcoeff_options(const Config& c) {
    BcoeffOptions o;
    o.c_max = c.c_max;
    o.window = c.window;
    return o;
}

inline StarOptions star_options(const Config& c) {
    StarOptions o;
    o.b = bcoeff_options(c);
    return o;
}

// Throws convergence_error when err exceeds tol * max(1, |value|).
inline void check_tolerance(const char* who, double value, double err, const Config& c) {
    if (err > c.tol * std::max(1.0, std::fabs(value)))
        throw convergence_error(std::string(who) + ": error estimate " + full(err) + " exceeds tol " + full(c.tol) +
                                " at c_max " + std::to_string(c.c_max) + " (spread-based)");
}

inline void require_discriminant(long v, const char* flag) {
    if (!is_discriminant(v)) throw domain_error(std::string(flag) + " = " + std::to_string(v) + " is not = 0, 1 (mod 4)");
}

// Cache-first evaluation: the payload gets "params_hash" and "cached".
inline json cached_run(const Cache& cache, const std::string& kind, const json& args, const Config& c,
                       const std::function<json()>& compute) {
    std::string h = params_hash(kind, args, c);
    if (auto e = cache.load(kind, h)) {
        json out = (*e)["value"];
        out["params_hash"] = h;
        out["cached"] = true;
        return out;
    }
    json v = compute();
    cache.store(kind, h, {{"params", {{"args", args}, {"config", c.value_params()}}}, {"value", v},
                          {"error", {{"error_estimate", v.value("error_estimate", "0")}}}});
    v["params_hash"] = h;
    v["cached"] = false;
    return v;
}

inline json trace_payload(const TraceResult& r, double err_for_digits) {
    json p = {{"value", decimal(r.value, err_for_digits)},
              {"method", trace_method_name(r.method)},
              {"error_estimate", full(r.error_estimate)},
              {"imag_residual", full(r.imag_residual)},
              {"params",
               {{"c_max", r.params.c_max},
                {"a_max", r.params.a_max},
                {"precision", r.params.precision},
                {"classes", r.params.classes},
                {"terms", r.params.terms},
                {"sum_method", sum_method_name(r.params.sum_method)}}}};
    if (!std::isnan(r.params.s)) p["params"]["s"] = input(r.params.s);
    return p;
}

inline json cmd_trace(const std::string& kind, long d, long D, double s, const Config& c) {
    require_discriminant(d, "-d");
    require_discriminant(D, "-D");
    TraceResult r;
    if (kind == "cm") {
        CmOptions o;
        o.precision = c.precision_bits;
        r = trace_cm(d, D, o);
        return trace_payload(r, std::max(r.error_estimate, 1e-30 * std::fabs(to_double(r.value))));
    }
    if (kind == "cycle") {
        r = trace_cycle(d, D);
        check_tolerance("trace", to_double(r.value), r.error_estimate, c);
        return trace_payload(r, r.error_estimate);
    }
    if (kind == "star-series")
        r = trace_star_series(d, D, s, star_options(c));
    else if (kind == "star-salie")
        r = trace_star_salie(d, D, s, star_options(c));
    else if (kind == "jhat")
        r = trace_star_jhat(d, D, star_options(c));
    else
        throw domain_error("--kind must be one of cm, cycle, star-series, star-salie, jhat");
    check_tolerance("trace", to_double(r.value), r.error_estimate, c);
    return trace_payload(r, r.error_estimate);
}

inline json cmd_hurwitz(long n) { return {{"n", n}, {"value", hurwitz_class_number(n).get_str()}}; }

inline json complex_payload(const ExtComplex& z) { return {{"re", decimal(z.re, 0)}, {"im", decimal(z.im, 0)}}; }

inline json cmd_kloosterman(const std::string& weight, long m, long n, long cc) {
    ExtComplex z;
    if (weight == "0")
        z = kloosterman_int(m, n, cc);
    else if (weight == "1/2")
        z = kloosterman_half(1, m, n, cc);
    else if (weight == "3/2")
        z = kloosterman_half(3, m, n, cc);
    else if (weight == "plus")
        z = kloosterman_plus(m, n, cc);
    else
        throw domain_error("--weight must be one of 0, 1/2, 3/2, plus");
    json p = complex_payload(z);
    p["m"] = m;
    p["n"] = n;
    p["c"] = cc;
    p["weight"] = weight;
    return p;
}

inline json cmd_salie(long m, long d, long D, long cc) {
    require_discriminant(d, "-d");
    require_discriminant(D, "-D");
    json p = complex_payload(salie(m, d, D, cc));
    p["m"] = m;
    p["d"] = d;
    p["D"] = D;
    p["c"] = cc;
    return p;
}

inline json cmd_bcoeff(long m, long n, double s, bool ds, const Config& c) {
    BcoeffOptions o = bcoeff_options(c);
    if (ds) {
        BcoeffDerivative r = bcoeff_ds(m, n, o, 1e-3, s);
        double err = std::max({r.value.error, r.route_gap, r.richardson_delta});
        check_tolerance("bcoeff", r.value.value, err, c);
        return {{"value", decimal(r.value.value, err)},
                {"method", "s-derivative"},
                {"error_estimate", full(err)},
                {"params", {{"c_max", o.c_max}, {"s", input(s)}, {"route_gap", full(r.route_gap)}}}};
    }
    CoeffResult r = bcoeff(m, n, s, o);
    check_tolerance("bcoeff", r.value, r.error, c);
    return {{"value", decimal(r.value, r.error)},
            {"method", sum_method_name(r.method)},
            {"error_estimate", full(r.error)},
            {"params", {{"c_max", r.c_max}, {"s", input(s)}}}};
}

inline json cmd_mock_coeff(long D, long d, const Config& c) {
    require_discriminant(d, "-d");
    require_discriminant(D, "-D");
    MockCoeff m = b_coeff_mock(D, d, star_options(c));
    double v = to_double(m.value());
    check_tolerance("mock-coeff", v, m.error_estimate, c);
    return {{"D", D},
            {"d", d},
            {"value", decimal(m.value(), m.error_estimate)},
            {"components",
             {{"class_number_term", decimal(m.class_number_term, 0)}, {"trace_term", decimal(m.trace_term, m.trace.error_estimate)}}},
            {"method", "class-number + jhat-derivative"},
            {"error_estimate", full(m.error_estimate)}};
}

inline json cmd_inner_prod(bool theta, long D, long d, const Config& c) {
    require_discriminant(d, "-d");
    InnerProduct r;
    if (theta) {
        r = inner_prod_theta(d);
    } else {
        require_discriminant(D, "-D");
        r = inner_prod_reg(D, d, star_options(c));
        check_tolerance("inner-prod", to_double(r.value()), r.error_estimate, c);
    }
    json p = {{"d", d},
              {"value", decimal(r.value(), r.error_estimate)},
              {"components", {{"class_number_term", decimal(r.class_number_term, 0)}, {"trace_term", decimal(r.trace_term, r.error_estimate)}}},
              {"method", theta ? "theta" : "regularized"},
              {"error_estimate", full(r.error_estimate)},
              {"reduction", r.reduction}};
    if (!theta) p["D"] = D;
    return p;
}

// Adds the [{n, coeff}] export next to the dense coefficient list.
template <class T>
json series_json(const QSeries<T>& a) {
    json j = to_json(a);
    auto& t = j["terms"] = json::array();
    for (long n = a.valuation(); n <= a.precision(); ++n)
        if (in_support(a.support(), n)) t.push_back({{"n", n}, {"coeff", coeff_string(a.coeff(n))}});
    return j;
}

inline json cmd_series(const std::string& form, long idx, long N, const Config& c) {
    if (form == "g") return series_json(g_weakly_holo(idx, N));
    if (form == "f" || form == "f-modular") {
        TracedSeries t = form == "f" ? f_weakly_holo(idx, N) : f_modular(idx, N);
        json j = series_json(t.series);
        for (auto& term : j["terms"]) {
            CoeffSource src = t.source_at(term["n"].get<long>());
            term["source"] = coeff_source_name(src);
            if (src == CoeffSource::unavailable) term["coeff"] = nullptr;
        }
        return j;
    }
    if (form == "zagier") return series_json(zagier_eisenstein(N));
    if (form == "j") return series_json(j_invariant(N));
    if (form == "faber") return series_json(faber(idx, N));
    if (form == "kplus") {
        KPlusSeries k = kplus_series(idx, N, bcoeff_options(c));
        json j = {{"valuation", 0}, {"precision", N}, {"support", support_name(k.re.support())}};
        auto& re = j["re"] = json::array();
        auto& im = j["im"] = json::array();
        auto& er = j["error"] = json::array();
        auto& t = j["terms"] = json::array();
        for (long n = 0; n <= N; ++n) {
            re.push_back(full(k.re.coeff(n)));
            im.push_back(full(k.im.coeff(n)));
            er.push_back(full(k.error[n]));
            if (in_support(Support::plus_three_halves, n))
                t.push_back({{"n", n}, {"re", full(k.re.coeff(n))}, {"im", full(k.im.coeff(n))}, {"error", full(k.error[n])}});
        }
        return j;
    }
    throw domain_error("--form must be one of g, f, f-modular, zagier, j, faber, kplus");
}

// Objects: j, G0, Gm (Niebur G_m), jm, Jhat, F32, kminus.
inline json cmd_eval(const std::string& fn, double x, double y, long m, double s, long d, const Config& c) {
    ExtComplex tau{ExtReal(x), ExtReal(y)};
    ExtComplex v;
    double err = 0;
    SeriesOptions so;
    so.n_max = std::min<long>(c.n_terms, 200);
    so.c_max = std::min<long>(c.c_max, 4000);
    json params = {{"n_max", so.n_max}, {"c_max", so.c_max}};
    if (fn == "j") {
        JFunction<ExtReal> J(std::ldexp(1.0, -static_cast<int>(c.precision_bits) / 2));
        auto r = J.evaluate_reduced(tau);
        v = r.value + ExtComplex(ExtReal(744));
        err = r.tail_bound;
        params = {{"terms", J.length()}};
    } else if (fn == "G0") {
        v = eisenstein_g0(tau, ExtReal(s), so.n_max);
        params["s"] = input(s);
    } else if (fn == "Gm") {
        v = niebur_g(m, tau, ExtReal(s), so);
        params["s"] = input(s);
    } else if (fn == "jm") {
        v = jm_s(m, tau, ExtReal(s), so);
        params["s"] = input(s);
    } else if (fn == "Jhat") {
        JhatOptions o;
        o.series = so;
        auto r = jhat_estimate(m, tau, o);
        err = r.richardson_delta;
        check_tolerance("eval", to_double(abs(r.value)), err, c);
        v = r.value;
        params["h"] = full(o.h);
    } else if (fn == "F32") {
        F32Options o;
        o.n_max = so.n_max;
        o.b = bcoeff_options(c);
        v = assemble_f32(m, tau, ExtReal(s), o);
        params["s"] = input(s);
        params["c_max"] = o.b.c_max;
    } else if (fn == "kminus") {
        v = kminus_eval(d, tau, c.n_terms, bcoeff_options(c));
        params = {{"terms", c.n_terms}, {"c_max", c.c_max}, {"head", "absolute"}};
    } else {
        throw domain_error("--fn must be one of j, G0, Gm, jm, Jhat, F32, kminus");
    }
    return {{"fn", fn},
            {"m", m},
            {"tau", {input(x), input(y)}},
            {"re", decimal(v.re, err)},
            {"im", decimal(v.im, err)},
            {"error_estimate", full(err)},
            {"params", params}};
}

}  // namespace cyclotrace::cli
