#pragma once

#include <string>

#include <gmpxx.h>
#include <json.hpp>

#include "qseries.hpp"

namespace cyclotrace {

inline std::string coeff_string(const mpz_class& x) { return x.get_str(); }
inline std::string coeff_string(const mpq_class& x) { return x.get_str(); }
inline std::string coeff_string(const ExtReal& x) { return x.str(); }
inline std::string coeff_string(double x) { return std::to_string(x); }

// {"valuation": v, "precision": N, "support": ..., "coefficients": ["c_v", ...]}
template <class T>
nlohmann::json to_json(const QSeries<T>& a) {
    nlohmann::json j;
    j["valuation"] = a.valuation();
    j["precision"] = a.precision();
    j["support"] = support_name(a.support());
    auto& arr = j["coefficients"] = nlohmann::json::array();
    for (const T& c : a.coefficients()) arr.push_back(coeff_string(c));
    return j;
}

inline ZSeries zseries_from_json(const nlohmann::json& j) {
    std::vector<mpz_class> c;
    for (const auto& s : j.at("coefficients")) c.emplace_back(s.get<std::string>());
    Support sup = Support::none;
    std::string t = j.value("support", "none");
    if (t == support_name(Support::plus_half)) sup = Support::plus_half;
    if (t == support_name(Support::plus_three_halves)) sup = Support::plus_three_halves;
    ZSeries r(j.at("valuation").get<long>(), std::move(c), sup);
    if (r.precision() != j.at("precision").get<long>()) throw domain_error("zseries_from_json: length mismatch");
    return r;
}

}  // namespace cyclotrace
