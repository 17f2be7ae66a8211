#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "../numerics/errors.hpp"

namespace cyclotrace::cli {

enum class OutputFormat { json, csv, text };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "text") return OutputFormat::text;
    throw domain_error("unknown output format '" + s + "' (json, csv, text)");
}

inline const char* format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
        default: return "text";
    }
}

struct Config {
    unsigned precision_bits = 256;
    long c_max = 40000;
    long window = 64;
    long n_terms = 64;
    double tol = 1e-3;
    std::string cache_dir;  // empty: caching off
    OutputFormat format = OutputFormat::json;

    void validate() const {
        if (precision_bits < 53) throw domain_error("--precision-bits must be at least 53");
        if (c_max < 64) throw domain_error("--cmax must be at least 64");
        if (window < 1) throw domain_error("--window must be positive");
        if (n_terms < 1) throw domain_error("--nterms must be positive");
        if (!(tol > 0)) throw domain_error("--tol must be positive");
        if (tol < std::ldexp(1.0, -static_cast<int>(precision_bits) / 2))
            throw domain_error("--tol must be at least 2^(-precision_bits/2)");
    }

    // Every field that can change a computed value.
    nlohmann::json value_params() const {
        return {{"precision_bits", precision_bits}, {"c_max", c_max}, {"window", window}, {"n_terms", n_terms}, {"tol", tol}};
    }
};

// CYCLOTRACE_CACHE overrides --cache-dir.
inline std::string resolve_cache_dir(const std::string& flag) {
    if (const char* env = std::getenv("CYCLOTRACE_CACHE"); env && *env) return env;
    return flag;
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Hash of the command, its arguments and the value-affecting configuration.
// nlohmann::json keeps object keys sorted, so dump() is canonical.
inline std::string params_hash(const std::string& kind, const nlohmann::json& args, const Config& c) {
    nlohmann::json j = {{"kind", kind}, {"args", args}, {"config", c.value_params()}};
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
    return buf;
}

}  // namespace cyclotrace::cli
