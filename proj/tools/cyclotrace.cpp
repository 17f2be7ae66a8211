// cyclotrace: command-line front end. Results go to stdout, diagnostics to stderr.
//
// Exit codes: 0 success, 1 invalid input, 2 convergence failure, 3 verify failure.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "cyclotrace/cli/commands.hpp"
#include "cyclotrace/cli/verify.hpp"

using namespace cyclotrace;
using namespace cyclotrace::cli;

namespace {

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// csv: one row of the scalar fields, or one row per element of `rows` when present.
void emit(const json& out, OutputFormat f, const std::string& rows = "terms") {
    if (f == OutputFormat::json) {
        std::cout << out.dump(2) << "\n";
        return;
    }
    if (f == OutputFormat::text) {
        for (auto& [k, v] : out.items())
            if (k != rows) std::cout << k << ": " << scalar_text(v) << "\n";
        if (out.contains(rows))
            for (auto& t : out[rows]) {
                for (auto& [k, v] : t.items()) std::cout << k << "=" << scalar_text(v) << " ";
                std::cout << "\n";
            }
        return;
    }
    if (out.contains(rows)) {
        const json& terms = out[rows];
        if (terms.empty()) return;
        bool first = true;
        for (auto& [k, v] : terms[0].items()) std::cout << (first ? "" : ",") << k, first = false;
        std::cout << "\n";
        for (auto& t : terms) {
            first = true;
            for (auto& [k, v] : t.items()) std::cout << (first ? "" : ",") << scalar_text(v), first = false;
            std::cout << "\n";
        }
        return;
    }
    std::string head, row;
    for (auto& [k, v] : out.items()) {
        if (v.is_structured()) continue;
        head += (head.empty() ? "" : ",") + k;
        row += (row.empty() ? "" : ",") + scalar_text(v);
    }
    std::cout << head << "\n" << row << "\n";
}

std::pair<double, double> parse_tau(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw domain_error("--tau must be 'x,y'");
    double x = std::stod(s.substr(0, comma)), y = std::stod(s.substr(comma + 1));
    if (!(y > 0)) throw domain_error("--tau must lie in the upper half-plane");
    return {x, y};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Traces of singular moduli, cycle integrals, Poincare series and mock modular coefficients"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    std::string format = "json", cache_flag;
    app.add_option("--precision-bits", cfg.precision_bits, "working precision in bits")->capture_default_str();
    app.add_option("--cmax", cfg.c_max, "Kloosterman truncation")->capture_default_str();
    app.add_option("--window", cfg.window, "averaging window")->capture_default_str();
    app.add_option("--nterms", cfg.n_terms, "series terms")->capture_default_str();
    app.add_option("--tol", cfg.tol, "relative error bound")->capture_default_str();
    app.add_option("--cache-dir", cache_flag, "cache directory (CYCLOTRACE_CACHE overrides)");
    app.add_option("--format", format, "json, csv or text")->capture_default_str();

    long d = 0, D = 0, m = 0, n = 0, c = 0, N = -1;
    double s = 1.0;
    std::string kind = "cm", weight = "plus", form, fn, tau = "0,1", suite = "all";
    bool theta = false, ds = false;

    auto* trace = app.add_subcommand("trace", "traces of singular moduli and modified traces");
    trace->add_option("--kind", kind, "cm, cycle, star-series, star-salie, jhat")->capture_default_str();
    trace->add_option("-d", d)->required();
    trace->add_option("-D", D)->required();
    trace->add_option("-s", s, "spectral parameter for star kinds")->capture_default_str();

    auto* hur = app.add_subcommand("hurwitz", "Hurwitz class number H(n)");
    hur->add_option("-n", n)->required();

    auto* kl = app.add_subcommand("kloosterman", "Kloosterman sums");
    kl->add_option("--weight", weight, "0, 1/2, 3/2 or plus")->capture_default_str();
    kl->add_option("-m", m)->required();
    kl->add_option("-n", n)->required();
    kl->add_option("-c", c)->required();

    auto* sa = app.add_subcommand("salie", "Salie sums S_m(d, D; c)");
    sa->add_option("-m", m)->required();
    sa->add_option("-d", d)->required();
    sa->add_option("-D", D)->required();
    sa->add_option("-c", c)->required();

    auto* bc = app.add_subcommand("bcoeff", "Poincare coefficient b_m(n, s)");
    bc->add_option("-m", m)->required();
    bc->add_option("-n", n)->required();
    bc->add_option("-s", s)->capture_default_str();
    bc->add_flag("--ds", ds, "derivative in s");

    auto* mc = app.add_subcommand("mock-coeff", "mock modular coefficient b(D, d)");
    mc->add_option("-D", D)->required();
    mc->add_option("-d", d)->required();

    auto* ip = app.add_subcommand("inner-prod", "regularized inner products");
    ip->add_flag("--theta", theta, "pair with the theta function");
    ip->add_option("-D", D);
    ip->add_option("-d", d)->required();

    auto* se = app.add_subcommand("series", "q-expansions");
    se->add_option("--form", form, "g, f, f-modular, zagier, j, faber, kplus")->required();
    se->add_option("-D,-d,-m", m, "index of the form");
    se->add_option("-N", N, "precision (default --nterms)");

    auto* ev = app.add_subcommand("eval", "point evaluation");
    ev->add_option("--fn", fn, "j, G0, Gm, jm, Jhat, F32, kminus")->required();
    ev->add_option("--tau", tau, "x,y")->capture_default_str();
    ev->add_option("-m", m);
    ev->add_option("-s", s)->capture_default_str();
    ev->add_option("-d", d);

    auto* ve = app.add_subcommand("verify", "acceptance suites");
    ve->add_option("--suite", suite, "all, a suite name or a criterion number")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        cfg.format = parse_format(format);
        cfg.validate();
        PrecisionContext ctx(cfg.precision_bits);
        Cache cache(resolve_cache_dir(cache_flag));

        if (*ve) {
            json reports = json::array();
            bool all_ok = true;
            for (const Criterion* k : select_criteria(suite)) {
                CriterionReport r = run_criterion(*k);
                all_ok = all_ok && r.outcome.passed;
                std::cerr << "[" << (r.outcome.passed ? "PASS" : "FAIL") << "] " << r.id << " " << r.name << "\n";
                reports.push_back(to_json(r));
            }
            emit({{"suite", suite}, {"passed", all_ok}, {"criteria", reports}}, cfg.format, "criteria");
            return all_ok ? 0 : 3;
        }

        json out;
        if (*trace)
            out = cached_run(cache, "trace", {{"kind", kind}, {"d", d}, {"D", D}, {"s", s}}, cfg,
                             [&] { return cmd_trace(kind, d, D, s, cfg); });
        else if (*hur)
            out = cmd_hurwitz(n);
        else if (*kl)
            out = cmd_kloosterman(weight, m, n, c);
        else if (*sa)
            out = cmd_salie(m, d, D, c);
        else if (*bc)
            out = cached_run(cache, "bcoeff", {{"m", m}, {"n", n}, {"s", s}, {"ds", ds}}, cfg,
                             [&] { return cmd_bcoeff(m, n, s, ds, cfg); });
        else if (*mc)
            out = cached_run(cache, "mock-coeff", {{"D", D}, {"d", d}}, cfg, [&] { return cmd_mock_coeff(D, d, cfg); });
        else if (*ip)
            out = cached_run(cache, "inner-prod", {{"theta", theta}, {"D", D}, {"d", d}}, cfg,
                             [&] { return cmd_inner_prod(theta, D, d, cfg); });
        else if (*se) {
            long len = N < 0 ? cfg.n_terms : N;
            out = cached_run(cache, "series", {{"form", form}, {"index", m}, {"N", len}}, cfg,
                             [&] { return cmd_series(form, m, len, cfg); });
        } else if (*ev) {
            auto [x, y] = parse_tau(tau);
            out = cached_run(cache, "eval", {{"fn", fn}, {"x", x}, {"y", y}, {"m", m}, {"s", s}, {"d", d}}, cfg,
                             [&] { return cmd_eval(fn, x, y, m, s, d, cfg); });
        }
        emit(out, cfg.format);
        return 0;
    } catch (const domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const convergence_error& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
