#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "cyclotrace/cli/commands.hpp"
#include "cyclotrace/cli/verify.hpp"

using namespace cyclotrace;
using namespace cyclotrace::cli;

namespace {

std::filesystem::path fresh_dir(const char* tag) {
    auto p = std::filesystem::temp_directory_path() / (std::string("cyclotrace_test_") + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST(Config, Validation) {
    Config c;
    EXPECT_NO_THROW(c.validate());
    c.tol = 1e-100;  // below 2^-128
    EXPECT_THROW(c.validate(), domain_error);
    c = Config{};
    c.window = 0;
    EXPECT_THROW(c.validate(), domain_error);
    c = Config{};
    c.precision_bits = 32;
    EXPECT_THROW(c.validate(), domain_error);
    EXPECT_THROW(parse_format("xml"), domain_error);
    EXPECT_EQ(parse_format("csv"), OutputFormat::csv);
}

TEST(ParamsHash, CoversEveryValueField) {
    Config base;
    json args = {{"D", -3}, {"d", -4}};
    std::set<std::string> seen{params_hash("mock-coeff", args, base)};
    auto vary = [&](auto mutate) {
        Config c = base;
        mutate(c);
        EXPECT_TRUE(seen.insert(params_hash("mock-coeff", args, c)).second);
    };
    vary([](Config& c) { c.precision_bits = 320; });
    vary([](Config& c) { c.c_max = 20000; });
    vary([](Config& c) { c.window = 32; });
    vary([](Config& c) { c.n_terms = 80; });
    vary([](Config& c) { c.tol = 1e-4; });
    EXPECT_TRUE(seen.insert(params_hash("mock-coeff", {{"D", -4}, {"d", -3}}, base)).second);
    EXPECT_TRUE(seen.insert(params_hash("inner-prod", args, base)).second);
    // output-only settings leave the hash alone
    Config f = base;
    f.format = OutputFormat::text;
    f.cache_dir = "/elsewhere";
    EXPECT_EQ(params_hash("mock-coeff", args, f), params_hash("mock-coeff", args, base));
    EXPECT_EQ(params_hash("mock-coeff", args, base).size(), 16u);
}

TEST(Cache, RoundTripIsBitIdentical) {
    auto dir = fresh_dir("roundtrip");
    Cache cache(dir.string());
    Config c;
    json args = {{"kind", "cm"}, {"d", -3}, {"D", 5}, {"s", 1.0}};
    int calls = 0;
    auto compute = [&] {
        ++calls;
        return cmd_trace("cm", -3, 5, 1.0, c);
    };
    json first = cached_run(cache, "trace", args, c, compute);
    json second = cached_run(cache, "trace", args, c, compute);
    EXPECT_EQ(calls, 1);
    EXPECT_FALSE(first["cached"].get<bool>());
    EXPECT_TRUE(second["cached"].get<bool>());
    first.erase("cached");
    second.erase("cached");
    EXPECT_EQ(first.dump(), second.dump());
    EXPECT_EQ(second["value"], "-85995");

    auto e = cache.load("trace", first["params_hash"]);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ((*e)["schema_version"], kCacheSchema);
    EXPECT_TRUE(e->contains("timestamp"));
    EXPECT_FALSE(cache.load("bcoeff", first["params_hash"]).has_value());

    Config other = c;
    other.c_max = 1000;
    cached_run(cache, "trace", args, other, compute);
    EXPECT_EQ(calls, 2);
    std::filesystem::remove_all(dir);
}

TEST(Cache, DisabledWithoutDirectory) {
    Cache off("");
    EXPECT_FALSE(off.enabled());
    EXPECT_FALSE(off.load("trace", "0").has_value());
}

TEST(Commands, SpecExamples) {
    Config c;
    EXPECT_EQ(cmd_trace("cm", -3, 1, 1.0, c)["value"], "-248");
    EXPECT_EQ(cmd_trace("cm", -4, 1, 1.0, c)["value"], "492");
    EXPECT_EQ(cmd_hurwitz(23)["value"], "3");
    EXPECT_EQ(cmd_hurwitz(3)["value"], "1/3");
    std::string ip = cmd_inner_prod(true, 0, -3, c)["value"];
    EXPECT_EQ(ip.substr(0, 12), "-25.13274122");
    EXPECT_THROW(cmd_trace("cm", -5, 1, 1.0, c), domain_error);
    EXPECT_THROW(cmd_trace("bogus", -3, 1, 1.0, c), domain_error);
}

TEST(Commands, SeriesExport) {
    Config c;
    json j = cmd_series("f-modular", -3, 5, c);
    ASSERT_TRUE(j.contains("terms"));
    // plus-space support: -3, 0, 1, 4, 5
    EXPECT_EQ(j["terms"].size(), 5u);
    EXPECT_EQ(j["terms"][2]["n"], 1);
    EXPECT_EQ(j["terms"][2]["coeff"], "-248");
    EXPECT_EQ(j["terms"][3]["coeff"], "26752");
    json g = cmd_series("f", -4, 12, c);
    bool saw_unavailable = false;
    for (auto& t : g["terms"]) saw_unavailable = saw_unavailable || t["source"] == "unavailable";
    EXPECT_TRUE(saw_unavailable);
}

TEST(Commands, ToleranceGate) {
    Config c;
    c.c_max = 2000;
    c.tol = 1e-9;
    EXPECT_THROW(cmd_bcoeff(3, 4, 0.75, false, c), convergence_error);
}

TEST(Decimal, DigitsFollowTheErrorEstimate) {
    EXPECT_EQ(decimal(1.23456789, 1e-3), "1.235");
    EXPECT_EQ(decimal(-248.0, 0), "-248");
    PrecisionContext ctx(128);
    EXPECT_EQ(decimal(ExtReal(-248), 1e-40), "-248");
}

TEST(Verify, SuiteSelection) {
    EXPECT_EQ(select_criteria("all").size(), 14u);
    EXPECT_EQ(select_criteria("kloosterman").front()->id, 3);
    EXPECT_EQ(select_criteria("14").front()->suite, "constant-term");
    EXPECT_THROW(select_criteria("nope"), domain_error);
    CriterionReport r = run_criterion(*select_criteria("hurwitz").front());
    EXPECT_TRUE(r.outcome.passed) << r.outcome.detail << r.error;
}
