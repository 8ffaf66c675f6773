#include <algorithm>
#include <vector>

#include <doctest.h>

#include "besseldrift/identities.hpp"
#include "besseldrift/rng.hpp"
#include "besseldrift/stats.hpp"

using namespace besseldrift;

TEST_CASE("catalog has the 14 named entries in order") {
    const auto names = catalog_names();
    const std::vector<std::string> want{
        "decomp",         "last_zero",       "first_zero",  "lamperti_limit",
        "esg_case",       "g_infinity",      "duality",     "drift_scaling",
        "additivity",     "bridge_additivity", "zero_bridge", "time_inversion_t1",
        "lln_drift",      "absorption"};
    CHECK(names == want);
    CHECK(catalog().size() == 14);
    for (const auto& name : names) CHECK(!describe_identity(name).empty());
}

TEST_CASE("unknown identity names list the catalog") {
    IdentityCase c;
    c.name = "bogus";
    try {
        run_identity(c);
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bogus") != std::string::npos);
        CHECK(msg.find("last_zero") != std::string::npos);
        CHECK(msg.find("decomp") != std::string::npos);
    }
}

TEST_CASE("every catalog entry passes at reduced n") {
    for (auto c : catalog()) {
        c.n = std::min<std::size_t>(c.n, 20000);
        const auto report = run_identity(c);
        CAPTURE(c.name);
        for (const auto& s : report.subtests) {
            CAPTURE(s.label);
            CAPTURE(s.p_value);
        }
        CHECK(report.decision);
    }
}

TEST_CASE("run_identity is deterministic given the seed") {
    IdentityCase c = catalog_default("last_zero");
    c.n = 5000;
    const auto a = run_identity(c);
    const auto b = run_identity(c);
    REQUIRE(a.subtests.size() == b.subtests.size());
    CHECK(a.subtests[0].statistic == b.subtests[0].statistic);
    CHECK(a.subtests[0].p_value == b.subtests[0].p_value);
    CHECK(a.decision == b.decision);

    IdentityCase c2 = c;
    c2.seed = 43;
    const auto d = run_identity(c2);
    CHECK(a.subtests[0].statistic != d.subtests[0].statistic);
}

TEST_CASE("parameter overrides reach the samplers") {
    IdentityCase c = catalog_default("last_zero");
    c.params.delta = 0.5;
    c.params.mu = 2.0;
    c.params.t = 0.5;
    c.n = 20000;
    CHECK(run_identity(c).decision);

    IdentityCase f = catalog_default("first_zero");
    f.params.delta = 1.5;
    f.params.x = 0.5;
    f.params.t = 2.0;
    f.n = 20000;
    CHECK(run_identity(f).decision);
}

TEST_CASE("null sanity: identical sampler specs on disjoint sub-seeds give uniform p") {
    // The same scalar law drawn on both sides, many seeds; p-values must
    // look uniform, which calibrates the whole report pipeline.
    const int reps = 200;
    std::vector<double> ps(reps);
    IdentityCase c = catalog_default("last_zero");
    c.n = 2000;
    for (int rep = 0; rep < reps; ++rep) {
        c.seed = 10000 + rep;
        ps[rep] = run_identity(c).subtests[0].p_value;
    }
    const auto uniform = [](double y) { return std::clamp(y, 0.0, 1.0); };
    CHECK(ks_one_sample(ps, uniform).p_value > 0.01);
}

TEST_CASE("report JSON round-trips losslessly") {
    IdentityCase c = catalog_default("decomp");
    c.n = 4000;
    const auto report = run_identity(c);
    const auto j = report.to_json();
    const auto back = TestReport::from_json(j);
    CHECK(back.to_json() == j);
    // schema fields, exactly
    const std::vector<std::string> fields{"alpha", "decision", "n",    "name", "p_value",
                                          "params", "seed",    "statistic", "wall_ms"};
    CHECK(j.size() == fields.size());
    for (const auto& f : fields) CHECK(j.contains(f));
}

TEST_CASE("decomp report carries per-time, zero-fraction and rank-correlation subtests") {
    IdentityCase c = catalog_default("decomp");
    c.n = 4000;
    const auto report = run_identity(c);
    // 3 KS + 3 zero-fraction + 3 spearman pairs
    CHECK(report.subtests.size() == 9);
}

TEST_CASE("esg_case rejects non-unit dimensions; time_inversion rejects fractional ones") {
    IdentityCase c = catalog_default("esg_case");
    c.params.delta = 1.5;
    CHECK_THROWS_AS(run_identity(c), std::invalid_argument);
    IdentityCase t = catalog_default("time_inversion_t1");
    t.params.delta = 1.5;
    CHECK_THROWS_AS(run_identity(t), std::invalid_argument);
}
