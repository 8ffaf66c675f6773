#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace besseldrift {

/// Parameters shared by the catalog entries; entries read the fields they
/// need and ignore the rest.  delta2/x2 are the partner parameters of the
/// additivity entries.
struct IdentityParams {
    double delta = 1.0;
    double mu = 1.0;
    double x = 1.0;
    double t = 1.0;
    std::vector<double> grid{0.5, 1.0, 2.0};
    double delta2 = 2.0;
    double x2 = 0.5;

    nlohmann::json to_json() const;
    static IdentityParams from_json(const nlohmann::json& j);
};

/// A named equality-in-law test: two independently derived sampling routes
/// (or one route plus a closed-form CDF), with its Monte Carlo settings.
struct IdentityCase {
    std::string name;
    IdentityParams params;
    std::size_t n = 100000;
    std::uint64_t seed = 42;
    double alpha = 0.001;
};

/// One statistic/p-value pair produced while running an entry; entries
/// with several grid times or correlation checks emit several.
struct SubTest {
    std::string label;
    double statistic = 0.0;
    double p_value = 1.0;
};

struct TestReport {
    std::string name;
    IdentityParams params;
    std::vector<SubTest> subtests;
    bool decision = false;  // pass after Holm correction within the entry
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double alpha = 0.001;
    double wall_ms = 0.0;

    /// Serializes with exactly the shipped schema fields: name, params,
    /// statistic, p_value, alpha, decision, n, seed, wall_ms.
    nlohmann::json to_json() const;
    static TestReport from_json(const nlohmann::json& j);
};

/// Names of the shipped identity entries, in catalog order.
std::vector<std::string> catalog_names();

/// Template (default parameters, n, seed) for a named entry.
IdentityCase catalog_default(const std::string& name);

/// All 14 templates.
std::vector<IdentityCase> catalog();

/// One-line description of the two routes an entry compares.
std::string describe_identity(const std::string& name);

/// Draws both sides with per-draw disjoint streams, runs the entry's test
/// and returns the report.  Deterministic given (name, params, n, seed).
TestReport run_identity(const IdentityCase& c);

}  // namespace besseldrift
