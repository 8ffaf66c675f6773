#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "besseldrift/bessel.hpp"
#include "besseldrift/bridges.hpp"
#include "besseldrift/identities.hpp"
#include "besseldrift/quadrature.hpp"
#include "besseldrift/scalar_law.hpp"
#include "besseldrift/specfun.hpp"
#include "besseldrift/stats.hpp"

namespace {

using besseldrift::IdentityCase;
using besseldrift::RngStream;
using besseldrift::ScalarLaw;
using besseldrift::TestReport;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitUsage = 2;

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

// ------------------------------------------------------------------ verify

struct VerifyOptions {
    std::string name;
    IdentityCase overrides;  // params/n/seed/alpha, name filled per entry
    bool has_delta = false, has_mu = false, has_x = false, has_t = false, has_grid = false;
    bool has_n = false;
    std::string out_path;
    std::string format = "json";
};

IdentityCase apply_overrides(IdentityCase base, const VerifyOptions& opt) {
    if (opt.has_delta) base.params.delta = opt.overrides.params.delta;
    if (opt.has_mu) base.params.mu = opt.overrides.params.mu;
    if (opt.has_x) base.params.x = opt.overrides.params.x;
    if (opt.has_t) base.params.t = opt.overrides.params.t;
    if (opt.has_grid) base.params.grid = opt.overrides.params.grid;
    if (opt.has_n) base.n = opt.overrides.n;
    base.seed = opt.overrides.seed;
    base.alpha = opt.overrides.alpha;
    return base;
}

json run_config_json(const std::string& command, const json& extra) {
    json j;
    j["command"] = command;
    j.update(extra);
    return j;
}

int cmd_verify(const VerifyOptions& opt) {
    std::vector<IdentityCase> cases;
    if (opt.name == "all") {
        for (const auto& c : besseldrift::catalog()) cases.push_back(apply_overrides(c, opt));
    } else {
        cases.push_back(apply_overrides(besseldrift::catalog_default(opt.name), opt));
    }

    std::vector<TestReport> reports;
    std::vector<double> all_p;
    reports.reserve(cases.size());
    for (const auto& c : cases) {
        reports.push_back(besseldrift::run_identity(c));
        for (const auto& s : reports.back().subtests) all_p.push_back(s.p_value);
    }

    // Holm correction across the whole run; an entry fails when any of its
    // subtests is rejected at the corrected level.
    const auto adjusted = besseldrift::holm_adjust(all_p);
    bool all_pass = true;
    std::size_t cursor = 0;
    for (auto& r : reports) {
        bool pass = true;
        for (std::size_t i = 0; i < r.subtests.size(); ++i)
            if (adjusted[cursor++] <= r.alpha) pass = false;
        r.decision = pass;
        all_pass = all_pass && pass;
        std::cerr << (pass ? "[PASS] " : "[FAIL] ") << r.name;
        for (const auto& s : r.subtests)
            std::cerr << "  " << s.label << " D=" << s.statistic << " p=" << s.p_value;
        std::cerr << "  (" << r.wall_ms << " ms)\n";
    }

    json config;
    config["identity"] = opt.name;
    config["n"] = opt.has_n ? json(opt.overrides.n) : json(nullptr);
    config["seed"] = opt.overrides.seed;
    config["alpha"] = opt.overrides.alpha;
    config["format"] = opt.format;

    if (opt.format == "json") {
        json out;
        out["config"] = run_config_json("verify", config);
        out["reports"] = json::array();
        for (const auto& r : reports) out["reports"].push_back(r.to_json());
        write_text(opt.out_path, out.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "# config: " << run_config_json("verify", config).dump() << "\n";
        os << "name,label,statistic,p_value,decision\n";
        for (const auto& r : reports)
            for (const auto& s : r.subtests)
                os << r.name << "," << s.label << "," << format_double(s.statistic) << ","
                   << format_double(s.p_value) << "," << (r.decision ? "pass" : "fail") << "\n";
        write_text(opt.out_path, os.str());
    }
    return all_pass ? kExitPass : kExitStatFail;
}

// ------------------------------------------------------------------ sample

struct SampleOptions {
    std::string which;
    double delta = 1.0, mu = 1.0, x = 1.0, t = 1.0;
    std::vector<double> grid;
    std::size_t n = 100000;
    std::uint64_t seed = 42;
    std::string out_path;
};

int cmd_sample(const SampleOptions& opt) {
    json config;
    config["which"] = opt.which;
    config["delta"] = opt.delta;
    config["mu"] = opt.mu;
    config["x"] = opt.x;
    config["t"] = opt.t;
    config["grid"] = opt.grid;
    config["n"] = opt.n;
    config["seed"] = opt.seed;

    std::vector<std::string> columns;
    // One stream per row keeps output independent of any sharding.
    std::function<std::vector<double>(RngStream&)> draw_row;

    const std::vector<double> grid = opt.grid;
    if (opt.which == "besq") {
        columns = {"value"};
        draw_row = [&](RngStream& rng) {
            return std::vector<double>{besseldrift::besq_transition(opt.delta, opt.x, opt.t, rng)};
        };
    } else if (opt.which == "drifted") {
        std::vector<double> times = grid.empty() ? std::vector<double>{opt.t} : grid;
        for (const double tt : times) columns.push_back("t" + format_double(tt));
        draw_row = [&, times](RngStream& rng) {
            return besseldrift::drifted_from_zero(opt.delta, opt.mu, times, rng).values;
        };
    } else if (opt.which == "tau0") {
        columns = {"tau0"};
        draw_row = [&](RngStream& rng) {
            return std::vector<double>{besseldrift::tau0_sample(opt.delta, opt.x, rng)};
        };
    } else if (opt.which == "first_zero") {
        columns = {"d_t"};
        draw_row = [&](RngStream& rng) {
            return std::vector<double>{
                besseldrift::first_zero_sample(opt.delta, opt.x, opt.t, rng)};
        };
    } else if (opt.which == "last_zero") {
        columns = {"g_t"};
        draw_row = [&](RngStream& rng) {
            return std::vector<double>{
                besseldrift::last_zero_drifted_sample(opt.delta, opt.mu, opt.t, rng)};
        };
    } else if (opt.which == "bridge0") {
        std::vector<double> times = grid.empty() ? std::vector<double>{0.25, 0.5, 0.75, 1.0} : grid;
        for (const double tt : times) columns.push_back("s" + format_double(tt));
        draw_row = [&, times](RngStream& rng) {
            return besseldrift::bridge0_reject(opt.mu, times, rng).values;
        };
    } else {
        throw CLI::ValidationError("sample", "unknown sampler '" + opt.which + "'");
    }

    std::ostringstream os;
    os << "# config: " << run_config_json("sample", config).dump() << "\n";
    for (std::size_t j = 0; j < columns.size(); ++j)
        os << columns[j] << (j + 1 < columns.size() ? "," : "\n");
    for (std::size_t i = 0; i < opt.n; ++i) {
        RngStream rng(opt.seed, i);
        const auto row = draw_row(rng);
        for (std::size_t j = 0; j < row.size(); ++j)
            os << format_double(row[j]) << (j + 1 < row.size() ? "," : "\n");
    }
    write_text(opt.out_path, os.str());
    return kExitPass;
}

// -------------------------------------------------------------------- dist

struct DistOptions {
    std::string which;
    double delta = 1.0, mu = 1.0, x = 0.0, t = 1.0;
    double ymin = 0.0, ymax = -1.0;
    std::size_t points = 201;
    std::string out_path;
};

int cmd_dist(const DistOptions& opt) {
    double ymin = opt.ymin;
    double ymax = opt.ymax;
    std::string value_name;
    std::function<double(double)> f;

    if (opt.which == "g_last") {
        const double alpha = 1.0 - 0.5 * opt.delta;
        if (!(alpha > 0.0 && alpha < 1.0))
            throw CLI::ValidationError("dist", "g_last requires delta in (0,2)");
        const ScalarLaw law =
            ScalarLaw::product(ScalarLaw::censored_exp(opt.t, 0.5 * opt.mu * opt.mu),
                               ScalarLaw::beta(alpha, 1.0 - alpha));
        if (ymax < 0.0) ymax = opt.t;
        value_name = "cdf";
        f = [law](double y) { return law.cdf(y); };
    } else if (opt.which == "g_infinity") {
        const double alpha = 1.0 - 0.5 * opt.delta;
        if (!(alpha > 0.0 && alpha < 1.0))
            throw CLI::ValidationError("dist", "g_infinity requires delta in (0,2)");
        const double rate = 0.5 * opt.mu * opt.mu;
        if (ymax < 0.0) ymax = 8.0 * alpha / rate + 8.0 / rate;
        value_name = "cdf";
        f = [alpha, rate](double y) {
            return y <= 0.0 ? 0.0 : besseldrift::specfun::reg_inc_gamma_lower(alpha, rate * y);
        };
    } else if (opt.which == "drifted_density") {
        if (ymax < 0.0) ymax = opt.mu * opt.t + opt.x + 6.0 * std::sqrt(opt.t) + 1.0;
        if (ymin <= 0.0) ymin = 1e-9;
        value_name = "pdf";
        f = [&](double y) {
            return besseldrift::drifted_transition_density(opt.delta, opt.mu, opt.t, opt.x, y);
        };
    } else {
        throw CLI::ValidationError("dist", "unknown law '" + opt.which + "'");
    }

    if (!(ymax > ymin)) throw CLI::ValidationError("dist", "grid has nonpositive span");
    if (opt.points < 2) throw CLI::ValidationError("dist", "need at least 2 grid points");

    json config;
    config["which"] = opt.which;
    config["delta"] = opt.delta;
    config["mu"] = opt.mu;
    config["x"] = opt.x;
    config["t"] = opt.t;
    config["ymin"] = ymin;
    config["ymax"] = ymax;
    config["points"] = opt.points;

    std::ostringstream os;
    os << "# config: " << run_config_json("dist", config).dump() << "\n";
    os << "y," << value_name << "\n";
    for (std::size_t i = 0; i < opt.points; ++i) {
        const double y = ymin + (ymax - ymin) * static_cast<double>(i) /
                                    static_cast<double>(opt.points - 1);
        os << format_double(y) << "," << format_double(f(y)) << "\n";
    }
    write_text(opt.out_path, os.str());
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulation and Monte Carlo verification of the distributional "
                 "identities of Bessel processes with drift"};
    app.require_subcommand(1);

    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "run identity checks and write a report");
    verify->add_option("identity", vopt.name, "identity name or 'all'")->required();
    verify->add_option("--delta", vopt.overrides.params.delta, "dimension")
        ->trigger_on_parse()
        ->each([&](const std::string&) { vopt.has_delta = true; });
    verify->add_option("--mu", vopt.overrides.params.mu, "drift")->each([&](const std::string&) {
        vopt.has_mu = true;
    });
    verify->add_option("--x", vopt.overrides.params.x, "start")->each([&](const std::string&) {
        vopt.has_x = true;
    });
    verify->add_option("--t", vopt.overrides.params.t, "time horizon")
        ->each([&](const std::string&) { vopt.has_t = true; });
    verify->add_option("--grid", vopt.overrides.params.grid, "grid times")
        ->delimiter(',')
        ->each([&](const std::string&) { vopt.has_grid = true; });
    verify->add_option("-n,--n", vopt.overrides.n, "samples per side")
        ->each([&](const std::string&) { vopt.has_n = true; });
    verify->add_option("--seed", vopt.overrides.seed, "rng seed")
        ->envname("BESSELDRIFT_SEED");
    verify->add_option("--alpha", vopt.overrides.alpha, "test level");
    verify->add_option("-o,--out", vopt.out_path, "report path ('-' for stdout)");
    verify->add_option("--format", vopt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    SampleOptions sopt;
    auto* sample = app.add_subcommand("sample", "draw from a sampler, CSV to stdout or a file");
    sample->add_option("sampler", sopt.which,
                       "one of: besq, drifted, tau0, first_zero, last_zero, bridge0")
        ->required();
    sample->add_option("--delta", sopt.delta, "dimension");
    sample->add_option("--mu", sopt.mu, "drift");
    sample->add_option("--x", sopt.x, "start (squared start for besq)");
    sample->add_option("--t", sopt.t, "time horizon");
    sample->add_option("--grid", sopt.grid, "grid times")->delimiter(',');
    sample->add_option("-n,--n", sopt.n, "number of rows");
    sample->add_option("--seed", sopt.seed, "rng seed")->envname("BESSELDRIFT_SEED");
    sample->add_option("-o,--out", sopt.out_path, "output path ('-' for stdout)");

    DistOptions dopt;
    auto* dist = app.add_subcommand("dist", "evaluate a density/CDF on a grid, CSV output");
    dist->add_option("law", dopt.which, "one of: g_last, g_infinity, drifted_density")->required();
    dist->add_option("--delta", dopt.delta, "dimension");
    dist->add_option("--mu", dopt.mu, "drift");
    dist->add_option("--x", dopt.x, "start");
    dist->add_option("--t", dopt.t, "time horizon");
    dist->add_option("--ymin", dopt.ymin, "grid start");
    dist->add_option("--ymax", dopt.ymax, "grid end");
    dist->add_option("--points", dopt.points, "grid size");
    dist->add_option("-o,--out", dopt.out_path, "output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
        if (verify->parsed()) return cmd_verify(vopt);
        if (sample->parsed()) return cmd_sample(sopt);
        if (dist->parsed()) return cmd_dist(dopt);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
