#include "besseldrift/identities.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "besseldrift/bessel.hpp"
#include "besseldrift/bridges.hpp"
#include "besseldrift/scalar_law.hpp"
#include "besseldrift/specfun.hpp"
#include "besseldrift/stats.hpp"

namespace besseldrift {

namespace {

std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// One Philox stream per draw and side; sharding a loop over i cannot
// change the result.
RngStream draw_stream(const IdentityCase& c, std::size_t routes, std::size_t route,
                      std::size_t i) {
    return RngStream(c.seed, routes * i + route);
}

double shape_alpha(double delta) {
    if (!(delta > 0.0 && delta < 2.0))
        throw std::domain_error("identity: dimension must be in (0,2) for zero-set laws");
    return 1.0 - 0.5 * delta;
}

// Two-sided binomial test of an observed count against a known success
// probability.
double binom_one_sample_p(std::size_t count, std::size_t n, double p0) {
    const double phat = static_cast<double>(count) / static_cast<double>(n);
    const double var = p0 * (1.0 - p0) / static_cast<double>(n);
    if (var == 0.0) return phat == p0 ? 1.0 : 0.0;
    const double z = (phat - p0) / std::sqrt(var);
    return 2.0 * specfun::norm_cdf(-std::abs(z));
}

using Runner = std::function<std::vector<SubTest>(const IdentityCase&)>;

// ------------------------------------------------------------------ decomp
// lhs: squared drifted process via time inversion.
// rhs: driftless squared process plus an exponentially delayed squared
//      4-dimensional drifted process, summed pathwise.
std::vector<SubTest> run_decomp(const IdentityCase& c) {
    const auto& grid = c.params.grid;
    const double delta = c.params.delta;
    const double mu = c.params.mu;
    if (!(mu > 0.0)) throw std::domain_error("decomp: drift must be positive");
    const std::size_t k = grid.size();
    std::vector<std::vector<double>> lhs(k, std::vector<double>(c.n));
    std::vector<std::vector<double>> rhs(k, std::vector<double>(c.n));
    const BesselLaw base_law{delta, 0.0, 0.0, ProcessKind::squared};
    const PathSampler squared4 = [mu](std::span<const double> ts, RngStream& rr) {
        return drifted_from_zero(4.0, mu, ts, rr, ProcessKind::squared);
    };
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 2, 0, i);
        const PathGrid p = drifted_from_zero(delta, mu, grid, r1, ProcessKind::squared);
        for (std::size_t j = 0; j < k; ++j) lhs[j][i] = p.values[j];

        auto r2 = draw_stream(c, 2, 1, i);
        const PathGrid base = besq_path(base_law, grid, r2);
        const PathGrid waiting = delayed_start(squared4, 0.5 * mu * mu, grid, r2);
        for (std::size_t j = 0; j < k; ++j) rhs[j][i] = base.values[j] + waiting.values[j];
    }
    std::vector<SubTest> out;
    for (std::size_t j = 0; j < k; ++j) {
        const auto ks = ks_two_sample(lhs[j], rhs[j]);
        out.push_back({"ks@t=" + fmt_num(grid[j]), ks.statistic, ks.p_value});
    }
    for (std::size_t j = 0; j < k; ++j) {
        const auto zeros = [](const std::vector<double>& v) {
            return static_cast<std::size_t>(std::count(v.begin(), v.end(), 0.0));
        };
        const std::size_t z1 = zeros(lhs[j]), z2 = zeros(rhs[j]);
        const double stat = std::abs(static_cast<double>(z1) - static_cast<double>(z2)) /
                            static_cast<double>(c.n);
        out.push_back({"zero_fraction@t=" + fmt_num(grid[j]), stat,
                       binom_two_sample_p(z1, c.n, z2, c.n)});
    }
    for (std::size_t j1 = 0; j1 < k; ++j1)
        for (std::size_t j2 = j1 + 1; j2 < k; ++j2) {
            const double r1 = spearman_rho(lhs[j1], lhs[j2]);
            const double r2 = spearman_rho(rhs[j1], rhs[j2]);
            out.push_back({"spearman@(" + fmt_num(grid[j1]) + "," + fmt_num(grid[j2]) + ")",
                           std::abs(r1 - r2), spearman_diff_p(r1, c.n, r2, c.n)});
        }
    return out;
}

// --------------------------------------------------------------- last_zero
// lhs: duality route, g_t = 1/d_{1/t} under the driftless law from mu.
// rhs: min{t, E_mu} * A_alpha drawn from the scalar laws.
std::vector<SubTest> run_last_zero(const IdentityCase& c) {
    const double alpha = shape_alpha(c.params.delta);
    const ScalarLaw rhs_law =
        ScalarLaw::product(ScalarLaw::censored_exp(c.params.t, 0.5 * c.params.mu * c.params.mu),
                           ScalarLaw::beta(alpha, 1.0 - alpha));
    std::vector<double> lhs(c.n), rhs(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 2, 0, i);
        lhs[i] = last_zero_drifted_sample(c.params.delta, c.params.mu, c.params.t, r1);
        auto r2 = draw_stream(c, 2, 1, i);
        rhs[i] = rhs_law.sample(r2);
    }
    const auto ks = ks_two_sample(lhs, rhs);
    return {{"ks", ks.statistic, ks.p_value}};
}

// -------------------------------------------------------------- first_zero
// lhs: Markov route, exact transition to t then an independent hitting time.
// rhs: max{t, 1/E_x} / A_alpha drawn from the scalar laws.
std::vector<SubTest> run_first_zero(const IdentityCase& c) {
    const double alpha = shape_alpha(c.params.delta);
    const ScalarLaw rhs_law = ScalarLaw::product(
        ScalarLaw::shifted_max(c.params.t,
                               ScalarLaw::reciprocal(ScalarLaw::exponential(0.5 * c.params.x * c.params.x))),
        ScalarLaw::reciprocal(ScalarLaw::beta(alpha, 1.0 - alpha)));
    std::vector<double> lhs(c.n), rhs(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 2, 0, i);
        lhs[i] = first_zero_sample(c.params.delta, c.params.x, c.params.t, r1);
        auto r2 = draw_stream(c, 2, 1, i);
        rhs[i] = rhs_law.sample(r2);
    }
    const auto ks = ks_two_sample(lhs, rhs);
    return {{"ks", ks.statistic, ks.p_value}};
}

// ---------------------------------------------------------- lamperti_limit
// Vanishing drift recovers the driftless arcsine law t * Beta(alpha,1-alpha).
std::vector<SubTest> run_lamperti(const IdentityCase& c) {
    const double alpha = shape_alpha(c.params.delta);
    const double t = c.params.t;
    std::vector<double> lhs(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 1, 0, i);
        lhs[i] = last_zero_drifted_sample(c.params.delta, c.params.mu, t, r1);
    }
    const auto cdf = [alpha, t](double y) {
        const double u = std::clamp(y / t, 0.0, 1.0);
        if (u == 0.0) return 0.0;
        if (u == 1.0) return 1.0;
        return specfun::reg_inc_beta(alpha, 1.0 - alpha, u);
    };
    const auto ks = ks_one_sample(lhs, cdf);
    return {{"ks_vs_scaled_beta", ks.statistic, ks.p_value}};
}

// ---------------------------------------------------------------- esg_case
// Dimension-1 specialization: the duality route built on the Gaussian-norm
// transition, against the censored-exponential/beta factorization and
// against the gamma-Poisson duality route.
std::vector<SubTest> run_esg(const IdentityCase& c) {
    if (c.params.delta != 1.0)
        throw std::invalid_argument("esg_case: requires delta = 1");
    const double mu = c.params.mu;
    const double t = c.params.t;
    if (!(mu > 0.0 && t > 0.0)) throw std::domain_error("esg_case: need mu > 0 and t > 0");
    const ScalarLaw rhs_law = ScalarLaw::product(ScalarLaw::censored_exp(t, 0.5 * mu * mu),
                                                 ScalarLaw::beta(0.5, 0.5));
    std::vector<double> gauss(c.n), factor(c.n), besq(c.n);
    const double s = 1.0 / t;
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 3, 0, i);
        const double xt = std::abs(mu + std::sqrt(s) * r1.next_normal());
        const double d = s + 0.5 * xt * xt / r1.next_gamma(0.5, 1.0);
        gauss[i] = 1.0 / d;
        auto r2 = draw_stream(c, 3, 1, i);
        factor[i] = rhs_law.sample(r2);
        auto r3 = draw_stream(c, 3, 2, i);
        besq[i] = last_zero_drifted_sample(1.0, mu, t, r3);
    }
    const auto ks1 = ks_two_sample(gauss, factor);
    const auto ks2 = ks_two_sample(gauss, besq);
    return {{"ks_vs_factorization", ks1.statistic, ks1.p_value},
            {"ks_gaussian_vs_besq_route", ks2.statistic, ks2.p_value}};
}

// -------------------------------------------------------------- g_infinity
// Large horizon: the last zero converges to Gamma(alpha, mu^2/2).
std::vector<SubTest> run_g_infinity(const IdentityCase& c) {
    const double alpha = shape_alpha(c.params.delta);
    const double rate = 0.5 * c.params.mu * c.params.mu;
    std::vector<double> lhs(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 1, 0, i);
        lhs[i] = last_zero_drifted_sample(c.params.delta, c.params.mu, c.params.t, r1);
    }
    const auto cdf = [alpha, rate](double y) {
        return y <= 0.0 ? 0.0 : specfun::reg_inc_gamma_lower(alpha, rate * y);
    };
    const auto ks = ks_one_sample(lhs, cdf);
    return {{"ks_vs_gamma", ks.statistic, ks.p_value}};
}

// ----------------------------------------------------------------- duality
// lhs: 1/d_{1/t} under the driftless law from x (Markov + hitting time).
// rhs: the last-zero factorization min{t, E_x} * A_alpha, whose proof does
//      not use the duality relation.
std::vector<SubTest> run_duality(const IdentityCase& c) {
    const double alpha = shape_alpha(c.params.delta);
    const double x = c.params.x;
    const double t = c.params.t;
    if (!(x > 0.0 && t > 0.0)) throw std::domain_error("duality: need x > 0 and t > 0");
    const ScalarLaw rhs_law = ScalarLaw::product(ScalarLaw::censored_exp(t, 0.5 * x * x),
                                                 ScalarLaw::beta(alpha, 1.0 - alpha));
    std::vector<double> lhs(c.n), rhs(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 2, 0, i);
        lhs[i] = 1.0 / first_zero_sample(c.params.delta, x, 1.0 / t, r1);
        auto r2 = draw_stream(c, 2, 1, i);
        rhs[i] = rhs_law.sample(r2);
    }
    const auto ks = ks_two_sample(lhs, rhs);
    return {{"ks", ks.statistic, ks.p_value}};
}

// ----------------------------------------------------------- drift_scaling
// c X_{t/c^2} with drift mu versus X_t with drift mu/c, at c = 2.
std::vector<SubTest> run_drift_scaling(const IdentityCase& c) {
    const double scale = 2.0;
    const double t = c.params.t;
    std::vector<double> lhs(c.n), rhs(c.n);
    const std::vector<double> early{t / (scale * scale)};
    const std::vector<double> late{t};
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 2, 0, i);
        lhs[i] = scale * drifted_from_zero(c.params.delta, c.params.mu, early, r1).values[0];
        auto r2 = draw_stream(c, 2, 1, i);
        rhs[i] = drifted_from_zero(c.params.delta, c.params.mu / scale, late, r2).values[0];
    }
    const auto ks = ks_two_sample(lhs, rhs);
    return {{"ks_c=2", ks.statistic, ks.p_value}};
}

// -------------------------------------------------------------- additivity
// Sum of independent squared processes versus the summed-parameter process.
std::vector<SubTest> run_additivity(const IdentityCase& c) {
    const double t = c.params.t;
    std::vector<double> lhs(c.n), rhs(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 2, 0, i);
        lhs[i] = besq_transition(c.params.delta, c.params.x, t, r1) +
                 besq_transition(c.params.delta2, c.params.x2, t, r1);
        auto r2 = draw_stream(c, 2, 1, i);
        rhs[i] = besq_transition(c.params.delta + c.params.delta2, c.params.x + c.params.x2, t, r2);
    }
    const auto ks = ks_two_sample(lhs, rhs);
    return {{"ks", ks.statistic, ks.p_value}};
}

// ------------------------------------------------------- bridge_additivity
// Squared bridges 0 -> x and 0 -> x2 summed, versus the single bridge
// 0 -> x + x2, all realized through the space-time transform; mid-span
// marginal.
std::vector<SubTest> run_bridge_additivity(const IdentityCase& c) {
    const std::vector<double> mid{0.5};
    const double T = 1.0;
    std::vector<double> lhs(c.n), rhs(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 2, 0, i);
        const double b1 =
            sample_drifted_bridge(c.params.delta, std::sqrt(c.params.x), T, mid, r1).values[0];
        const double b2 =
            sample_drifted_bridge(c.params.delta2, std::sqrt(c.params.x2), T, mid, r1).values[0];
        lhs[i] = b1 * b1 + b2 * b2;
        auto r2 = draw_stream(c, 2, 1, i);
        const double b = sample_drifted_bridge(c.params.delta + c.params.delta2,
                                               std::sqrt(c.params.x + c.params.x2), T, mid, r2)
                             .values[0];
        rhs[i] = b * b;
    }
    const auto ks = ks_two_sample(lhs, rhs);
    return {{"ks_mid_span", ks.statistic, ks.p_value}};
}

// ------------------------------------------------------------- zero_bridge
// lhs: (1+t) B_{t/(1+t)} of the rejection-sampled 0-dimensional bridge.
// rhs: the exponentially delayed 4-dimensional drifted process.
std::vector<SubTest> run_zero_bridge(const IdentityCase& c) {
    const double mu = c.params.mu;
    if (!(mu > 0.0)) throw std::domain_error("zero_bridge: drift must be positive");
    const auto& times = c.params.grid;
    const std::size_t k = times.size();
    std::vector<double> wgrid;
    wgrid.reserve(k);
    for (const double t : times) wgrid.push_back(t / (1.0 + t));
    const PathSampler radial4 = [mu](std::span<const double> ts, RngStream& rr) {
        return drifted_from_zero(4.0, mu, ts, rr, ProcessKind::radial);
    };
    std::vector<std::vector<double>> lhs(k, std::vector<double>(c.n));
    std::vector<std::vector<double>> rhs(k, std::vector<double>(c.n));
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 2, 0, i);
        const PathGrid bridge = bridge0_reject(mu, wgrid, r1);
        const PathGrid mapped = zero_bridge_transform(bridge, times);
        for (std::size_t j = 0; j < k; ++j) lhs[j][i] = mapped.values[j];
        auto r2 = draw_stream(c, 2, 1, i);
        const PathGrid direct = delayed_start(radial4, 0.5 * mu * mu, times, r2);
        for (std::size_t j = 0; j < k; ++j) rhs[j][i] = direct.values[j];
    }
    std::vector<SubTest> out;
    for (std::size_t j = 0; j < k; ++j) {
        const auto ks = ks_two_sample(lhs[j], rhs[j]);
        out.push_back({"ks@t=" + fmt_num(times[j]), ks.statistic, ks.p_value});
    }
    for (std::size_t j = 0; j < k; ++j) {
        const auto zeros = [](const std::vector<double>& v) {
            return static_cast<std::size_t>(std::count(v.begin(), v.end(), 0.0));
        };
        const std::size_t z1 = zeros(lhs[j]), z2 = zeros(rhs[j]);
        const double stat = std::abs(static_cast<double>(z1) - static_cast<double>(z2)) /
                            static_cast<double>(c.n);
        out.push_back({"zero_fraction@t=" + fmt_num(times[j]), stat,
                       binom_two_sample_p(z1, c.n, z2, c.n)});
    }
    return out;
}

// -------------------------------------------------------- time_inversion_t1
// At t = 1 inversion swaps start and drift: the Gaussian-norm marginal of
// the drifted process from 0 against the driftless transition from mu.
std::vector<SubTest> run_time_inversion(const IdentityCase& c) {
    const double rounded = std::round(c.params.delta);
    if (c.params.delta != rounded || rounded < 1.0)
        throw std::invalid_argument("time_inversion_t1: requires a positive integer dimension");
    const int d = static_cast<int>(rounded);
    const std::vector<double> one{1.0};
    std::vector<double> lhs(c.n), rhs(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 2, 0, i);
        lhs[i] = gaussian_norm_drifted(d, c.params.mu, one, r1).values[0];
        auto r2 = draw_stream(c, 2, 1, i);
        rhs[i] = std::sqrt(besq_transition(c.params.delta, c.params.mu * c.params.mu, 1.0, r2));
    }
    const auto ks = ks_two_sample(lhs, rhs);
    return {{"ks_t=1", ks.statistic, ks.p_value}};
}

// --------------------------------------------------------------- lln_drift
// Law of large numbers: the sample mean of X_t/t sits within an absolute
// band of 0.05 around mu.  Band test; p is 1 on pass and 0 on fail.
std::vector<SubTest> run_lln(const IdentityCase& c) {
    const double t = c.params.t;
    const std::vector<double> horizon{t};
    double acc = 0.0;
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 1, 0, i);
        acc += drifted_from_zero(c.params.delta, c.params.mu, horizon, r1).values[0] / t;
    }
    const double stat = std::abs(acc / static_cast<double>(c.n) - c.params.mu);
    const double band = 0.05;
    return {{"mean_band", stat, stat <= band ? 1.0 : 0.0}};
}

// -------------------------------------------------------------- absorption
// tau_0 at dimension 0 against the closed form e^{-x^2/(2t)}, plus the
// transition sampler's absorption atom frequency as an independent route.
std::vector<SubTest> run_absorption(const IdentityCase& c) {
    const double x = c.params.x;
    if (!(x > 0.0)) throw std::domain_error("absorption: start must be positive");
    std::vector<double> lhs(c.n);
    std::size_t absorbed = 0;
    for (std::size_t i = 0; i < c.n; ++i) {
        auto r1 = draw_stream(c, 2, 0, i);
        lhs[i] = tau0_sample(0.0, x, r1);
        auto r2 = draw_stream(c, 2, 1, i);
        if (besq_transition(0.0, x * x, c.params.t, r2) == 0.0) ++absorbed;
    }
    const auto cdf = [x](double s) { return s <= 0.0 ? 0.0 : std::exp(-0.5 * x * x / s); };
    const auto ks = ks_one_sample(lhs, cdf);
    const double p0 = std::exp(-0.5 * x * x / c.params.t);
    const double freq = static_cast<double>(absorbed) / static_cast<double>(c.n);
    return {{"ks_vs_reciprocal_exponential", ks.statistic, ks.p_value},
            {"absorption_atom", std::abs(freq - p0), binom_one_sample_p(absorbed, c.n, p0)}};
}

struct Entry {
    Runner runner;
    IdentityCase defaults;
    std::string description;
};

const std::vector<std::pair<std::string, Entry>>& registry() {
    static const std::vector<std::pair<std::string, Entry>> entries = [] {
        std::vector<std::pair<std::string, Entry>> v;
        auto make_case = [](const std::string& name) {
            IdentityCase c;
            c.name = name;
            return c;
        };

        {
            IdentityCase c = make_case("decomp");
            v.push_back({"decomp",
                         {run_decomp, c,
                          "squared drifted process (time inversion) == driftless squared process "
                          "+ exponentially delayed squared 4-dim drifted process; joint marginals"}});
        }
        {
            IdentityCase c = make_case("last_zero");
            v.push_back({"last_zero",
                         {run_last_zero, c,
                          "duality-route last zero == min{t,E_mu} * Beta(alpha,1-alpha)"}});
        }
        {
            IdentityCase c = make_case("first_zero");
            v.push_back({"first_zero",
                         {run_first_zero, c,
                          "Markov-route first zero == max{t,1/E_x} / Beta(alpha,1-alpha)"}});
        }
        {
            IdentityCase c = make_case("lamperti_limit");
            c.params.mu = 1e-4;
            v.push_back({"lamperti_limit",
                         {run_lamperti, c,
                          "vanishing drift recovers the arcsine-law t * Beta(alpha,1-alpha)"}});
        }
        {
            IdentityCase c = make_case("esg_case");
            v.push_back({"esg_case",
                         {run_esg, c,
                          "dimension-1 factorization, Gaussian-norm route against the scalar "
                          "factorization and the gamma-Poisson route"}});
        }
        {
            IdentityCase c = make_case("g_infinity");
            c.params.t = 50.0;
            v.push_back({"g_infinity",
                         {run_g_infinity, c, "large-horizon last zero == Gamma(alpha, mu^2/2)"}});
        }
        {
            IdentityCase c = make_case("duality");
            v.push_back({"duality",
                         {run_duality, c,
                          "1/d_{1/t} from the driftless law at x == last zero of the drifted law "
                          "(drift x) via the factorization route"}});
        }
        {
            IdentityCase c = make_case("drift_scaling");
            v.push_back({"drift_scaling",
                         {run_drift_scaling, c, "c X_{t/c^2} at drift mu == X_t at drift mu/c, c=2"}});
        }
        {
            IdentityCase c = make_case("additivity");
            v.push_back({"additivity",
                         {run_additivity, c,
                          "BESQ(delta,x)_t + BESQ(delta2,x2)_t == BESQ(delta+delta2,x+x2)_t"}});
        }
        {
            IdentityCase c = make_case("bridge_additivity");
            v.push_back({"bridge_additivity",
                         {run_bridge_additivity, c,
                          "squared bridges 0->x (delta) + 0->x2 (delta2) == bridge 0->x+x2 "
                          "(delta+delta2), mid-span marginal"}});
        }
        {
            IdentityCase c = make_case("zero_bridge");
            c.params.grid = {0.5, 1.0, 3.0};
            v.push_back({"zero_bridge",
                         {run_zero_bridge, c,
                          "(1+t) B_{t/(1+t)} of the 0-dim bridge == delayed 4-dim drifted process"}});
        }
        {
            IdentityCase c = make_case("time_inversion_t1");
            v.push_back({"time_inversion_t1",
                         {run_time_inversion, c,
                          "X_1 from 0 with drift mu (Gaussian norm) == X_1 from mu without drift"}});
        }
        {
            IdentityCase c = make_case("lln_drift");
            c.params.t = 100.0;
            c.n = 10000;
            v.push_back({"lln_drift", {run_lln, c, "sample mean of X_t/t within 0.05 of mu"}});
        }
        {
            IdentityCase c = make_case("absorption");
            v.push_back({"absorption",
                         {run_absorption, c,
                          "tau_0 at dimension 0 == 1/E_x, against exp(-x^2/(2t)) and the "
                          "transition sampler's absorption atom"}});
        }
        return v;
    }();
    return entries;
}

const Entry& lookup(const std::string& name) {
    for (const auto& [key, entry] : registry())
        if (key == name) return entry;
    std::ostringstream os;
    os << "unknown identity '" << name << "'; catalog:";
    for (const auto& [key, entry] : registry()) os << " " << key;
    throw std::invalid_argument(os.str());
}

}  // namespace

nlohmann::json IdentityParams::to_json() const {
    return nlohmann::json{{"delta", delta}, {"mu", mu},         {"x", x},   {"t", t},
                          {"grid", grid},   {"delta2", delta2}, {"x2", x2}};
}

IdentityParams IdentityParams::from_json(const nlohmann::json& j) {
    IdentityParams p;
    p.delta = j.at("delta").get<double>();
    p.mu = j.at("mu").get<double>();
    p.x = j.at("x").get<double>();
    p.t = j.at("t").get<double>();
    p.grid = j.at("grid").get<std::vector<double>>();
    p.delta2 = j.at("delta2").get<double>();
    p.x2 = j.at("x2").get<double>();
    return p;
}

nlohmann::json TestReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["params"] = params.to_json();
    if (subtests.size() == 1) {
        j["statistic"] = subtests[0].statistic;
        j["p_value"] = subtests[0].p_value;
    } else {
        std::vector<double> stats, ps;
        for (const auto& s : subtests) {
            stats.push_back(s.statistic);
            ps.push_back(s.p_value);
        }
        j["statistic"] = stats;
        j["p_value"] = ps;
    }
    j["alpha"] = alpha;
    j["decision"] = decision ? "pass" : "fail";
    j["n"] = n;
    j["seed"] = seed;
    j["wall_ms"] = wall_ms;
    return j;
}

TestReport TestReport::from_json(const nlohmann::json& j) {
    TestReport r;
    r.name = j.at("name").get<std::string>();
    r.params = IdentityParams::from_json(j.at("params"));
    const auto& stat = j.at("statistic");
    const auto& pv = j.at("p_value");
    if (stat.is_array()) {
        for (std::size_t i = 0; i < stat.size(); ++i)
            r.subtests.push_back({"", stat[i].get<double>(), pv[i].get<double>()});
    } else {
        r.subtests.push_back({"", stat.get<double>(), pv.get<double>()});
    }
    r.alpha = j.at("alpha").get<double>();
    r.decision = j.at("decision").get<std::string>() == "pass";
    r.n = j.at("n").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_ms = j.at("wall_ms").get<double>();
    return r;
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& [key, entry] : registry()) names.push_back(key);
    return names;
}

IdentityCase catalog_default(const std::string& name) { return lookup(name).defaults; }

std::vector<IdentityCase> catalog() {
    std::vector<IdentityCase> cases;
    for (const auto& [key, entry] : registry()) cases.push_back(entry.defaults);
    return cases;
}

std::string describe_identity(const std::string& name) { return lookup(name).description; }

TestReport run_identity(const IdentityCase& c) {
    const Entry& entry = lookup(c.name);
    if (c.n < 1) throw std::invalid_argument("run_identity: n must be positive");
    const auto start = std::chrono::steady_clock::now();
    std::vector<SubTest> subs = entry.runner(c);
    const auto stop = std::chrono::steady_clock::now();

    std::vector<double> ps;
    for (const auto& s : subs) ps.push_back(s.p_value);
    const auto adjusted = holm_adjust(ps);
    bool pass = true;
    for (const double a : adjusted)
        if (a <= c.alpha) pass = false;

    TestReport report;
    report.name = c.name;
    report.params = c.params;
    report.subtests = std::move(subs);
    report.decision = pass;
    report.n = c.n;
    report.seed = c.seed;
    report.alpha = c.alpha;
    report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return report;
}

}  // namespace besseldrift
