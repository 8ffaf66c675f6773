#include <cmath>
#include <vector>

#include <doctest.h>

#include "besseldrift/bessel.hpp"
#include "besseldrift/quadrature.hpp"
#include "besseldrift/rng.hpp"
#include "besseldrift/scalar_law.hpp"
#include "besseldrift/specfun.hpp"
#include "besseldrift/stats.hpp"

using namespace besseldrift;
namespace sf = besseldrift::specfun;

namespace {

template <typename F>
std::vector<double> draw_n(std::size_t n, std::uint64_t seed, std::uint64_t stream_base, F&& f) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        RngStream rng(seed, stream_base + i);
        out[i] = f(rng);
    }
    return out;
}

}  // namespace

TEST_CASE("besq_transition mean and absorption atom") {
    const double delta = 1.5, x = 0.7, dt = 0.9;
    const std::size_t n = 1000000;
    double acc = 0.0, acc2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        RngStream rng(31, i);
        const double y = besq_transition(delta, x, dt, rng);
        acc += y;
        acc2 += y * y;
    }
    const double mean = acc / n;
    const double want = x + delta * dt;
    const double se = std::sqrt((acc2 / n - mean * mean) / n);
    CHECK(std::abs(mean - want) < 4.0 * se);

    // delta = 0: atom at zero with mass e^{-x/(2 dt)}
    std::size_t zeros = 0;
    const std::size_t m = 100000;
    for (std::size_t i = 0; i < m; ++i) {
        RngStream rng(32, i);
        if (besq_transition(0.0, 1.0, 1.0, rng) == 0.0) ++zeros;
    }
    const double p0 = std::exp(-0.5);
    CHECK(std::abs(static_cast<double>(zeros) / m - p0) <
          4.0 * std::sqrt(p0 * (1.0 - p0) / m));

    RngStream rng(33, 0);
    CHECK(besq_transition(0.0, 0.0, 1.0, rng) == 0.0);
    CHECK_THROWS_AS(besq_transition(-0.5, 1.0, 1.0, rng), std::domain_error);
    CHECK_THROWS_AS(besq_transition(1.0, 1.0, 0.0, rng), std::invalid_argument);
}

TEST_CASE("besq_path single-time marginal is exponential for delta = 2 from 0") {
    const double t = 0.8;
    const BesselLaw law{2.0, 0.0, 0.0, ProcessKind::squared};
    const std::vector<double> times{t};
    const auto v = draw_n(100000, 34, 0, [&](RngStream& rng) {
        return besq_path(law, times, rng).values[0];
    });
    const double rate = 1.0 / (2.0 * t);
    const auto ks = ks_one_sample(v, [rate](double y) {
        return y <= 0.0 ? 0.0 : -std::expm1(-rate * y);
    });
    CHECK(ks.p_value > 1e-3);
}

TEST_CASE("besq_path absorption frequency and pathwise monotonicity at delta = 0") {
    const BesselLaw law{0.0, 0.0, 4.0, ProcessKind::squared};
    std::vector<double> times;
    for (double t = 0.25; t <= 4.0; t += 0.25) times.push_back(t);
    std::size_t absorbed = 0, violations = 0;
    const std::size_t n = 100000;
    for (std::size_t i = 0; i < n; ++i) {
        RngStream rng(35, i);
        const auto path = besq_path(law, times, rng);
        bool seen_zero = false;
        for (const double v : path.values) {
            if (seen_zero && v != 0.0) ++violations;
            seen_zero = seen_zero || (v == 0.0);
        }
        if (path.values.back() == 0.0) ++absorbed;
    }
    CHECK(violations == 0);
    const double p0 = std::exp(-4.0 / (2.0 * 4.0));  // e^{-x/(2T)}
    CHECK(std::abs(static_cast<double>(absorbed) / n - p0) <
          4.0 * std::sqrt(p0 * (1.0 - p0) / n));
}

TEST_CASE("besq_path rejects bad inputs") {
    RngStream rng(36, 0);
    const BesselLaw radial{1.0, 0.0, 0.0, ProcessKind::radial};
    const std::vector<double> times{1.0};
    CHECK_THROWS_AS(besq_path(radial, times, rng), std::invalid_argument);
    const BesselLaw squared{1.0, 0.0, 0.0, ProcessKind::squared};
    const std::vector<double> unsorted{1.0, 0.5};
    CHECK_THROWS_AS(besq_path(squared, unsorted, rng), std::invalid_argument);
    const BesselLaw zero_with_drift{0.0, 1.0, 0.0, ProcessKind::squared};
    CHECK_THROWS_AS(besq_path(zero_with_drift, times, rng), std::domain_error);
}

TEST_CASE("time inversion at t = 1: drifted from 0 equals driftless from mu") {
    const double delta = 1.0, mu = 1.0;
    const std::vector<double> one{1.0};
    const auto lhs = draw_n(100000, 37, 0, [&](RngStream& rng) {
        return drifted_from_zero(delta, mu, one, rng).values[0];
    });
    const auto rhs = draw_n(100000, 37, 1000000, [&](RngStream& rng) {
        return std::sqrt(besq_transition(delta, mu * mu, 1.0, rng));
    });
    CHECK(ks_two_sample(lhs, rhs).p_value > 1e-3);
}

TEST_CASE("drifted_from_zero with mu = 0 reduces to the driftless process from 0") {
    const double delta = 1.7, t = 0.6;
    const std::vector<double> times{t};
    const auto lhs = draw_n(50000, 38, 0, [&](RngStream& rng) {
        return drifted_from_zero(delta, 0.0, times, rng).values[0];
    });
    const auto rhs = draw_n(50000, 38, 1000000, [&](RngStream& rng) {
        return std::sqrt(besq_transition(delta, 0.0, t, rng));
    });
    CHECK(ks_two_sample(lhs, rhs).p_value > 1e-3);

    RngStream rng(38, 5);
    const std::vector<double> with_zero{0.0, 1.0};
    CHECK_THROWS_AS(drifted_from_zero(delta, 0.0, with_zero, rng), std::invalid_argument);
}

TEST_CASE("law of large numbers: X_t/t concentrates at mu") {
    const double mu = 2.0, t = 100.0;
    const std::vector<double> horizon{t};
    double acc = 0.0;
    const std::size_t n = 10000;
    for (std::size_t i = 0; i < n; ++i) {
        RngStream rng(39, i);
        acc += drifted_from_zero(1.0, mu, horizon, rng).values[0] / t;
    }
    CHECK(std::abs(acc / n - mu) < 0.05);
}

TEST_CASE("gaussian norm sampler: half-normal marginal at delta = 1, mu = 0") {
    const double t = 1.3;
    const std::vector<double> times{t};
    const auto v = draw_n(100000, 40, 0, [&](RngStream& rng) {
        return gaussian_norm_drifted(1, 0.0, times, rng).values[0];
    });
    const auto ks = ks_one_sample(v, [t](double y) {
        return y <= 0.0 ? 0.0 : std::erf(y / std::sqrt(2.0 * t));
    });
    CHECK(ks.p_value > 1e-3);
    RngStream rng(40, 5);
    CHECK_THROWS_AS(gaussian_norm_drifted(0, 0.0, times, rng), std::invalid_argument);
}

TEST_CASE("exactness cross-check: gaussian norm vs time-inversion sampler") {
    const std::vector<double> times{0.5, 1.0, 2.0};
    for (int delta : {1, 4}) {
        for (double mu : {0.0, 1.0, 2.0}) {
            std::vector<std::vector<double>> a(times.size(), std::vector<double>(50000));
            std::vector<std::vector<double>> b(times.size(), std::vector<double>(50000));
            for (std::size_t i = 0; i < 50000; ++i) {
                RngStream r1(41, 2 * i);
                const auto pa = gaussian_norm_drifted(delta, mu, times, r1);
                RngStream r2(41, 2 * i + 1);
                const auto pb = drifted_from_zero(static_cast<double>(delta), mu, times, r2);
                for (std::size_t j = 0; j < times.size(); ++j) {
                    a[j][i] = pa.values[j];
                    b[j][i] = pb.values[j];
                }
            }
            for (std::size_t j = 0; j < times.size(); ++j) {
                CAPTURE(delta);
                CAPTURE(mu);
                CAPTURE(times[j]);
                CHECK(ks_two_sample(a[j], b[j]).p_value > 1e-3);
            }
        }
    }
}

TEST_CASE("markov consistency: chained transitions match one long transition") {
    const double delta = 1.3, x = 0.8;
    const auto two_step = draw_n(100000, 42, 0, [&](RngStream& rng) {
        const double mid = besq_transition(delta, x, 0.6, rng);
        return besq_transition(delta, mid, 0.9, rng);
    });
    const auto one_step = draw_n(100000, 42, 1000000, [&](RngStream& rng) {
        return besq_transition(delta, x, 1.5, rng);
    });
    CHECK(ks_two_sample(two_step, one_step).p_value > 1e-3);
}

TEST_CASE("drift scaling: c X_{t/c^2} at mu equals X_t at mu/c") {
    const double delta = 1.0, mu = 2.0, t = 1.0, c = 2.0;
    const std::vector<double> early{t / (c * c)};
    const std::vector<double> late{t};
    const auto lhs = draw_n(100000, 43, 0, [&](RngStream& rng) {
        return c * drifted_from_zero(delta, mu, early, rng).values[0];
    });
    const auto rhs = draw_n(100000, 43, 1000000, [&](RngStream& rng) {
        return drifted_from_zero(delta, mu / c, late, rng).values[0];
    });
    CHECK(ks_two_sample(lhs, rhs).p_value > 1e-3);
}

TEST_CASE("tau0: absorption law at delta = 0 and the inverse-gamma law at delta = 1") {
    const double x = 1.0;
    const auto v0 = draw_n(100000, 44, 0, [&](RngStream& rng) {
        return tau0_sample(0.0, x, rng);
    });
    const auto cdf0 = [x](double s) { return s <= 0.0 ? 0.0 : std::exp(-0.5 * x * x / s); };
    CHECK(ks_one_sample(v0, cdf0).p_value > 1e-3);
    CHECK(cdf0(1.0) == doctest::Approx(0.6065306597126334).epsilon(1e-12));

    const auto v1 = draw_n(100000, 44, 1000000, [&](RngStream& rng) {
        return tau0_sample(1.0, x, rng);
    });
    const auto cdf1 = [x](double s) {
        return s <= 0.0 ? 0.0 : sf::reg_inc_gamma_upper(0.5, 0.5 * x * x / s);
    };
    CHECK(ks_one_sample(v1, cdf1).p_value > 1e-3);

    RngStream rng(44, 5);
    CHECK_THROWS_AS(tau0_sample(2.0, 1.0, rng), std::domain_error);
    CHECK_THROWS_AS(tau0_sample(2.7, 1.0, rng), std::domain_error);
    CHECK_THROWS_AS(tau0_sample(1.0, 0.0, rng), std::domain_error);
}

TEST_CASE("first zero at t = 0 is the hitting time; at x = 0 it is t/A_alpha") {
    const double delta = 1.0, alpha = 0.5;
    const auto v_hit = draw_n(100000, 45, 0, [&](RngStream& rng) {
        return first_zero_sample(delta, 1.0, 0.0, rng);
    });
    const auto cdf_hit = [](double s) {
        return s <= 0.0 ? 0.0 : sf::reg_inc_gamma_upper(0.5, 0.5 / s);
    };
    CHECK(ks_one_sample(v_hit, cdf_hit).p_value > 1e-3);

    const double t = 1.0;
    const auto v_scaled = draw_n(100000, 45, 1000000, [&](RngStream& rng) {
        return first_zero_sample(delta, 0.0, t, rng);
    });
    const auto cdf_scaled = [t, alpha](double y) {
        if (y <= t) return 0.0;
        return 1.0 - sf::reg_inc_beta(alpha, 1.0 - alpha, t / y);
    };
    CHECK(ks_one_sample(v_scaled, cdf_scaled).p_value > 1e-3);

    RngStream rng(45, 7);
    CHECK(first_zero_sample(delta, 0.0, 0.0, rng) == 0.0);
}

TEST_CASE("first zero factorization at delta = 1, x = 1, t = 1") {
    const auto lhs = draw_n(100000, 46, 0, [&](RngStream& rng) {
        return first_zero_sample(1.0, 1.0, 1.0, rng);
    });
    const auto law = ScalarLaw::product(
        ScalarLaw::shifted_max(1.0, ScalarLaw::reciprocal(ScalarLaw::exponential(0.5))),
        ScalarLaw::reciprocal(ScalarLaw::beta(0.5, 0.5)));
    const auto rhs = draw_n(100000, 46, 1000000, [&](RngStream& rng) {
        return law.sample(rng);
    });
    CHECK(ks_two_sample(lhs, rhs).p_value > 1e-3);
}

TEST_CASE("last zero sampler stays in [0, t] and meets its limiting laws") {
    const double delta = 1.0, t = 1.0;
    const auto v = draw_n(100000, 47, 0, [&](RngStream& rng) {
        return last_zero_drifted_sample(delta, 1e-4, t, rng);
    });
    for (const double g : v) {
        REQUIRE(g >= 0.0);
        REQUIRE(g <= t);
    }
    // mu -> 0 recovers the arcsine law
    const auto arcsine = [](double y) {
        if (y <= 0.0) return 0.0;
        if (y >= 1.0) return 1.0;
        return sf::reg_inc_beta(0.5, 0.5, y);
    };
    CHECK(ks_one_sample(v, arcsine).p_value > 1e-3);

    // t -> infinity recovers Gamma(alpha, mu^2/2)
    const auto vg = draw_n(100000, 47, 1000000, [&](RngStream& rng) {
        return last_zero_drifted_sample(1.0, 1.0, 50.0, rng);
    });
    const auto gamma_cdf = [](double y) {
        return y <= 0.0 ? 0.0 : sf::reg_inc_gamma_lower(0.5, 0.5 * y);
    };
    CHECK(ks_one_sample(vg, gamma_cdf).p_value > 1e-3);
}

TEST_CASE("driftless transition density integrates to one and matches moments") {
    for (const auto& [delta, t, x] : std::vector<std::tuple<double, double, double>>{
             {1.0, 1.0, 0.0}, {0.7, 0.5, 1.3}, {3.2, 2.0, 0.4}}) {
        const double upper = x + std::sqrt(t) * 12.0 + delta * t;
        const double mass = integrate(
            [&](double y) { return bessel_transition_density(delta, t, x, y); }, 1e-12, upper,
            1e-10);
        CAPTURE(delta);
        CHECK(std::abs(mass - 1.0) < 1e-6);
        // E[X_t^2] = x^2 + delta t for the squared process
        const double second = integrate(
            [&](double y) { return y * y * bessel_transition_density(delta, t, x, y); }, 1e-12,
            upper, 1e-10);
        CHECK(std::abs(second - (x * x + delta * t)) < 1e-5);
    }
}

TEST_CASE("drifted transition density: mass one, small-drift limit, folded normal") {
    const double mass = integrate(
        [&](double y) { return drifted_transition_density(1.0, 1.0, 1.0, 0.0, y); }, 1e-12, 14.0,
        1e-10);
    CHECK(std::abs(mass - 1.0) < 1e-6);

    for (double y : {0.2, 1.0, 2.5}) {
        const double ratio = drifted_transition_density(1.3, 1e-8, 0.7, 0.9, y) /
                             bessel_transition_density(1.3, 0.7, 0.9, y);
        CHECK(ratio == doctest::Approx(1.0).epsilon(1e-6));
    }

    // delta = 1 from 0: folded normal N(mu t, t)
    const double mu = 1.0, t = 1.0;
    for (double y : {0.1, 0.7, 1.5, 3.0}) {
        const double want = (std::exp(-0.5 * (y - mu * t) * (y - mu * t) / t) +
                             std::exp(-0.5 * (y + mu * t) * (y + mu * t) / t)) /
                            std::sqrt(2.0 * M_PI * t);
        CHECK(drifted_transition_density(1.0, mu, t, 0.0, y) ==
              doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("drifted density histogram against the gaussian norm sampler") {
    const double mu = 1.0, t = 1.0;
    const std::vector<double> times{t};
    const int nbins = 24;
    const double width = 0.25;
    std::vector<double> counts(nbins, 0.0);
    const std::size_t n = 1000000;
    for (std::size_t i = 0; i < n; ++i) {
        RngStream rng(48, i);
        const double v = gaussian_norm_drifted(1, mu, times, rng).values[0];
        const int bin = static_cast<int>(v / width);
        if (bin >= 0 && bin < nbins) counts[bin] += 1.0;
    }
    for (int b = 0; b < nbins; ++b) {
        const double lo = b * width;
        const double hi = lo + width;
        const double p = integrate(
            [&](double y) { return drifted_transition_density(1.0, mu, t, 0.0, y); },
            std::max(lo, 1e-12), hi, 1e-10);
        const double phat = counts[b] / static_cast<double>(n);
        CHECK(std::abs(phat - p) / std::max(p, 0.01) < 0.03);
    }
}
