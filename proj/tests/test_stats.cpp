#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "besseldrift/rng.hpp"
#include "besseldrift/stats.hpp"

using namespace besseldrift;

TEST_CASE("ecdf is right-continuous with the proper limits") {
    const Ecdf f{{3.0, 1.0, 2.0, 2.0}};
    CHECK(f(0.5) == 0.0);
    CHECK(f(1.0) == 0.25);
    CHECK(f(1.5) == 0.25);
    CHECK(f(2.0) == 0.75);
    CHECK(f.left(2.0) == 0.25);
    CHECK(f(3.0) == 1.0);
    CHECK(f(99.0) == 1.0);
}

TEST_CASE("two-sample KS hand-computed statistics") {
    const std::vector<double> a{0.1, 0.5, 0.9};
    const std::vector<double> b{0.25, 0.5, 0.75};
    CHECK(ks_two_sample(a, b).statistic == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const std::vector<double> same{0.2, 0.4, 0.8};
    CHECK(ks_two_sample(same, same).statistic == 0.0);

    const std::vector<double> zeros(10, 0.0), ones(10, 1.0);
    CHECK(ks_two_sample(zeros, ones).statistic == 1.0);
}

TEST_CASE("two-sample KS is symmetric and invariant under increasing transforms") {
    RngStream r(5, 0);
    std::vector<double> a(500), b(700);
    for (auto& v : a) v = r.next_normal();
    for (auto& v : b) v = r.next_normal() * 1.1;
    const auto d1 = ks_two_sample(a, b);
    const auto d2 = ks_two_sample(b, a);
    CHECK(d1.statistic == d2.statistic);
    CHECK(d1.p_value == d2.p_value);
    auto ta = a, tb = b;
    for (auto& v : ta) v = std::exp(v);
    for (auto& v : tb) v = std::exp(v);
    CHECK(ks_two_sample(ta, tb).statistic == doctest::Approx(d1.statistic).epsilon(1e-15));
}

TEST_CASE("one-sample KS hand-computed statistic against the uniform CDF") {
    const std::vector<double> a{0.1, 0.5, 0.9};
    const auto uniform = [](double y) { return std::clamp(y, 0.0, 1.0); };
    CHECK(ks_one_sample(a, uniform).statistic == doctest::Approx(7.0 / 30.0).epsilon(1e-12));
}

TEST_CASE("one-sample KS with a degenerate step CDF") {
    const double c = 2.5;
    const std::vector<double> sample(50, c);
    const auto step = [c](double y) { return y >= c ? 1.0 : 0.0; };
    const std::vector<double> jumps{c};
    const auto ks = ks_one_sample(sample, step, jumps);
    CHECK(ks.statistic == 0.0);
    CHECK(ks.p_value == 1.0);
}

TEST_CASE("one-sample KS rejects a CDF escaping [0,1]") {
    const std::vector<double> a{0.1, 0.5};
    CHECK_THROWS_AS(ks_one_sample(a, [](double y) { return 2.0 * y; }), std::domain_error);
}

TEST_CASE("empty samples are rejected") {
    const std::vector<double> a{0.1};
    const std::vector<double> empty;
    CHECK_THROWS_AS(ks_two_sample(empty, a), std::invalid_argument);
    CHECK_THROWS_AS(ks_one_sample(empty, [](double) { return 0.5; }), std::invalid_argument);
}

TEST_CASE("kolmogorov survival function reference values") {
    CHECK(kolmogorov_sf(0.4) == doctest::Approx(0.9971923267772983).epsilon(1e-10));
    CHECK(kolmogorov_sf(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-10));
    CHECK(kolmogorov_sf(0.8275735551899077) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(kolmogorov_sf(1.0) == doctest::Approx(0.26999967167735456).epsilon(1e-10));
    CHECK(kolmogorov_sf(1.3) == doctest::Approx(0.06809222184476636).epsilon(1e-10));
    CHECK(kolmogorov_sf(2.0) == doctest::Approx(0.0006709252557796953).epsilon(1e-8));
    // continuity across the series switch
    CHECK(std::abs(kolmogorov_sf(1.18 - 1e-9) - kolmogorov_sf(1.18 + 1e-9)) < 1e-8);
}

TEST_CASE("p-values are uniform under the null") {
    // 500 repetitions of a same-law two-sample comparison on disjoint streams.
    const int reps = 500;
    const int n = 1000;
    std::vector<double> ps(reps);
    for (int rep = 0; rep < reps; ++rep) {
        RngStream ra(1000 + rep, 0), rb(1000 + rep, 1);
        std::vector<double> a(n), b(n);
        for (auto& v : a) v = ra.next_normal();
        for (auto& v : b) v = rb.next_normal();
        ps[rep] = ks_two_sample(a, b).p_value;
    }
    const auto uniform = [](double y) { return std::clamp(y, 0.0, 1.0); };
    CHECK(ks_one_sample(ps, uniform).p_value > 0.01);
}

TEST_CASE("spearman correlation basics") {
    std::vector<double> x(2000), y(2000), z(2000);
    RngStream r(7, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = r.next_normal();
        y[i] = std::exp(x[i]);  // monotone function => rho = 1
        z[i] = r.next_normal();
    }
    CHECK(spearman_rho(x, y) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(spearman_rho(x, z)) < 0.08);
    CHECK(spearman_diff_p(0.5, 10000, 0.5, 10000) == doctest::Approx(1.0));
    CHECK(spearman_diff_p(0.9, 10000, 0.0, 10000) < 1e-10);
}

TEST_CASE("holm adjustment hand example") {
    const std::vector<double> p{0.01, 0.04, 0.03};
    const auto adj = holm_adjust(p);
    CHECK(adj[0] == doctest::Approx(0.03));
    CHECK(adj[1] == doctest::Approx(0.06));
    CHECK(adj[2] == doctest::Approx(0.06));
}

TEST_CASE("binomial two-sample comparison degenerate cases") {
    CHECK(binom_two_sample_p(0, 1000, 0, 1000) == 1.0);
    CHECK(binom_two_sample_p(1000, 1000, 1000, 1000) == 1.0);
    CHECK(binom_two_sample_p(100, 1000, 500, 1000) < 1e-10);
}
