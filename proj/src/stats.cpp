#include "besseldrift/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "besseldrift/specfun.hpp"

namespace besseldrift {

namespace {

double ks_p_value(double d, double effective_n) {
    const double en = std::sqrt(effective_n);
    return kolmogorov_sf((en + 0.12 + 0.11 / en) * d);
}

void check_cdf_value(double f) {
    if (!(f >= 0.0 && f <= 1.0))
        throw std::domain_error("ks_one_sample: cdf returned a value outside [0,1]");
}

std::vector<double> rank_vector(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

Ecdf::Ecdf(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("Ecdf: empty sample");
    std::sort(values_.begin(), values_.end());
}

double Ecdf::operator()(double y) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), y);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double Ecdf::left(double y) const {
    const auto it = std::lower_bound(values_.begin(), values_.end(), y);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double kolmogorov_sf(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 1.18) {
        // Theta-series form of the CDF; accurate for small x.
        const double t = std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * x * x));
        const double cdf = std::sqrt(2.0 * std::numbers::pi) / x *
                           (t + std::pow(t, 9.0) + std::pow(t, 25.0) + std::pow(t, 49.0));
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    const double t = std::exp(-2.0 * x * x);
    const double sf =
        2.0 * (t - std::pow(t, 4.0) + std::pow(t, 9.0) - std::pow(t, 16.0) + std::pow(t, 25.0));
    return std::clamp(sf, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a_in, std::span<const double> b_in) {
    if (a_in.empty() || b_in.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> a(a_in.begin(), a_in.end());
    std::vector<double> b(b_in.begin(), b_in.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    while (i < a.size() || j < b.size()) {
        const double va = i < a.size() ? a[i] : inf;
        const double vb = j < b.size() ? b[j] : inf;
        const double v = std::min(va, vb);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = na * nb / (na + nb);
    return {d, ks_p_value(d, ne)};
}

KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf,
                       std::span<const double> jumps) {
    if (sample.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    std::vector<double> v(sample.begin(), sample.end());
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = cdf(v[i]);
        check_cdf_value(f);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    for (const double c : jumps) {
        const double f = cdf(c);
        check_cdf_value(f);
        const double fm = cdf(std::nextafter(c, -std::numeric_limits<double>::infinity()));
        check_cdf_value(fm);
        const auto hi = std::upper_bound(v.begin(), v.end(), c) - v.begin();
        const auto lo = std::lower_bound(v.begin(), v.end(), c) - v.begin();
        d = std::max(d, std::abs(static_cast<double>(hi) / n - f));
        d = std::max(d, std::abs(static_cast<double>(lo) / n - fm));
    }
    return {d, ks_p_value(d, n)};
}

double spearman_rho(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 3)
        throw std::invalid_argument("spearman_rho: samples must be paired with size >= 3");
    const auto ra = rank_vector(a);
    const auto rb = rank_vector(b);
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = ra[i] - ma;
        const double db = rb[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

double spearman_diff_p(double r1, std::size_t n1, double r2, std::size_t n2) {
    if (n1 < 4 || n2 < 4) throw std::invalid_argument("spearman_diff_p: need n >= 4");
    const double z1 = std::atanh(std::clamp(r1, -0.999999, 0.999999));
    const double z2 = std::atanh(std::clamp(r2, -0.999999, 0.999999));
    const double se = std::sqrt(1.06 / (static_cast<double>(n1) - 3.0) +
                                1.06 / (static_cast<double>(n2) - 3.0));
    const double z = (z1 - z2) / se;
    return 2.0 * specfun::norm_cdf(-std::abs(z));
}

double binom_two_sample_p(std::size_t c1, std::size_t n1, std::size_t c2, std::size_t n2) {
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("binom_two_sample_p: empty sample");
    const double p1 = static_cast<double>(c1) / static_cast<double>(n1);
    const double p2 = static_cast<double>(c2) / static_cast<double>(n2);
    const double pooled =
        static_cast<double>(c1 + c2) / static_cast<double>(n1 + n2);
    const double var = pooled * (1.0 - pooled) *
                       (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2));
    if (var == 0.0) return p1 == p2 ? 1.0 : 0.0;
    const double z = (p1 - p2) / std::sqrt(var);
    return 2.0 * specfun::norm_cdf(-std::abs(z));
}

std::vector<double> holm_adjust(std::span<const double> p_values) {
    const std::size_t m = p_values.size();
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return p_values[i] < p_values[j]; });
    std::vector<double> adjusted(m);
    double running = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double scaled = static_cast<double>(m - k) * p_values[idx[k]];
        running = std::max(running, std::min(1.0, scaled));
        adjusted[idx[k]] = running;
    }
    return adjusted;
}

}  // namespace besseldrift
