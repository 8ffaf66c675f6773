#pragma once

#include <functional>
#include <span>
#include <vector>

namespace besseldrift {

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Empirical CDF; right-continuous, 0 before the minimum, 1 at and after
/// the maximum.
class Ecdf {
public:
    explicit Ecdf(std::vector<double> values);

    double operator()(double y) const;
    /// Left limit (fraction strictly below y).
    double left(double y) const;
    const std::vector<double>& sorted() const { return values_; }
    std::size_t size() const { return values_.size(); }

private:
    std::vector<double> values_;
};

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value with
/// effective n = na*nb/(na+nb).  Ties and atoms are handled by taking the
/// sup over pooled jump points from both sides.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample KS against a right-continuous CDF.  Pass the CDF's jump
/// locations so the sup also probes both one-sided gaps there; p-values
/// are conservative in the presence of jumps.
KsResult ks_one_sample(std::span<const double> sample,
                       const std::function<double(double)>& cdf,
                       std::span<const double> jumps = {});

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_sf(double x);

/// Spearman rank correlation (average ranks on ties).
double spearman_rho(std::span<const double> a, std::span<const double> b);

/// Two-sided p-value for equality of two independent Spearman correlations
/// via the Fisher z transform.
double spearman_diff_p(double r1, std::size_t n1, double r2, std::size_t n2);

/// Two-sided p-value for equality of two binomial proportions c1/n1 and
/// c2/n2 (pooled normal approximation; exact 1.0 when both counts agree
/// and the pooled proportion is degenerate).
double binom_two_sample_p(std::size_t c1, std::size_t n1, std::size_t c2, std::size_t n2);

/// Holm step-down adjusted p-values, same order as the input.
std::vector<double> holm_adjust(std::span<const double> p_values);

}  // namespace besseldrift
