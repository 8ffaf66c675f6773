#pragma once

namespace besseldrift::specfun {

/// Convergence policy for the series/continued-fraction evaluations.
/// rel_tol must lie in (0, 1e-6]; max_terms must be at least 50.
struct AccuracyPolicy {
    double rel_tol = 1e-13;
    int max_terms = 400;

    void validate() const;
};

/// ln Gamma(a) for a > 0.
double log_gamma(double a);

/// Modified Bessel function of the first kind I_nu(z) for nu >= -1, z >= 0.
/// Power series below the regime switch, exponentially scaled asymptotic
/// expansion above it.
double bessel_i(double nu, double z, const AccuracyPolicy& acc = {});

/// ln I_nu(z) for z > 0; safe where I_nu(z) itself would overflow.
double log_bessel_i(double nu, double z, const AccuracyPolicy& acc = {});

/// Watanabe's drift function h_{delta,mu}(x): equal to 1 at x = 0, and
/// (2/(mu x))^(delta/2-1) Gamma(delta/2) I_{delta/2-1}(mu x) for x > 0.
double h_drift(double delta, double mu, double x, const AccuracyPolicy& acc = {});

/// ln h_{delta,mu}(x); the form used by density ratios when mu*x is large.
double log_h_drift(double delta, double mu, double x, const AccuracyPolicy& acc = {});

/// Regularized incomplete beta function I_x(a,b) for a,b > 0, x in [0,1].
double reg_inc_beta(double a, double b, double x);

/// Regularized upper incomplete gamma Q(a,x) = Gamma(a,x)/Gamma(a).
double reg_inc_gamma_upper(double a, double x);

/// Regularized lower incomplete gamma P(a,x) = 1 - Q(a,x).
double reg_inc_gamma_lower(double a, double x);

/// Standard normal CDF.
double norm_cdf(double z);

}  // namespace besseldrift::specfun
