#include "besseldrift/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "besseldrift/specfun.hpp"

namespace besseldrift {

namespace {

void check_grid(std::span<const double> times, bool allow_zero) {
    if (times.empty()) throw std::invalid_argument("path grid must be nonempty");
    double prev = -1.0;
    for (const double t : times) {
        if (t < 0.0) throw std::invalid_argument("path grid times must be nonnegative");
        if (!allow_zero && t == 0.0)
            throw std::invalid_argument(
                "grid time 0 is not allowed here; the value at 0 is fixed by continuity");
        if (t <= prev) throw std::invalid_argument("path grid times must be strictly increasing");
        prev = t;
    }
}

}  // namespace

void BesselLaw::validate() const {
    if (delta < 0.0) throw std::domain_error("BesselLaw: dimension must be nonnegative");
    if (mu < 0.0) throw std::domain_error("BesselLaw: drift must be nonnegative");
    if (delta == 0.0 && mu != 0.0)
        throw std::domain_error("BesselLaw: dimension 0 is defined only without drift");
    if (x0 < 0.0) throw std::domain_error("BesselLaw: start must be nonnegative");
}

double besq_transition(double delta, double x, double dt, RngStream& rng) {
    if (delta < 0.0) throw std::domain_error("besq_transition: dimension must be nonnegative");
    if (x < 0.0) throw std::domain_error("besq_transition: state must be nonnegative");
    if (!(dt > 0.0)) throw std::invalid_argument("besq_transition: dt must be positive");
    if (delta == 0.0 && x == 0.0) return 0.0;  // absorbed
    const std::uint64_t n = rng.next_poisson(x / (2.0 * dt));
    const double shape = 0.5 * delta + static_cast<double>(n);
    return rng.next_gamma(shape, 1.0 / (2.0 * dt));
}

PathGrid besq_path(const BesselLaw& law, std::span<const double> times, RngStream& rng) {
    law.validate();
    if (law.kind != ProcessKind::squared)
        throw std::invalid_argument("besq_path: law must be of squared kind");
    if (law.mu != 0.0) throw std::invalid_argument("besq_path: law must be driftless");
    check_grid(times, /*allow_zero=*/true);
    PathGrid out;
    out.times.assign(times.begin(), times.end());
    out.values.resize(times.size());
    double prev_t = 0.0;
    double state = law.x0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] > prev_t) {
            state = besq_transition(law.delta, state, times[i] - prev_t, rng);
            prev_t = times[i];
        }
        out.values[i] = state;
    }
    return out;
}

PathGrid drifted_from_zero(double delta, double mu, std::span<const double> times, RngStream& rng,
                           ProcessKind kind) {
    if (!(delta > 0.0)) throw std::domain_error("drifted_from_zero: dimension must be positive");
    if (mu < 0.0) throw std::domain_error("drifted_from_zero: drift must be nonnegative");
    check_grid(times, /*allow_zero=*/false);
    const std::size_t k = times.size();
    std::vector<double> recip(k);
    for (std::size_t i = 0; i < k; ++i) recip[i] = 1.0 / times[k - 1 - i];

    // Driftless squared process from mu^2 along the reciprocal grid.
    double prev_t = 0.0;
    double state = mu * mu;
    std::vector<double> z(k);
    for (std::size_t i = 0; i < k; ++i) {
        state = besq_transition(delta, state, recip[i] - prev_t, rng);
        prev_t = recip[i];
        z[i] = state;
    }

    PathGrid out;
    out.times.assign(times.begin(), times.end());
    out.values.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double t = times[i];
        const double squared = t * t * z[k - 1 - i];
        out.values[i] = kind == ProcessKind::squared ? squared : std::sqrt(squared);
    }
    return out;
}

PathGrid gaussian_norm_drifted(int delta, double mu, std::span<const double> times,
                               RngStream& rng) {
    if (delta < 1) throw std::invalid_argument("gaussian_norm_drifted: dimension must be a positive integer");
    if (mu < 0.0) throw std::domain_error("gaussian_norm_drifted: drift must be nonnegative");
    check_grid(times, /*allow_zero=*/false);
    const std::size_t k = times.size();
    std::vector<double> coords(static_cast<std::size_t>(delta), 0.0);
    PathGrid out;
    out.times.assign(times.begin(), times.end());
    out.values.resize(k);
    double prev_t = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double sd = std::sqrt(times[i] - prev_t);
        prev_t = times[i];
        double norm2 = 0.0;
        for (std::size_t j = 0; j < coords.size(); ++j) {
            coords[j] += sd * rng.next_normal();
            const double c = j == 0 ? coords[j] + mu * times[i] : coords[j];
            norm2 += c * c;
        }
        out.values[i] = std::sqrt(norm2);
    }
    return out;
}

double tau0_sample(double delta, double x, RngStream& rng) {
    if (!(delta >= 0.0 && delta < 2.0))
        throw std::domain_error("tau0_sample: 0 is hit only for dimension in [0,2)");
    if (!(x > 0.0)) throw std::domain_error("tau0_sample: start must be positive");
    const double alpha = 1.0 - 0.5 * delta;
    return 0.5 * x * x / rng.next_gamma(alpha, 1.0);
}

double first_zero_sample(double delta, double x, double t, RngStream& rng) {
    if (!(delta > 0.0 && delta < 2.0))
        throw std::domain_error("first_zero_sample: dimension must be in (0,2)");
    if (x < 0.0) throw std::domain_error("first_zero_sample: start must be nonnegative");
    if (t < 0.0) throw std::invalid_argument("first_zero_sample: t must be nonnegative");
    if (t == 0.0) return x > 0.0 ? tau0_sample(delta, x, rng) : 0.0;
    const double z = besq_transition(delta, x * x, t, rng);  // squared state at t
    if (z == 0.0) return t;
    const double alpha = 1.0 - 0.5 * delta;
    return t + 0.5 * z / rng.next_gamma(alpha, 1.0);
}

double last_zero_drifted_sample(double delta, double mu, double t, RngStream& rng) {
    if (!(mu > 0.0)) throw std::domain_error("last_zero_drifted_sample: drift must be positive");
    if (!(t > 0.0)) throw std::invalid_argument("last_zero_drifted_sample: t must be positive");
    return 1.0 / first_zero_sample(delta, mu, 1.0 / t, rng);
}

double bessel_transition_density(double delta, double t, double x, double y) {
    if (!(delta > 0.0))
        throw std::domain_error("bessel_transition_density: dimension must be positive");
    if (!(t > 0.0)) throw std::invalid_argument("bessel_transition_density: t must be positive");
    if (x < 0.0 || !(y > 0.0))
        throw std::domain_error("bessel_transition_density: need x >= 0 and y > 0");
    const double nu = 0.5 * delta - 1.0;
    if (x == 0.0) {
        const double logp = (2.0 * nu + 1.0) * std::log(y) - 0.5 * y * y / t -
                            nu * std::numbers::ln2 - (nu + 1.0) * std::log(t) -
                            specfun::log_gamma(nu + 1.0);
        return std::exp(logp);
    }
    const double logp = std::log(y / t) + nu * (std::log(y) - std::log(x)) -
                        0.5 * (x * x + y * y) / t + specfun::log_bessel_i(nu, x * y / t);
    return std::exp(logp);
}

double drifted_transition_density(double delta, double mu, double t, double x, double y) {
    if (mu < 0.0) throw std::domain_error("drifted_transition_density: drift must be nonnegative");
    const double base = bessel_transition_density(delta, t, x, y);
    if (mu == 0.0) return base;
    const double log_ratio = -0.5 * mu * mu * t + specfun::log_h_drift(delta, mu, y) -
                             specfun::log_h_drift(delta, mu, x);
    return std::exp(log_ratio) * base;
}

}  // namespace besseldrift
