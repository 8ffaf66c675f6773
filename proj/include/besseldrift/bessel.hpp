#pragma once

#include <span>
#include <vector>

#include "besseldrift/rng.hpp"

namespace besseldrift {

enum class ProcessKind { radial, squared };

/// Parameter triple of a Bessel-type process plus the process kind.
/// Dimension 0 is permitted only without drift.
struct BesselLaw {
    double delta = 1.0;
    double mu = 0.0;
    double x0 = 0.0;
    ProcessKind kind = ProcessKind::radial;

    void validate() const;
};

/// Finite-dimensional path skeleton: strictly increasing nonnegative times
/// with nonnegative values.
struct PathGrid {
    std::vector<double> times;
    std::vector<double> values;
};

/// Exact squared-Bessel transition over dt: draws N ~ Poisson(x/(2 dt)),
/// then Gamma(shape = delta/2 + N, scale = 2 dt).  For delta = 0 the N = 0
/// branch returns exactly 0, which is the absorption atom.
double besq_transition(double delta, double x, double dt, RngStream& rng);

/// Driftless squared-Bessel path by chaining exact transitions from
/// law.x0 across the grid.  Requires law.kind == squared and law.mu == 0.
PathGrid besq_path(const BesselLaw& law, std::span<const double> times, RngStream& rng);

/// Drifted process started at 0, sampled exactly in law via time
/// inversion: the driftless squared process from mu^2 is run at the
/// reversed reciprocal times and mapped back by t^2.  All grid times must
/// be strictly positive (the value at 0 is 0 by continuity).
PathGrid drifted_from_zero(double delta, double mu, std::span<const double> times, RngStream& rng,
                           ProcessKind kind = ProcessKind::radial);

/// Integer-dimension cross-check sampler: the Euclidean norm of delta
/// independent Brownian coordinates with drift vector (mu, 0, ..., 0).
PathGrid gaussian_norm_drifted(int delta, double mu, std::span<const double> times,
                               RngStream& rng);

/// First hitting time of 0 from x > 0 for dimension in [0,2):
/// InverseGamma(1 - delta/2, x^2/2); at delta = 0 this is 1/Exp(x^2/2).
double tau0_sample(double delta, double x, RngStream& rng);

/// First zero after time t for a driftless process of dimension in (0,2)
/// started at x, via the Markov property: exact transition to time t, then
/// an independent hitting time from there.
double first_zero_sample(double delta, double x, double t, RngStream& rng);

/// Last zero before t of the drifted process started at 0, via the
/// duality g_t = 1/d_{1/t} with the driftless process started at mu.
double last_zero_drifted_sample(double delta, double mu, double t, RngStream& rng);

/// Classical driftless Bessel transition density p_t^delta(x, y) in y.
double bessel_transition_density(double delta, double t, double x, double y);

/// Transition density of the drifted process,
/// e^{-mu^2 t/2} h(y)/h(x) p_t^delta(x,y); log-space internals guard
/// against overflow of h.
double drifted_transition_density(double delta, double mu, double t, double x, double y);

}  // namespace besseldrift
