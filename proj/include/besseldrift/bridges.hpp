#pragma once

#include <functional>
#include <span>

#include "besseldrift/bessel.hpp"

namespace besseldrift {

/// Bessel bridge parameters; the implemented transforms all pin the start
/// at 0, and delta = 0 with both endpoints 0 is the constant-0 law.
struct BridgeLaw {
    double delta = 1.0;
    double from = 0.0;
    double to = 1.0;
    double length = 1.0;

    void validate() const;
};

using PathSampler = std::function<PathGrid(std::span<const double>, RngStream&)>;

/// Process times u = s/(T(T-s)) matching bridge times s in [0,T).
std::vector<double> bridge_to_process_times(std::span<const double> s, double T);

/// Bridge times v = T^2 t/(1+Tt) matching process times t >= 0.
std::vector<double> process_to_bridge_times(std::span<const double> t, double T);

/// Deterministic map B_s = (T-s) X_{s/(T(T-s))}: turns a drifted-process
/// path into a bridge path at the requested bridge times.  The process
/// grid must contain exactly the mapped times (never interpolates);
/// s = 0 yields the pinned value 0 without consuming a process sample.
PathGrid bridge_from_process(const PathGrid& process_path, std::span<const double> s, double T);

/// Inverse map X_t = ((1+Tt)/T) B_{T^2 t/(1+Tt)}; exact round trip with
/// bridge_from_process on shared grids.
PathGrid process_from_bridge(const PathGrid& bridge_path, std::span<const double> t, double T);

/// Radial bridge of dimension delta from 0 to mu over [0,T], sampled
/// exactly by mapping a drifted process through bridge_from_process.
PathGrid sample_drifted_bridge(double delta, double mu, double T, std::span<const double> s,
                               RngStream& rng);

/// 0-dimensional bridge from 0 to mu on [0,1] by rejection: the squared
/// 0-dimensional process from mu^2 is run on the reversed grid and
/// accepted iff it sits exactly on the absorption atom at time 1, then
/// time-reversed.  Acceptance probability is e^{-mu^2/2}.  Returns radial
/// values; attempts (if given) counts rejection trials.
PathGrid bridge0_reject(double mu, std::span<const double> grid, RngStream& rng,
                        std::size_t* attempts = nullptr);

/// Deterministic map (1+t) B_{t/(1+t)} of a 0-dimensional bridge on [0,1];
/// distributed as the exponentially delayed 4-dimensional drifted process.
/// The bridge grid must contain the mapped times t/(1+t).
PathGrid zero_bridge_transform(const PathGrid& bridge, std::span<const double> t);

/// Evaluates the supplied started-at-0 process at (t - E)^+ for an
/// independent E ~ Exp(rate); times at or before the delay get value 0.
PathGrid delayed_start(const PathSampler& sampler, double rate, std::span<const double> times,
                       RngStream& rng);

}  // namespace besseldrift
