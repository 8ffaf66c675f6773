#include "besseldrift/bridges.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace besseldrift {

namespace {

bool times_match(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Index of t in grid (fp tolerance); throws if absent.
std::size_t find_time(const std::vector<double>& grid, double t, const char* what) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), t - 1e-9);
    for (auto j = it; j != grid.end() && *j <= t + 1e-9; ++j)
        if (times_match(*j, t)) return static_cast<std::size_t>(j - grid.begin());
    throw std::invalid_argument(std::string(what) + ": grid does not contain a mapped time");
}

void check_bridge_times(std::span<const double> s, double T) {
    if (s.empty()) throw std::invalid_argument("bridge grid must be nonempty");
    double prev = -1.0;
    for (const double v : s) {
        if (v < 0.0) throw std::invalid_argument("bridge times must be nonnegative");
        if (v >= T) throw std::invalid_argument("bridge times must lie strictly before T");
        if (v <= prev) throw std::invalid_argument("bridge times must be strictly increasing");
        prev = v;
    }
}

}  // namespace

void BridgeLaw::validate() const {
    if (delta < 0.0) throw std::domain_error("BridgeLaw: dimension must be nonnegative");
    if (from < 0.0 || to < 0.0) throw std::domain_error("BridgeLaw: endpoints must be nonnegative");
    if (!(length > 0.0)) throw std::domain_error("BridgeLaw: length must be positive");
    if (from != 0.0)
        throw std::domain_error("BridgeLaw: the implemented transforms require from = 0");
}

std::vector<double> bridge_to_process_times(std::span<const double> s, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("bridge_to_process_times: T must be positive");
    check_bridge_times(s, T);
    std::vector<double> u;
    u.reserve(s.size());
    for (const double v : s) u.push_back(v / (T * (T - v)));
    return u;
}

std::vector<double> process_to_bridge_times(std::span<const double> t, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("process_to_bridge_times: T must be positive");
    std::vector<double> v;
    v.reserve(t.size());
    double prev = -1.0;
    for (const double x : t) {
        if (x < 0.0) throw std::invalid_argument("process times must be nonnegative");
        if (x <= prev) throw std::invalid_argument("process times must be strictly increasing");
        prev = x;
        v.push_back(T * T * x / (1.0 + T * x));
    }
    return v;
}

PathGrid bridge_from_process(const PathGrid& process_path, std::span<const double> s, double T) {
    const auto mapped = bridge_to_process_times(s, T);
    PathGrid out;
    out.times.assign(s.begin(), s.end());
    out.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0.0) {
            out.values[i] = 0.0;  // pinned start
            continue;
        }
        const std::size_t j = find_time(process_path.times, mapped[i], "bridge_from_process");
        out.values[i] = (T - s[i]) * process_path.values[j];
    }
    return out;
}

PathGrid process_from_bridge(const PathGrid& bridge_path, std::span<const double> t, double T) {
    const auto mapped = process_to_bridge_times(t, T);
    PathGrid out;
    out.times.assign(t.begin(), t.end());
    out.values.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == 0.0) {
            out.values[i] = 0.0;
            continue;
        }
        const std::size_t j = find_time(bridge_path.times, mapped[i], "process_from_bridge");
        out.values[i] = (1.0 + T * t[i]) / T * bridge_path.values[j];
    }
    return out;
}

PathGrid sample_drifted_bridge(double delta, double mu, double T, std::span<const double> s,
                               RngStream& rng) {
    const auto mapped = bridge_to_process_times(s, T);
    std::vector<double> positive;
    positive.reserve(mapped.size());
    for (const double u : mapped)
        if (u > 0.0) positive.push_back(u);
    PathGrid process;
    if (!positive.empty()) process = drifted_from_zero(delta, mu, positive, rng);
    process.times = std::move(positive);
    return bridge_from_process(process, s, T);
}

PathGrid bridge0_reject(double mu, std::span<const double> grid, RngStream& rng,
                        std::size_t* attempts) {
    if (!(mu > 0.0)) throw std::domain_error("bridge0_reject: endpoint must be positive");
    if (grid.empty()) throw std::invalid_argument("bridge0_reject: grid must be nonempty");
    double prev = -1.0;
    for (const double s : grid) {
        if (s < 0.0 || s > 1.0) throw std::invalid_argument("bridge0_reject: grid must lie in [0,1]");
        if (s <= prev) throw std::invalid_argument("bridge0_reject: grid must be strictly increasing");
        prev = s;
    }

    // Reversed times of the absorbed path; the terminal time 1 carries the
    // absorption atom that drives acceptance.
    std::vector<double> reversed;
    reversed.reserve(grid.size() + 1);
    for (auto it = grid.rbegin(); it != grid.rend(); ++it)
        if (*it < 1.0) reversed.push_back(1.0 - *it);
    if (reversed.empty() || reversed.back() < 1.0) reversed.push_back(1.0);

    const BesselLaw law{0.0, 0.0, mu * mu, ProcessKind::squared};
    PathGrid path;
    std::size_t tries = 0;
    for (;;) {
        ++tries;
        path = besq_path(law, reversed, rng);
        if (path.values.back() == 0.0) break;
    }
    if (attempts != nullptr) *attempts = tries;

    PathGrid out;
    out.times.assign(grid.begin(), grid.end());
    out.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = grid[i];
        if (s == 1.0) {
            out.values[i] = mu;
            continue;
        }
        const std::size_t j = find_time(path.times, 1.0 - s, "bridge0_reject");
        out.values[i] = std::sqrt(path.values[j]);
    }
    return out;
}

PathGrid zero_bridge_transform(const PathGrid& bridge, std::span<const double> t) {
    PathGrid out;
    out.times.assign(t.begin(), t.end());
    out.values.resize(t.size());
    double prev = -1.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 0.0) throw std::invalid_argument("zero_bridge_transform: times must be nonnegative");
        if (t[i] <= prev)
            throw std::invalid_argument("zero_bridge_transform: times must be strictly increasing");
        prev = t[i];
        if (t[i] == 0.0) {
            out.values[i] = 0.0;
            continue;
        }
        const double w = t[i] / (1.0 + t[i]);
        const std::size_t j = find_time(bridge.times, w, "zero_bridge_transform");
        out.values[i] = (1.0 + t[i]) * bridge.values[j];
    }
    return out;
}

PathGrid delayed_start(const PathSampler& sampler, double rate, std::span<const double> times,
                       RngStream& rng) {
    if (!(rate > 0.0)) throw std::invalid_argument("delayed_start: rate must be positive");
    if (times.empty()) throw std::invalid_argument("delayed_start: grid must be nonempty");
    const double e = rng.next_exponential(rate);
    std::vector<double> shifted;
    shifted.reserve(times.size());
    double prev = -1.0;
    for (const double t : times) {
        if (t < 0.0) throw std::invalid_argument("delayed_start: times must be nonnegative");
        if (t <= prev) throw std::invalid_argument("delayed_start: times must be strictly increasing");
        prev = t;
        if (t > e) shifted.push_back(t - e);
    }
    PathGrid inner;
    if (!shifted.empty()) inner = sampler(shifted, rng);
    PathGrid out;
    out.times.assign(times.begin(), times.end());
    out.values.assign(times.size(), 0.0);
    std::size_t j = 0;
    for (std::size_t i = 0; i < times.size(); ++i)
        if (times[i] > e) out.values[i] = inner.values[j++];
    return out;
}

}  // namespace besseldrift
