#include "besseldrift/scalar_law.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "besseldrift/quadrature.hpp"
#include "besseldrift/specfun.hpp"

namespace besseldrift {

struct ScalarLaw::Node {
    enum class Kind {
        beta,
        exponential,
        gamma,
        inverse_gamma,
        censored_exp,
        product,
        reciprocal,
        shifted_max
    };
    Kind kind;
    double p0 = 0.0;
    double p1 = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

using Node = ScalarLaw::Node;
using Kind = Node::Kind;

struct Atom {
    double location;
    double mass;
};

double cdf_node(const Node& n, double y);

bool has_cdf_node(const Node& n) {
    switch (n.kind) {
        case Kind::beta:
        case Kind::exponential:
        case Kind::gamma:
        case Kind::inverse_gamma:
        case Kind::censored_exp:
            return true;
        case Kind::product:
            return (n.a->kind == Kind::censored_exp && has_cdf_node(*n.b)) ||
                   (n.b->kind == Kind::censored_exp && has_cdf_node(*n.a));
        case Kind::reciprocal:
        case Kind::shifted_max:
            return has_cdf_node(*n.a);
    }
    return false;
}

std::vector<Atom> atoms_node(const Node& n) {
    std::vector<Atom> out;
    switch (n.kind) {
        case Kind::beta:
        case Kind::exponential:
        case Kind::gamma:
        case Kind::inverse_gamma:
            break;
        case Kind::censored_exp:
            out.push_back({n.p0, std::exp(-n.p1 * n.p0)});
            break;
        case Kind::product: {
            const auto la = atoms_node(*n.a);
            const auto lb = atoms_node(*n.b);
            double zero_a = 0.0, zero_b = 0.0;
            for (const auto& at : la)
                if (at.location == 0.0) zero_a = at.mass;
            for (const auto& at : lb)
                if (at.location == 0.0) zero_b = at.mass;
            const double zero_mass = 1.0 - (1.0 - zero_a) * (1.0 - zero_b);
            if (zero_mass > 0.0) out.push_back({0.0, zero_mass});
            for (const auto& xa : la)
                for (const auto& xb : lb)
                    if (xa.location > 0.0 && xb.location > 0.0)
                        out.push_back({xa.location * xb.location, xa.mass * xb.mass});
            break;
        }
        case Kind::reciprocal:
            for (const auto& at : atoms_node(*n.a))
                if (at.location > 0.0) out.push_back({1.0 / at.location, at.mass});
            break;
        case Kind::shifted_max: {
            const double below = has_cdf_node(*n.a) ? cdf_node(*n.a, n.p0) : 0.0;
            if (below > 0.0) out.push_back({n.p0, below});
            for (const auto& at : atoms_node(*n.a))
                if (at.location > n.p0) out.push_back({at.location, at.mass});
            break;
        }
    }
    return out;
}

bool atom_at_zero(const Node& n) {
    for (const auto& at : atoms_node(n))
        if (at.location == 0.0 && at.mass > 0.0) return true;
    return false;
}

double product_cdf(const Node& n, double y) {
    // Orient so that ce is the censored-exponential factor.
    const Node* ce = n.a.get();
    const Node* other = n.b.get();
    if (ce->kind != Kind::censored_exp) std::swap(ce, other);
    if (ce->kind != Kind::censored_exp || !has_cdf_node(*other))
        throw std::logic_error(
            "ScalarLaw::cdf: Product CDF requires a censored-exponential factor");
    const double cap = ce->p0;
    const double rate = ce->p1;
    if (y < 0.0) return 0.0;
    if (cap == 0.0) return 1.0;
    if (y == 0.0) return cdf_node(*other, 0.0);

    auto integrand = [&](double s) {
        return rate * std::exp(-rate * s) * cdf_node(*other, y / s);
    };
    double integral = 0.0;
    if (y < cap) {
        integral = integrate(integrand, 0.0, y, 5e-9) + integrate(integrand, y, cap, 5e-9);
    } else {
        integral = integrate(integrand, 0.0, cap, 5e-9);
    }
    const double value = integral + std::exp(-rate * cap) * cdf_node(*other, y / cap);
    return std::clamp(value, 0.0, 1.0);
}

double cdf_node(const Node& n, double y) {
    switch (n.kind) {
        case Kind::beta:
            if (y <= 0.0) return 0.0;
            if (y >= 1.0) return 1.0;
            return specfun::reg_inc_beta(n.p0, n.p1, y);
        case Kind::exponential:
            return y <= 0.0 ? 0.0 : -std::expm1(-n.p0 * y);
        case Kind::gamma:
            return y <= 0.0 ? 0.0 : specfun::reg_inc_gamma_lower(n.p0, n.p1 * y);
        case Kind::inverse_gamma:
            return y <= 0.0 ? 0.0 : specfun::reg_inc_gamma_upper(n.p0, n.p1 / y);
        case Kind::censored_exp:
            if (y < 0.0) return 0.0;
            if (y >= n.p0) return 1.0;
            return -std::expm1(-n.p1 * y);
        case Kind::product:
            return product_cdf(n, y);
        case Kind::reciprocal: {
            if (y <= 0.0) return 0.0;
            // P(1/X <= y) = P(X >= 1/y) = 1 - F_X((1/y)^-)
            const double v = 1.0 / y;
            double f = cdf_node(*n.a, v);
            for (const auto& at : atoms_node(*n.a))
                if (at.location == v) f -= at.mass;
            return std::clamp(1.0 - f, 0.0, 1.0);
        }
        case Kind::shifted_max:
            return y < n.p0 ? 0.0 : cdf_node(*n.a, y);
    }
    return 0.0;
}

double sample_node(const Node& n, RngStream& rng) {
    switch (n.kind) {
        case Kind::beta:
            return rng.next_beta(n.p0, n.p1);
        case Kind::exponential:
            return rng.next_exponential(n.p0);
        case Kind::gamma:
            return rng.next_gamma(n.p0, n.p1);
        case Kind::inverse_gamma:
            return n.p1 / rng.next_gamma(n.p0, 1.0);
        case Kind::censored_exp:
            return n.p0 == 0.0 ? 0.0 : std::min(n.p0, rng.next_exponential(n.p1));
        case Kind::product:
            return sample_node(*n.a, rng) * sample_node(*n.b, rng);
        case Kind::reciprocal:
            return 1.0 / sample_node(*n.a, rng);
        case Kind::shifted_max:
            return std::max(n.p0, sample_node(*n.a, rng));
    }
    return 0.0;
}

std::string describe_node(const Node& n) {
    std::ostringstream os;
    switch (n.kind) {
        case Kind::beta: os << "Beta(" << n.p0 << "," << n.p1 << ")"; break;
        case Kind::exponential: os << "Exp(" << n.p0 << ")"; break;
        case Kind::gamma: os << "Gamma(" << n.p0 << "," << n.p1 << ")"; break;
        case Kind::inverse_gamma: os << "InvGamma(" << n.p0 << "," << n.p1 << ")"; break;
        case Kind::censored_exp: os << "CensoredExp(" << n.p0 << "," << n.p1 << ")"; break;
        case Kind::product:
            os << "Product(" << describe_node(*n.a) << "," << describe_node(*n.b) << ")";
            break;
        case Kind::reciprocal: os << "Reciprocal(" << describe_node(*n.a) << ")"; break;
        case Kind::shifted_max:
            os << "ShiftedMax(" << n.p0 << "," << describe_node(*n.a) << ")";
            break;
    }
    return os.str();
}

std::shared_ptr<const Node> make_node(Kind kind, double p0, double p1,
                                      std::shared_ptr<const Node> a = nullptr,
                                      std::shared_ptr<const Node> b = nullptr) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->p0 = p0;
    node->p1 = p1;
    node->a = std::move(a);
    node->b = std::move(b);
    return node;
}

}  // namespace

ScalarLaw ScalarLaw::beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("ScalarLaw::beta: shapes must be positive");
    return ScalarLaw(make_node(Kind::beta, a, b));
}

ScalarLaw ScalarLaw::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("ScalarLaw::exponential: rate must be positive");
    return ScalarLaw(make_node(Kind::exponential, rate, 0.0));
}

ScalarLaw ScalarLaw::gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::invalid_argument("ScalarLaw::gamma: parameters must be positive");
    return ScalarLaw(make_node(Kind::gamma, shape, rate));
}

ScalarLaw ScalarLaw::inverse_gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::invalid_argument("ScalarLaw::inverse_gamma: parameters must be positive");
    return ScalarLaw(make_node(Kind::inverse_gamma, shape, rate));
}

ScalarLaw ScalarLaw::censored_exp(double cap, double rate) {
    if (cap < 0.0) throw std::invalid_argument("ScalarLaw::censored_exp: cap must be nonnegative");
    if (!(rate > 0.0))
        throw std::invalid_argument("ScalarLaw::censored_exp: rate must be positive");
    return ScalarLaw(make_node(Kind::censored_exp, cap, rate));
}

ScalarLaw ScalarLaw::product(ScalarLaw lhs, ScalarLaw rhs) {
    return ScalarLaw(make_node(Kind::product, 0.0, 0.0, lhs.node_, rhs.node_));
}

ScalarLaw ScalarLaw::reciprocal(ScalarLaw inner) {
    if (atom_at_zero(*inner.node_))
        throw std::invalid_argument(
            "ScalarLaw::reciprocal: inner law has an atom at 0 (" + inner.describe() + ")");
    return ScalarLaw(make_node(Kind::reciprocal, 0.0, 0.0, inner.node_));
}

ScalarLaw ScalarLaw::shifted_max(double floor, ScalarLaw inner) {
    if (floor < 0.0)
        throw std::invalid_argument("ScalarLaw::shifted_max: floor must be nonnegative");
    return ScalarLaw(make_node(Kind::shifted_max, floor, 0.0, inner.node_));
}

double ScalarLaw::sample(RngStream& rng) const { return sample_node(*node_, rng); }

bool ScalarLaw::has_cdf() const { return has_cdf_node(*node_); }

double ScalarLaw::cdf(double y) const { return cdf_node(*node_, y); }

double ScalarLaw::cdf_left(double y) const {
    double f = cdf_node(*node_, y);
    for (const auto& at : atoms_node(*node_))
        if (at.location == y) f -= at.mass;
    return std::clamp(f, 0.0, 1.0);
}

std::vector<double> ScalarLaw::cdf_jumps() const {
    std::vector<double> out;
    for (const auto& at : atoms_node(*node_))
        if (at.mass > 0.0) out.push_back(at.location);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string ScalarLaw::describe() const { return describe_node(*node_); }

}  // namespace besseldrift
