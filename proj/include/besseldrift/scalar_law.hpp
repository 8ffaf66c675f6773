#pragma once

#include <memory>
#include <string>
#include <vector>

#include "besseldrift/rng.hpp"

namespace besseldrift {

/// Tagged one-dimensional law with sampling and (where defined) CDF
/// evaluation.  Composite kinds (Product, Reciprocal, ShiftedMax) wrap
/// other laws; all validation happens at construction time.
class ScalarLaw {
public:
    static ScalarLaw beta(double a, double b);
    static ScalarLaw exponential(double rate);
    static ScalarLaw gamma(double shape, double rate);
    static ScalarLaw inverse_gamma(double shape, double rate);
    /// min{cap, Exp(rate)}; carries an atom of mass e^{-rate*cap} at cap.
    static ScalarLaw censored_exp(double cap, double rate);
    static ScalarLaw product(ScalarLaw lhs, ScalarLaw rhs);
    static ScalarLaw reciprocal(ScalarLaw inner);
    /// max{floor, inner draw}.
    static ScalarLaw shifted_max(double floor, ScalarLaw inner);

    double sample(RngStream& rng) const;

    /// True when cdf() is available for this composition.
    bool has_cdf() const;

    /// Right-continuous CDF value.  Product CDFs are computed by adaptive
    /// quadrature over the censored-exponential mixture and therefore
    /// require one censored-exponential factor.
    double cdf(double y) const;

    /// Left limit of the CDF at y.
    double cdf_left(double y) const;

    /// Locations of CDF jumps (atoms), for jump-aware KS testing.
    std::vector<double> cdf_jumps() const;

    std::string describe() const;

    struct Node;

private:
    explicit ScalarLaw(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

}  // namespace besseldrift
