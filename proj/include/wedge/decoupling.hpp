// Decoupling pair (P, Q): rational functions with k2/k1 = lambda P(x)/Q(y)
// on the curve {K = 0}, normalized so P(0) = Q(0) = 0 and P'(0) = Q'(0) = 1.
#pragma once

#include <optional>
#include <vector>

#include "wedge/kernel.hpp"

namespace wedge {

struct DecouplingPair {
    int d = 0;
    int r = 0;
    // d >= 2: nonzero real roots of P and Q (the origin root is implicit).
    // d <= 0: real poles of P and Q (both still vanish at the origin).
    std::vector<double> proots;
    std::vector<double> qroots;
    bool pole_mode = false; // true for the d <= 0 rational pair
    double lambda = 0.0;
    // Set when the simple-root condition came within the warning band.
    std::optional<int> near_double_root_j;
};

struct SimpleRootCheck {
    bool pass = true;
    std::optional<int> violating_j;    // |sin(theta - 2 delta + j beta)| < simple_root
    std::optional<int> near_warning_j; // within [simple_root, simple_root_warn)
};

// Scans j in {1, ..., 2d-4} for d >= 2 and j in {2d-1, ..., -2} for d <= 0.
SimpleRootCheck simple_root_check(const WedgeModel& w, int d,
                                  const Tolerances& tols = default_tolerances());

// Builds the pair for a valid representation alpha = (d-1) + r*pi/beta.
// Throws DegreeOne for d = 1 and MultipleRoot when the simple-root
// condition fails.
DecouplingPair decoupling_pair(const KernelGeometry& geom, int d, int r,
                               const Tolerances& tols = default_tolerances());

complexd eval_P(const DecouplingPair& pair, complexd x,
                const Tolerances& tols = default_tolerances());
complexd eval_Q(const DecouplingPair& pair, complexd y,
                const Tolerances& tols = default_tolerances());

// d/dx of the root-form polynomial at one of its nonzero roots (d >= 2 only);
// used for the boundary marginal weights.
double eval_P_derivative_at_root(const DecouplingPair& pair, std::size_t root_index);
double eval_Q_derivative_at_root(const DecouplingPair& pair, std::size_t root_index);

} // namespace wedge
