// Absorption probability at the vertex as a finite sum of exponentials: the
// alternating chain (a_k, b_k) on the ellipse {K = 0}, the compensation
// coefficients c_k, boundary marginals, and the two-term affine formula for
// the resonant alpha = 2 configurations.
#pragma once

#include <utility>
#include <vector>

#include "wedge/decoupling.hpp"
#include "wedge/kernel.hpp"

namespace wedge {

struct ExponentialSum {
    struct Term {
        double a = 0.0;
        double b = 0.0;
        double c = 0.0;
    };
    std::vector<Term> terms; // 2*alpha - 1 of them

    double eval(double u, double v) const;
};

// Terms (p + qu*u + qv*v) e^{a u + b v}.
struct AffineExponentialSum {
    struct Term {
        double p = 0.0, qu = 0.0, qv = 0.0;
        double a = 0.0, b = 0.0;
    };
    std::vector<Term> terms;

    double eval(double u, double v) const;
};

// Chain of 2*alpha - 1 points: seeded on the line {k1* = 0}, alternating
// x- and y-moves on the ellipse via the root-product relation of K(., b) and
// K(a, .), ending on {k2* = 0}. Throws ChainDegenerate when a coordinate
// vanishes mid-chain and Numerics when the endpoint misses its closed form.
std::vector<std::pair<double, double>> ab_chain(const QuadrantModel& m, int alpha,
                                                const KernelGeometry& geom,
                                                const Tolerances& tols = default_tolerances());

// Coefficients from the two-term cancellation recursion, rescaled to sum 1.
std::vector<double> c_coefficients(const QuadrantModel& m,
                                   const std::vector<std::pair<double, double>>& chain,
                                   const Tolerances& tols = default_tolerances());

// Convenience: chain + coefficients as one sum.
ExponentialSum exponential_sum(const QuadrantModel& m, int alpha, const KernelGeometry& geom,
                               const Tolerances& tols = default_tolerances());

double absorption_probability(const ExponentialSum& es, double u, double v);

struct Marginal {
    std::vector<double> rates;
    std::vector<double> weights;

    double eval(double t) const;
};

// One-dimensional expansions on the two axes; weights are -1/P' and -1/Q'
// at the nonzero roots.
std::pair<Marginal, Marginal> boundary_marginals(const DecouplingPair& pair,
                                                 const KernelGeometry& geom);

enum class DoubleRootCase { Case1, Case2 }; // theta - 2 delta + beta = -pi, resp. + 2 beta

// The printed two-term affine-exponential solution for alpha = 2 with a
// double root. Throws ResonanceMismatch off the stated resonance and
// DegenerateReflection when r1 r2 = 1.
AffineExponentialSum double_root_alpha2_sum(const QuadrantModel& m, DoubleRootCase which,
                                            const Tolerances& tols = default_tolerances());

double double_root_alpha2(const QuadrantModel& m, DoubleRootCase which, double u, double v,
                          const Tolerances& tols = default_tolerances());

struct ResidualSuite {
    double pde = 0.0;
    double neumann1 = 0.0; // oblique derivative along R^1 at u = 0
    double neumann2 = 0.0; // oblique derivative along R^2 at v = 0
};

// Max residuals over a grid. Exponential sums use exact termwise derivatives;
// affine sums are checked by central finite differences.
ResidualSuite residual_suite(const ExponentialSum& es, const QuadrantModel& m,
                             const std::vector<double>& grid);
ResidualSuite residual_suite(const AffineExponentialSum& as, const QuadrantModel& m,
                             const std::vector<double>& grid);

} // namespace wedge
