// Laplace transforms of the escape probability: the conformal gluing
// function w, the rational correction S over the zero/pole sets of Q*phi1,
// the transforms phi1/phi2/phi and the bivariate polynomial L with
// L K = k1 P + k2 Q.
#pragma once

#include <vector>

#include "wedge/decoupling.hpp"
#include "wedge/kernel.hpp"

namespace wedge {

// w(y) = cos((pi/beta) arccos((2y - (y+ + y-))/(y+ - y-))), evaluated with
// the principal complex arccos on the whole plane.
struct GluingFunction {
    double yplus = 0.0;
    double yminus = 0.0;
    double pi_over_beta = 0.0;
};

GluingFunction make_gluing(const KernelGeometry& geom);   // y-plane
GluingFunction make_gluing_x(const KernelGeometry& geom); // x-plane (roles swapped)

complexd w_eval(const GluingFunction& g, complexd y);

// Rational correction S built on the points of Z (d >= 2) or P (d <= 0)
// that fall inside the gluing domain; S(w(0)) = 1 by construction.
struct CorrectionS {
    bool pole_mode = false;       // matches the pair: zeros for d >= 2, poles for d <= 0
    std::vector<double> points;   // y-values of the collected set
    std::vector<double> w_points; // w at those values
    double w0 = 1.0;              // w(0)
};

// Collects the set by the angular criterion arg(s) in [0, 2 beta] for the
// unit-circle preimages; throws Cardinality unless the count equals |r|.
CorrectionS build_S(const KernelGeometry& geom, const DecouplingPair& pair,
                    const Tolerances& tols = default_tolerances());

complexd S_eval(const CorrectionS& S, complexd z,
                const Tolerances& tols = default_tolerances());

// phi1(y) = S(w(y)) / Q(y); for integer alpha S is identically 1.
complexd phi1(const GluingFunction& g, const DecouplingPair& pair, const CorrectionS& S,
              complexd y, const Tolerances& tols = default_tolerances());

// phi2(x) = 1/P(x) for integer alpha (the polynomial pair).
complexd phi2_rational(const DecouplingPair& pair, complexd x,
                       const Tolerances& tols = default_tolerances());

// Model with the two quadrant coordinates exchanged; phi2 of a model equals
// phi1 of the swapped model.
QuadrantModel swap_axes(const QuadrantModel& m);

// Dense bivariate polynomial, coeff[i][j] multiplying x^i y^j.
struct BivariatePoly {
    std::vector<std::vector<double>> coeff;

    complexd eval(complexd x, complexd y) const;
    int degree_x() const { return static_cast<int>(coeff.size()) - 1; }
};

// Quotient (k1 P + k2 Q)/K fitted on a deterministic positive grid; requires
// integer alpha (pair with d >= 2, r = 0). Throws DivisionResidual when the
// fit does not divide within tolerance.
BivariatePoly build_L(const QuadrantModel& m, const DecouplingPair& pair,
                      const Tolerances& tols = default_tolerances());

// phi(x, y) = L(x, y)/(P(x) Q(y)).
complexd phi_full(const QuadrantModel& m, const DecouplingPair& pair, const BivariatePoly& L,
                  complexd x, complexd y, const Tolerances& tols = default_tolerances());

// |phi1(conj(y)) - G(y) phi1(y)| at y = y(t) on the hyperbola, where G is the
// boundary factor built from k1, k2 at the common real x-partner of y and
// conj(y).
double bvp_boundary_check(const KernelGeometry& geom, const DecouplingPair& pair,
                          const CorrectionS& S, double t,
                          const Tolerances& tols = default_tolerances());

} // namespace wedge
