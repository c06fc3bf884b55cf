// Model parameterizations of the reflected Brownian motion: quadrant data
// (covariance, drift, reflection matrix) and wedge data (four angles), with
// the conversions between them and the classification of the Laplace
// transform in the rational/algebraic/D-finite/D-algebraic hierarchy.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "wedge/types.hpp"

namespace wedge {

// Brownian motion in the quadrant with covariance Sigma, drift mu and
// reflection matrix R = [[1, -r2], [-r1, 1]] (columns are the reflection
// directions on the vertical and horizontal edges).
struct QuadrantModel {
    double sigma11 = 1.0;
    double sigma12 = 0.0;
    double sigma22 = 1.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;

    double det_sigma() const { return sigma11 * sigma22 - sigma12 * sigma12; }
};

// Wedge of opening beta, drift angle theta inside the wedge, reflection
// angles delta and epsilon on the two edges. All radians.
struct WedgeModel {
    double beta = 0.0;
    double theta = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;

    double alpha() const { return (delta + epsilon - kPi) / beta; }
};

enum class TransformTag { Rational, Algebraic, DFinite, DAlgebraic, Unclassified };

struct TransformClass {
    TransformTag tag = TransformTag::Unclassified;
    std::optional<std::pair<int, int>> dr; // alpha = (d-1) + r*pi/beta
};

std::string to_string(TransformTag tag);

// Throws Error(RegimeViolation) unless the model sits in the transient
// absorbable regime: Sigma positive-definite, drift interior (theta in
// (0,beta)), alpha >= 1.
void validate(const QuadrantModel& m, const Tolerances& tols = default_tolerances());
void validate(const WedgeModel& w, const Tolerances& tols = default_tolerances());

// Angle extraction: cos(beta) = -sigma12/sqrt(sigma11*sigma22) and the three
// tangent relations for theta, delta, epsilon with branches chosen so each
// angle lands in its admissible interval.
WedgeModel quadrant_to_wedge(const QuadrantModel& m,
                             const Tolerances& tols = default_tolerances());

// Canonical quadrant representative of a wedge: sigma11 = sigma22 = 1,
// sigma12 = -cos(beta), unit drift. Round-trips with quadrant_to_wedge.
QuadrantModel wedge_to_quadrant(const WedgeModel& w,
                                const Tolerances& tols = default_tolerances());

// Linear map sending the wedge of angle beta onto the quadrant; phi(0) = 0.
// Rejects points outside the closed wedge (image coordinate below -1e-12).
std::array<double, 2> phi_map(const QuadrantModel& m, std::array<double, 2> point_in_cone,
                              const Tolerances& tols = default_tolerances());

// Continued-fraction detection of x ~ p/q with q <= max_rational_den.
// Expansion stops once a partial quotient exceeds the denominator cutoff
// (the preceding convergent is then the detected rational) or at max depth
// (no rational found).
std::optional<std::pair<long, long>> detect_rational(double x,
                                                     const Tolerances& tols = default_tolerances());

// Integer pair (d, r) with alpha = (d-1) + r*pi/beta, |r| <= max_r_search,
// d != 1. Integer alpha always yields (alpha+1, 0); otherwise candidates with
// |d| < q are preferred when beta/pi = p/q is rational.
std::optional<std::pair<int, int>> find_dr(double alpha, double beta,
                                           const Tolerances& tols = default_tolerances());

TransformClass classify(const WedgeModel& w, const Tolerances& tols = default_tolerances());

} // namespace wedge
