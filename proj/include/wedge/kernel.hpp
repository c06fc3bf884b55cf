// The kernel K and its zero curve: quadratic branches, ramification points,
// the rational uniformization s -> (x(s), y(s)) and the unit-circle points
// where the boundary forms k1, k2, k1*, k2* factor.
#pragma once

#include <array>
#include <utility>

#include "wedge/model.hpp"
#include "wedge/types.hpp"

namespace wedge {

// Everything derived from one model that the downstream algebra needs.
struct KernelGeometry {
    QuadrantModel model;
    WedgeModel wedge;

    double xplus = 0.0, xminus = 0.0; // ramification points of Y
    double yplus = 0.0, yminus = 0.0; // ramification points of X

    complexd q;    // rotation e^{2 i beta}
    complexd eib;  // e^{i beta}

    // Roots of k1, k2 composed with the uniformization, on the unit circle.
    complexd s0p;  // e^{i(2 beta - theta)}
    complexd s0pp; // e^{-i theta}
    complexd s1;   // e^{i(theta + 2 epsilon)}
    complexd s2;   // e^{i(theta - 2 delta)}

    // Roots of k1*, k2* composed with the uniformization.
    complexd s0star; // 1/s0pp
    complexd s1star; // q/s1
    complexd s2star; // 1/s2

    // Factorization constants, fitted numerically off the unit circle.
    complexd C1, C2, C1star, C2star;
};

// Quadratic form K(x,y) = (sigma11 x^2 + sigma22 y^2 + 2 sigma12 x y)/2
//                         + mu1 x + mu2 y.
complexd K(const QuadrantModel& m, complexd x, complexd y);

// Affine boundary forms appearing in the functional equation.
complexd k1(const QuadrantModel& m, complexd x, complexd y);
complexd k2(const QuadrantModel& m, complexd x, complexd y);

// Linear forms (x,y).R^1 and (x,y).R^2 produced by the oblique derivatives.
complexd k1star(const QuadrantModel& m, complexd x, complexd y);
complexd k2star(const QuadrantModel& m, complexd x, complexd y);

// (xplus, xminus, yplus, yminus): branch points of the two-valued solutions.
std::array<double, 4> branch_points(const QuadrantModel& m);

// Two roots in y of K(x, .) = 0, principal root first; and in x of K(., y).
std::pair<complexd, complexd> Y_branches(const QuadrantModel& m, complexd x);
std::pair<complexd, complexd> X_branches(const QuadrantModel& m, complexd y);

// Rational parameterization of {K = 0}; s != 0.
std::pair<complexd, complexd> uniform_xy(const KernelGeometry& geom, complexd s);

// Full geometry of a model (branch points, unit-circle points, constants).
KernelGeometry special_points(const QuadrantModel& m,
                              const Tolerances& tols = default_tolerances());
KernelGeometry special_points(const WedgeModel& w,
                              const Tolerances& tols = default_tolerances());

// Point y(t) on the hyperbola H = y(R+) for t > 0. The conjugate branch
// point is y(q t).
complexd hyperbola_sample(const KernelGeometry& geom, double t);

} // namespace wedge
