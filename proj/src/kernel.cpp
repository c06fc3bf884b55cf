#include "wedge/kernel.hpp"

#include <cmath>

#include "wedge/errors.hpp"

namespace wedge {

complexd K(const QuadrantModel& m, complexd x, complexd y) {
    return 0.5 * (m.sigma11 * x * x + m.sigma22 * y * y + 2.0 * m.sigma12 * x * y) +
           m.mu1 * x + m.mu2 * y;
}

complexd k1(const QuadrantModel& m, complexd x, complexd y) {
    return 0.5 * m.sigma11 * (x + m.r1 * y) + m.sigma12 * y + m.mu1;
}

complexd k2(const QuadrantModel& m, complexd x, complexd y) {
    return 0.5 * m.sigma22 * (m.r2 * x + y) + m.sigma12 * x + m.mu2;
}

complexd k1star(const QuadrantModel& m, complexd x, complexd y) { return x - m.r1 * y; }

complexd k2star(const QuadrantModel& m, complexd x, complexd y) { return -m.r2 * x + y; }

std::array<double, 4> branch_points(const QuadrantModel& m) {
    const double det = m.det_sigma();
    const double bx = m.mu2 * m.sigma12 - m.mu1 * m.sigma22;
    const double by = m.mu1 * m.sigma12 - m.mu2 * m.sigma11;
    // Positive for every positive-definite covariance, so the curve never
    // degenerates into two lines.
    const double disc_x = bx * bx + det * m.mu2 * m.mu2;
    const double disc_y = by * by + det * m.mu1 * m.mu1;
    const double sx = std::sqrt(disc_x);
    const double sy = std::sqrt(disc_y);
    return {(bx + sx) / det, (bx - sx) / det, (by + sy) / det, (by - sy) / det};
}

std::pair<complexd, complexd> Y_branches(const QuadrantModel& m, complexd x) {
    const complexd b = m.sigma12 * x + m.mu2;
    const complexd disc = b * b - m.sigma22 * (m.sigma11 * x * x + 2.0 * m.mu1 * x);
    const complexd root = std::sqrt(disc);
    return {(-b + root) / m.sigma22, (-b - root) / m.sigma22};
}

std::pair<complexd, complexd> X_branches(const QuadrantModel& m, complexd y) {
    const complexd b = m.sigma12 * y + m.mu1;
    const complexd disc = b * b - m.sigma11 * (m.sigma22 * y * y + 2.0 * m.mu2 * y);
    const complexd root = std::sqrt(disc);
    return {(-b + root) / m.sigma11, (-b - root) / m.sigma11};
}

std::pair<complexd, complexd> uniform_xy(const KernelGeometry& geom, complexd s) {
    if (s == complexd(0.0, 0.0))
        throw Error(ErrorCode::Pole, "uniformization is undefined at s = 0");
    const complexd x = 0.5 * (geom.xplus + geom.xminus) +
                       0.25 * (geom.xplus - geom.xminus) * (s + 1.0 / s);
    const complexd y = 0.5 * (geom.yplus + geom.yminus) +
                       0.25 * (geom.yplus - geom.yminus) * (s / geom.eib + geom.eib / s);
    return {x, y};
}

namespace {

complexd unit(double angle) { return std::polar(1.0, angle); }

// Constant C with f(x(s), y(s)) = C (s - a)(s - b)/s, fitted at one generic
// s off the unit circle. Roots a, b are unit-modulus so s = 2 is safe.
template <typename F>
complexd fit_constant(const KernelGeometry& geom, F&& form, complexd a, complexd b) {
    const complexd s(2.0, 0.0);
    auto [x, y] = uniform_xy(geom, s);
    return form(x, y) * s / ((s - a) * (s - b));
}

} // namespace

KernelGeometry special_points(const QuadrantModel& m, const Tolerances& tols) {
    validate(m, tols);
    KernelGeometry g;
    g.model = m;
    g.wedge = quadrant_to_wedge(m, tols);
    const auto bp = branch_points(m);
    g.xplus = bp[0];
    g.xminus = bp[1];
    g.yplus = bp[2];
    g.yminus = bp[3];

    const double beta = g.wedge.beta;
    const double theta = g.wedge.theta;
    g.q = unit(2.0 * beta);
    g.eib = unit(beta);
    g.s0p = unit(2.0 * beta - theta);
    g.s0pp = unit(-theta);
    g.s1 = unit(theta + 2.0 * g.wedge.epsilon);
    g.s2 = unit(theta - 2.0 * g.wedge.delta);
    // Renormalize after the divisions so repeated multiplication by q stays
    // on the circle.
    auto on_circle = [](complexd z) { return z / std::abs(z); };
    g.s0star = on_circle(1.0 / g.s0pp);
    g.s1star = on_circle(g.q / g.s1);
    g.s2star = on_circle(1.0 / g.s2);

    g.C1 = fit_constant(g, [&](complexd x, complexd y) { return k1(m, x, y); }, g.s0p, g.s1);
    g.C2 = fit_constant(g, [&](complexd x, complexd y) { return k2(m, x, y); }, g.s0pp, g.s2);
    g.C1star =
        fit_constant(g, [&](complexd x, complexd y) { return k1star(m, x, y); }, g.s0star, g.s1star);
    g.C2star =
        fit_constant(g, [&](complexd x, complexd y) { return k2star(m, x, y); }, g.s0star, g.s2star);
    return g;
}

KernelGeometry special_points(const WedgeModel& w, const Tolerances& tols) {
    return special_points(wedge_to_quadrant(w, tols), tols);
}

complexd hyperbola_sample(const KernelGeometry& geom, double t) {
    if (!(t > 0.0)) throw Error(ErrorCode::Usage, "hyperbola parameter t must be positive");
    return uniform_xy(geom, complexd(t, 0.0)).second;
}

} // namespace wedge
