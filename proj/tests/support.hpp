// Shared fixtures and small numeric oracles for the test suites.
#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "wedge/model.hpp"
#include "wedge/types.hpp"

namespace testsupport {

// Sigma = I, mu = (1,1), r1 = r2 = 1: beta = pi/2, alpha = 1.
inline wedge::QuadrantModel instance_a() { return {1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0}; }

// sigma12 = -1/2, mu = (1,1), r1 = r2 = 2: beta = pi/3, alpha = 2.
inline wedge::QuadrantModel instance_b() { return {1.0, -0.5, 1.0, 1.0, 1.0, 2.0, 2.0}; }

// Non-integer alpha with a d >= 2 representation: (d, r) = (5, -1),
// alpha = 4 - pi/1.1.
inline wedge::WedgeModel dalgebraic_wedge() { return {1.1, 0.55, 2.3, 2.1}; }

// Integer alpha = 3 carrying the extra representation (d, r) = (0, 1)
// because pi/beta = 4.
inline wedge::WedgeModel pole_pair_wedge() {
    return {wedge::kPi / 4.0, 0.4, 2.7, 7.0 * wedge::kPi / 4.0 - 2.7};
}

// alpha = 2 with theta - 2 delta + beta = -pi (first resonant case).
inline wedge::WedgeModel double_root_wedge_case1() {
    return {wedge::kPi / 3.0, wedge::kPi / 6.0, 3.0 * wedge::kPi / 4.0, 11.0 * wedge::kPi / 12.0};
}

// alpha = 2 with theta - 2 delta + 2 beta = -pi (second resonant case).
inline wedge::WedgeModel double_root_wedge_case2() {
    const double beta = wedge::kPi / 3.0;
    const double delta = 2.8;
    return {beta, 2.0 * delta - 2.0 * beta - wedge::kPi, delta, 2.0 * beta + wedge::kPi - delta};
}

// alpha = 2 without the r1 = r2 symmetry.
inline wedge::WedgeModel asymmetric_alpha2_wedge() {
    const double beta = wedge::kPi / 3.0;
    return {beta, 0.5, 2.4, 2.0 * beta + wedge::kPi - 2.4};
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 24) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double eps,
            int levels) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double coarse = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (levels <= 0 || std::abs(left + right - coarse) < 15.0 * eps)
            return left + right + (left + right - coarse) / 15.0;
        return rec(lo, mid, flo, flm, fmid, 0.5 * eps, levels - 1) +
               rec(mid, hi, fmid, frm, fhi, 0.5 * eps, levels - 1);
    };
    return rec(a, b, fa, fm, fb, tol, depth);
}

// Random wedge with a prescribed decoupling representation (d, r); the
// closure reports (wedge, d, r). Angles are drawn with margins so the
// generic configuration stays clear of the degenerate resonances.
class WedgeSampler {
  public:
    explicit WedgeSampler(std::uint64_t seed) : rng_(seed) {}

    struct Sample {
        wedge::WedgeModel w;
        int d = 0;
        int r = 0;
    };

    Sample draw_polynomial_side() { return draw(false); } // d >= 2, r in {0, -1}
    Sample draw_pole_side() { return draw(true); }        // d <= 0, r in {1, 2}

  private:
    Sample draw(bool pole_side) {
        for (int attempt = 0; attempt < 4000; ++attempt) {
            const double beta = uniform(0.35, 1.45);
            const int r = pole_side ? (coin() ? 1 : 2) : (coin() ? 0 : -1);
            // ceil/floor bounds for d from delta + epsilon in [pi + beta, 2 pi).
            const double lo_d = 2.0 - r * wedge::kPi / beta;
            const double hi_d = 1.0 + (1.0 - r) * wedge::kPi / beta;
            int dmin = static_cast<int>(std::ceil(lo_d - 1e-9));
            int dmax = static_cast<int>(std::floor(hi_d - 1e-6));
            if (pole_side) {
                dmax = std::min(dmax, 0);
                dmin = std::max(dmin, -8);
            } else {
                dmin = std::max(dmin, 2);
                dmax = std::min(dmax, 9);
            }
            if (dmin > dmax) continue;
            const int d = dmin + static_cast<int>(uniform(0.0, 1.0) * (dmax - dmin + 1));
            const double zeta = (d - 1) * beta + (r + 1) * wedge::kPi;
            const double dlo = std::max(zeta - wedge::kPi, 0.0) + 0.07;
            const double dhi = std::min(wedge::kPi, zeta) - 0.07;
            if (dlo >= dhi) continue;
            wedge::WedgeModel w;
            w.beta = beta;
            w.theta = beta * uniform(0.15, 0.85);
            w.delta = uniform(dlo, dhi);
            w.epsilon = zeta - w.delta;
            if (!(w.delta > 0.0 && w.delta < wedge::kPi)) continue;
            if (!(w.epsilon > 0.0 && w.epsilon < wedge::kPi)) continue;
            if (w.alpha() < 1.0 + 1e-6) continue;
            if (!margins_ok(w, d)) continue;
            return {w, d, r};
        }
        throw std::runtime_error("wedge sampler failed to find a valid configuration");
    }

    // Distance (mod pi) of every resonance combination from zero: double
    // roots and root/pole collisions with the origin.
    bool margins_ok(const wedge::WedgeModel& w, int d) const {
        auto clear = [](double angle) { return std::abs(std::sin(angle)) > 1e-4; };
        if (d >= 2) {
            for (int j = 1; j <= 2 * d - 4; ++j)
                if (!clear(w.theta - 2.0 * w.delta + j * w.beta)) return false;
            for (int k = 0; k <= d - 2; ++k) {
                if (!clear(w.delta - k * w.beta)) return false;
                if (!clear(w.theta - w.delta + k * w.beta)) return false;
                if (!clear(w.epsilon - k * w.beta)) return false;
                if (!clear(w.theta + w.epsilon - (k + 1) * w.beta)) return false;
            }
        } else {
            for (int j = 2 * d - 1; j <= -2; ++j)
                if (!clear(w.theta - 2.0 * w.delta + j * w.beta)) return false;
            for (int k = 1; k <= 1 - d; ++k) {
                if (!clear(w.delta + k * w.beta)) return false;
                if (!clear(w.theta - w.delta - k * w.beta)) return false;
                if (!clear(w.epsilon + k * w.beta)) return false;
                if (!clear(w.theta + w.epsilon + (k - 1) * w.beta)) return false;
            }
        }
        return true;
    }

    double uniform(double a, double b) {
        return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    }
    bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }

    std::mt19937_64 rng_;
};

} // namespace testsupport
