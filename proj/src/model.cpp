#include "wedge/model.hpp"

#include <cmath>
#include <vector>

#include "wedge/errors.hpp"

namespace wedge {

std::string to_string(TransformTag tag) {
    switch (tag) {
        case TransformTag::Rational: return "rational";
        case TransformTag::Algebraic: return "algebraic";
        case TransformTag::DFinite: return "d-finite";
        case TransformTag::DAlgebraic: return "d-algebraic";
        case TransformTag::Unclassified: return "unclassified";
    }
    return "unclassified";
}

void validate(const WedgeModel& w, const Tolerances&) {
    if (!(w.beta > 0.0 && w.beta < kPi))
        throw Error(ErrorCode::RegimeViolation, "beta must lie in (0, pi)");
    if (!(w.delta > 0.0 && w.delta < kPi))
        throw Error(ErrorCode::RegimeViolation, "delta must lie in (0, pi)");
    if (!(w.epsilon > 0.0 && w.epsilon < kPi))
        throw Error(ErrorCode::RegimeViolation, "epsilon must lie in (0, pi)");
    if (!(w.theta > 0.0 && w.theta < w.beta))
        throw Error(ErrorCode::RegimeViolation, "drift angle theta must lie in (0, beta)");
    if (!(w.alpha() >= 1.0))
        throw Error(ErrorCode::RegimeViolation,
                    "alpha = (delta+epsilon-pi)/beta = " + std::to_string(w.alpha()) +
                        " is below 1 (recurrent regime not supported)");
}

void validate(const QuadrantModel& m, const Tolerances& tols) {
    if (!(m.sigma11 > 0.0 && m.sigma22 > 0.0 && m.det_sigma() > 0.0))
        throw Error(ErrorCode::RegimeViolation, "covariance matrix must be positive-definite");
    validate(quadrant_to_wedge(m, tols), tols);
}

WedgeModel quadrant_to_wedge(const QuadrantModel& m, const Tolerances&) {
    if (!(m.sigma11 > 0.0 && m.sigma22 > 0.0 && m.det_sigma() > 0.0))
        throw Error(ErrorCode::RegimeViolation, "covariance matrix must be positive-definite");
    const double sdet = std::sqrt(m.det_sigma());
    WedgeModel w;
    w.beta = std::acos(-m.sigma12 / std::sqrt(m.sigma11 * m.sigma22));
    // theta in (0, pi): numerator mu2*sqrt(det) keeps sin(theta) positive for
    // interior drift; atan2 picks the branch.
    w.theta = std::atan2(m.mu2 * sdet, m.sigma22 * m.mu1 - m.sigma12 * m.mu2);
    // delta, epsilon in (0, pi) with tan as specified: sin > 0 branch.
    w.delta = std::atan2(sdet, -(m.r2 * m.sigma22 + m.sigma12));
    w.epsilon = std::atan2(sdet, -(m.sigma11 * m.r1 + m.sigma12));
    return w;
}

QuadrantModel wedge_to_quadrant(const WedgeModel& w, const Tolerances& tols) {
    validate(w, tols);
    QuadrantModel m;
    m.sigma11 = 1.0;
    m.sigma22 = 1.0;
    m.sigma12 = -std::cos(w.beta);
    // Unit drift solving the tangent relation for theta.
    const double d1 = std::sin(w.beta - w.theta);
    const double d2 = std::sin(w.theta);
    const double norm = std::hypot(d1, d2);
    m.mu1 = d1 / norm;
    m.mu2 = d2 / norm;
    m.r1 = std::sin(w.epsilon - w.beta) / std::sin(w.epsilon);
    m.r2 = std::sin(w.delta - w.beta) / std::sin(w.delta);
    return m;
}

std::array<double, 2> phi_map(const QuadrantModel& m, std::array<double, 2> p,
                              const Tolerances& tols) {
    const double beta = std::acos(-m.sigma12 / std::sqrt(m.sigma11 * m.sigma22));
    const double s11 = std::sqrt(m.sigma11);
    const double s22 = std::sqrt(m.sigma22);
    std::array<double, 2> image{s11 * (std::sin(beta) * p[0] - std::cos(beta) * p[1]),
                                s22 * p[1]};
    const double scale = std::max(1.0, std::hypot(p[0], p[1]));
    if (image[0] < -tols.pole_guard * scale || image[1] < -tols.pole_guard * scale)
        throw Error(ErrorCode::RegimeViolation, "point lies outside the wedge of angle beta");
    return image;
}

std::optional<std::pair<long, long>> detect_rational(double x, const Tolerances& tols) {
    if (!std::isfinite(x)) return std::nullopt;
    // Convergents p/q of the continued fraction of x. A partial quotient
    // beyond the denominator cutoff means the previous convergent already
    // matches x to far better than float accuracy: accept it. Running out of
    // depth with only small quotients means x is numerically irrational.
    long p_prev = 1, q_prev = 0;
    long p_cur = static_cast<long>(std::floor(x));
    long q_cur = 1;
    double t = x - std::floor(x);
    for (int depth = 0; depth < tols.max_cf_depth; ++depth) {
        if (t < 1.0 / static_cast<double>(tols.max_rational_den)) {
            if (std::abs(q_cur) <= tols.max_rational_den)
                return std::make_pair(p_cur, q_cur);
            return std::nullopt;
        }
        t = 1.0 / t;
        const double a_f = std::floor(t);
        if (a_f > static_cast<double>(tols.max_rational_den)) {
            if (std::abs(q_cur) <= tols.max_rational_den)
                return std::make_pair(p_cur, q_cur);
            return std::nullopt;
        }
        const long a = static_cast<long>(a_f);
        const long p_next = a * p_cur + p_prev;
        const long q_next = a * q_cur + q_prev;
        if (q_next > tols.max_rational_den) return std::nullopt;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        t -= a_f;
    }
    return std::nullopt;
}

namespace {

// Nearest integer if within tol, else nothing.
std::optional<long> near_integer(double x, double tol) {
    const double n = std::round(x);
    if (std::abs(x - n) < tol) return static_cast<long>(n);
    return std::nullopt;
}

} // namespace

std::optional<std::pair<int, int>> find_dr(double alpha, double beta, const Tolerances& tols) {
    const double pi_over_beta = kPi / beta;

    // Integer alpha: the polynomial representation (d, r) = (alpha+1, 0).
    if (auto n = near_integer(alpha, tols.integer_detect); n && *n >= 1)
        return std::make_pair(static_cast<int>(*n) + 1, 0);

    const auto pq = detect_rational(beta / kPi, tols);
    std::optional<std::pair<int, int>> first;
    for (int abs_r = 0; abs_r <= tols.max_r_search; ++abs_r) {
        for (int sign : {+1, -1}) {
            const int r = sign * abs_r;
            if (abs_r == 0 && sign < 0) continue;
            const double d_real = alpha + 1.0 - r * pi_over_beta;
            const auto d = near_integer(d_real, tols.integer_detect);
            if (!d || *d == 1) continue;
            if (pq && std::abs(*d) < pq->second)
                return std::make_pair(static_cast<int>(*d), r);
            if (!first) first = std::make_pair(static_cast<int>(*d), r);
            if (!pq && first) return first; // irrational beta/pi: representation unique
        }
    }
    return first;
}

TransformClass classify(const WedgeModel& w, const Tolerances& tols) {
    validate(w, tols);
    const double alpha = w.alpha();
    TransformClass result;
    result.dr = find_dr(alpha, w.beta, tols);

    if (auto n = near_integer(alpha, tols.integer_detect); n && *n >= 1) {
        result.tag = TransformTag::Rational;
        return result;
    }
    if (!result.dr) {
        result.tag = TransformTag::Unclassified;
        return result;
    }
    if (detect_rational(w.beta / kPi, tols)) {
        result.tag = TransformTag::Algebraic;
        return result;
    }
    // D-finite requires a representation with d >= 2, i.e. alpha - r*pi/beta
    // equal to an integer >= 1 for some r.
    const double pi_over_beta = kPi / w.beta;
    for (int r = -tols.max_r_search; r <= tols.max_r_search; ++r) {
        if (auto n = near_integer(alpha - r * pi_over_beta, tols.integer_detect); n && *n >= 1) {
            result.tag = TransformTag::DFinite;
            return result;
        }
    }
    result.tag = TransformTag::DAlgebraic;
    return result;
}

} // namespace wedge
