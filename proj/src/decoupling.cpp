#include "wedge/decoupling.hpp"

#include <cmath>
#include <string>

#include "wedge/errors.hpp"

namespace wedge {

SimpleRootCheck simple_root_check(const WedgeModel& w, int d, const Tolerances& tols) {
    SimpleRootCheck result;
    int lo, hi;
    if (d >= 2) {
        lo = 1;
        hi = 2 * d - 4;
    } else {
        lo = 2 * d - 1;
        hi = -2;
    }
    for (int j = lo; j <= hi; ++j) {
        const double v = std::abs(std::sin(w.theta - 2.0 * w.delta + j * w.beta));
        if (v < tols.simple_root) {
            result.pass = false;
            result.violating_j = j;
            return result;
        }
        if (v < tols.simple_root_warn && !result.near_warning_j) result.near_warning_j = j;
    }
    return result;
}

namespace {

double real_checked(complexd z, const Tolerances& tols, const char* what) {
    if (std::abs(z.imag()) > tols.realness * std::max(1.0, std::abs(z)))
        throw Error(ErrorCode::Numerics,
                    std::string(what) + " has imaginary residue " + std::to_string(z.imag()));
    return z.real();
}

// A root (or pole) of P or Q landing on the origin collides with the factor
// that every pair carries there; the root-form normalization divides by it.
// This happens on the same measure-zero set as the double roots, just with a
// different resonance, so it gets the same error.
double origin_checked(double value, double span, const Tolerances& tols, const char* what) {
    if (std::abs(value) < tols.simple_root * std::max(1.0, span))
        throw Error(ErrorCode::MultipleRoot, std::string(what) + " collides with the origin");
    return value;
}

} // namespace

DecouplingPair decoupling_pair(const KernelGeometry& geom, int d, int r, const Tolerances& tols) {
    if (d == 1) throw Error(ErrorCode::DegreeOne, "decoupling degree d = 1 does not exist");
    const WedgeModel& w = geom.wedge;
    const double rep_err =
        std::abs(w.alpha() - (d - 1) - r * kPi / w.beta);
    if (rep_err > 1e-6)
        throw Error(ErrorCode::Usage, "(d, r) = (" + std::to_string(d) + ", " + std::to_string(r) +
                                          ") does not represent alpha for this model");

    const auto check = simple_root_check(w, d, tols);
    if (!check.pass)
        throw Error(ErrorCode::MultipleRoot,
                    "double root at j = " + std::to_string(*check.violating_j));

    DecouplingPair pair;
    pair.d = d;
    pair.r = r;
    pair.near_double_root_j = check.near_warning_j;

    const double span = std::max({std::abs(geom.xplus), std::abs(geom.xminus),
                                  std::abs(geom.yplus), std::abs(geom.yminus)});
    if (d >= 2) {
        complexd sp = geom.s2;
        complexd sq = geom.s1;
        for (int k = 0; k <= d - 2; ++k) {
            pair.proots.push_back(origin_checked(
                real_checked(uniform_xy(geom, sp).first, tols, "root of P"), span, tols,
                "root of P"));
            pair.qroots.push_back(origin_checked(
                real_checked(uniform_xy(geom, sq).second, tols, "root of Q"), span, tols,
                "root of Q"));
            sp *= geom.q;
            sq /= geom.q;
            sp /= std::abs(sp);
            sq /= std::abs(sq);
        }
    } else {
        pair.pole_mode = true;
        complexd sp = geom.s2;
        complexd sq = geom.s1;
        for (int k = 1; k <= 1 - d; ++k) {
            sp /= geom.q;
            sq *= geom.q;
            sp /= std::abs(sp);
            sq /= std::abs(sq);
            pair.proots.push_back(origin_checked(
                real_checked(uniform_xy(geom, sp).first, tols, "pole of P"), span, tols,
                "pole of P"));
            pair.qroots.push_back(origin_checked(
                real_checked(uniform_xy(geom, sq).second, tols, "pole of Q"), span, tols,
                "pole of Q"));
        }
    }

    // lambda from the decoupling identity at a generic point of the curve.
    for (double s_real : {2.0, 2.37, 3.1}) {
        const complexd s(s_real, 0.0);
        auto [x, y] = uniform_xy(geom, s);
        const complexd den = k1(geom.model, x, y) * eval_P(pair, x, tols);
        if (std::abs(den) < 1e-10) continue;
        const complexd lam = k2(geom.model, x, y) * eval_Q(pair, y, tols) / den;
        pair.lambda = real_checked(lam, tols, "lambda");
        return pair;
    }
    throw Error(ErrorCode::Numerics, "could not find a generic point to evaluate lambda");
}

complexd eval_P(const DecouplingPair& pair, complexd x, const Tolerances& tols) {
    complexd value = x;
    if (!pair.pole_mode) {
        for (double root : pair.proots) value *= (x - root) / (-root);
        return value;
    }
    for (double pole : pair.proots) {
        if (std::abs(x - pole) < tols.pole_guard * std::max(1.0, std::abs(pole)))
            throw Error(ErrorCode::Pole, "P evaluated at pole " + std::to_string(pole));
        value *= (-pole) / (x - pole);
    }
    return value;
}

complexd eval_Q(const DecouplingPair& pair, complexd y, const Tolerances& tols) {
    complexd value = y;
    if (!pair.pole_mode) {
        for (double root : pair.qroots) value *= (y - root) / (-root);
        return value;
    }
    for (double pole : pair.qroots) {
        if (std::abs(y - pole) < tols.pole_guard * std::max(1.0, std::abs(pole)))
            throw Error(ErrorCode::Pole, "Q evaluated at pole " + std::to_string(pole));
        value *= (-pole) / (y - pole);
    }
    return value;
}

namespace {

double derivative_at_root(const std::vector<double>& roots, std::size_t j) {
    double num = roots[j];
    double den = 1.0;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        den *= -roots[k];
        if (k != j) num *= roots[j] - roots[k];
    }
    return num / den;
}

} // namespace

double eval_P_derivative_at_root(const DecouplingPair& pair, std::size_t root_index) {
    if (pair.pole_mode || root_index >= pair.proots.size())
        throw Error(ErrorCode::Usage, "derivative-at-root requires a polynomial pair root index");
    return derivative_at_root(pair.proots, root_index);
}

double eval_Q_derivative_at_root(const DecouplingPair& pair, std::size_t root_index) {
    if (pair.pole_mode || root_index >= pair.qroots.size())
        throw Error(ErrorCode::Usage, "derivative-at-root requires a polynomial pair root index");
    return derivative_at_root(pair.qroots, root_index);
}

} // namespace wedge
