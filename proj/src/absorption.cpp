#include "wedge/absorption.hpp"

#include <cmath>
#include <string>

#include "wedge/errors.hpp"

namespace wedge {

double ExponentialSum::eval(double u, double v) const {
    double f = 0.0;
    for (const auto& t : terms) f += t.c * std::exp(t.a * u + t.b * v);
    return f;
}

double AffineExponentialSum::eval(double u, double v) const {
    double f = 0.0;
    for (const auto& t : terms) f += (t.p + t.qu * u + t.qv * v) * std::exp(t.a * u + t.b * v);
    return f;
}

std::vector<std::pair<double, double>> ab_chain(const QuadrantModel& m, int alpha,
                                                const KernelGeometry& geom,
                                                const Tolerances& tols) {
    if (alpha < 1) throw Error(ErrorCode::RegimeViolation, "chain requires integer alpha >= 1");

    // Seed on {k1* = 0}: b1 = y(s1) in closed form, a1 = r1 b1.
    const double b1 = -2.0 * (m.r1 * m.mu1 + m.mu2) /
                      (m.sigma22 + m.sigma11 * m.r1 * m.r1 + 2.0 * m.sigma12 * m.r1);
    std::vector<std::pair<double, double>> chain;
    chain.emplace_back(m.r1 * b1, b1);

    for (int i = 2; i <= 2 * alpha - 1; ++i) {
        const auto [a, b] = chain.back();
        if (std::abs(a) < tols.pole_guard || std::abs(b) < tols.pole_guard)
            throw Error(ErrorCode::ChainDegenerate,
                        "chain coordinate vanished at index " + std::to_string(i - 1));
        if (i % 2 == 0) {
            // Same a; partner root of K(a, .) = 0 via the product of roots.
            chain.emplace_back(a, (a / b) * (m.sigma11 * a + 2.0 * m.mu1) / m.sigma22);
        } else {
            chain.emplace_back((b / a) * (m.sigma22 * b + 2.0 * m.mu2) / m.sigma11, b);
        }
    }

    // The endpoint must land on {k2* = 0} at its own closed form.
    const double a_end = -2.0 * (m.mu1 + m.r2 * m.mu2) /
                         (m.sigma11 + m.sigma22 * m.r2 * m.r2 + 2.0 * m.sigma12 * m.r2);
    const double b_end = m.r2 * a_end;
    const auto [a_last, b_last] = chain.back();
    const double scale = std::max({1.0, std::abs(a_end), std::abs(b_end)});
    if (std::abs(a_last - a_end) > tols.chain_match * scale ||
        std::abs(b_last - b_end) > tols.chain_match * scale)
        throw Error(ErrorCode::Numerics,
                    "chain endpoint (" + std::to_string(a_last) + ", " + std::to_string(b_last) +
                        ") misses the closed form (" + std::to_string(a_end) + ", " +
                        std::to_string(b_end) + ")");
    (void)geom;
    return chain;
}

std::vector<double> c_coefficients(const QuadrantModel& m,
                                   const std::vector<std::pair<double, double>>& chain,
                                   const Tolerances& tols) {
    std::vector<double> c{1.0};
    for (std::size_t i = 1; i < chain.size(); ++i) {
        const auto [ap, bp] = chain[i - 1];
        const auto [a, b] = chain[i];
        // Even steps cancel in the k2* pairing, odd steps in the k1* pairing;
        // chain indices here are 0-based.
        const double num = (i % 2 == 1) ? k2star(m, ap, bp).real() : k1star(m, ap, bp).real();
        const double den = (i % 2 == 1) ? k2star(m, a, b).real() : k1star(m, a, b).real();
        if (std::abs(den) < tols.pole_guard)
            throw Error(ErrorCode::ZeroDenominator,
                        "boundary form vanishes at chain index " + std::to_string(i + 1));
        c.push_back(-c.back() * num / den);
    }
    double sum = 0.0;
    for (double v : c) sum += v;
    if (std::abs(sum) < tols.pole_guard)
        throw Error(ErrorCode::ZeroDenominator, "coefficient sum vanishes; cannot normalize");
    for (double& v : c) v /= sum;
    return c;
}

ExponentialSum exponential_sum(const QuadrantModel& m, int alpha, const KernelGeometry& geom,
                               const Tolerances& tols) {
    const auto chain = ab_chain(m, alpha, geom, tols);
    const auto c = c_coefficients(m, chain, tols);
    ExponentialSum es;
    for (std::size_t i = 0; i < chain.size(); ++i)
        es.terms.push_back({chain[i].first, chain[i].second, c[i]});
    return es;
}

double absorption_probability(const ExponentialSum& es, double u, double v) {
    return es.eval(u, v);
}

double Marginal::eval(double t) const {
    double f = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i) f += weights[i] * std::exp(rates[i] * t);
    return f;
}

std::pair<Marginal, Marginal> boundary_marginals(const DecouplingPair& pair,
                                                 const KernelGeometry&) {
    if (pair.pole_mode)
        throw Error(ErrorCode::Usage, "marginals require the polynomial pair (integer alpha)");
    Marginal mx, my;
    for (std::size_t i = 0; i < pair.proots.size(); ++i) {
        mx.rates.push_back(pair.proots[i]);
        mx.weights.push_back(-1.0 / eval_P_derivative_at_root(pair, i));
    }
    for (std::size_t j = 0; j < pair.qroots.size(); ++j) {
        my.rates.push_back(pair.qroots[j]);
        my.weights.push_back(-1.0 / eval_Q_derivative_at_root(pair, j));
    }
    return {mx, my};
}

AffineExponentialSum double_root_alpha2_sum(const QuadrantModel& m, DoubleRootCase which,
                                            const Tolerances& tols) {
    const WedgeModel w = quadrant_to_wedge(m, tols);
    const int alpha = static_cast<int>(std::round(w.alpha()));
    if (alpha != 2 || std::abs(w.alpha() - 2.0) > tols.integer_detect)
        throw Error(ErrorCode::ResonanceMismatch, "the affine formula requires alpha = 2");
    const double resonance = (which == DoubleRootCase::Case1)
                                 ? w.theta - 2.0 * w.delta + w.beta + kPi
                                 : w.theta - 2.0 * w.delta + 2.0 * w.beta + kPi;
    if (std::abs(resonance) > tols.integer_detect)
        throw Error(ErrorCode::ResonanceMismatch,
                    "resonance condition violated by " + std::to_string(resonance));
    if (std::abs(m.r1 * m.r2 - 1.0) < tols.pole_guard)
        throw Error(ErrorCode::DegenerateReflection, "r1 r2 = 1 makes the constant c blow up");

    const KernelGeometry geom = special_points(m, tols);
    const double c = 1.0 / (m.r1 * m.r2 - 1.0);
    const double x_s2 = uniform_xy(geom, geom.s2).first.real();
    const double y_s1 = uniform_xy(geom, geom.s1).second.real();

    AffineExponentialSum as;
    if (which == DoubleRootCase::Case1) {
        // y(s1/q) is the lower branch point, so the u-affine factor sits on
        // that exponential where the x-derivative of K vanishes.
        const double y_s1q = uniform_xy(geom, geom.s1 / geom.q).second.real();
        as.terms.push_back({1.0 + c, 0.0, 0.0, x_s2, y_s1});
        as.terms.push_back({-c, -x_s2, 0.0, x_s2, y_s1q});
    } else {
        // Mirror configuration: x(s2 q) is the lower branch point and the
        // v-affine factor has to ride that exponential, where the
        // y-derivative of K vanishes (checked against the generator).
        const double x_s2q = uniform_xy(geom, geom.s2 * geom.q).first.real();
        as.terms.push_back({1.0 + c, 0.0, 0.0, x_s2, y_s1});
        as.terms.push_back({-c, 0.0, -y_s1, x_s2q, y_s1});
    }
    return as;
}

double double_root_alpha2(const QuadrantModel& m, DoubleRootCase which, double u, double v,
                          const Tolerances& tols) {
    return double_root_alpha2_sum(m, which, tols).eval(u, v);
}

ResidualSuite residual_suite(const ExponentialSum& es, const QuadrantModel& m,
                             const std::vector<double>& grid) {
    ResidualSuite res;
    // Termwise: the generator applied to c e^{au+bv} is c K(a,b) e^{au+bv},
    // and the oblique derivatives bring down k1*(a,b), k2*(a,b).
    for (double u : grid) {
        for (double v : grid) {
            double pde = 0.0;
            for (const auto& t : es.terms)
                pde += t.c * K(m, t.a, t.b).real() * std::exp(t.a * u + t.b * v);
            res.pde = std::max(res.pde, std::abs(pde));
        }
    }
    for (double v : grid) {
        double n1 = 0.0;
        for (const auto& t : es.terms) n1 += t.c * k1star(m, t.a, t.b).real() * std::exp(t.b * v);
        res.neumann1 = std::max(res.neumann1, std::abs(n1));
    }
    for (double u : grid) {
        double n2 = 0.0;
        for (const auto& t : es.terms) n2 += t.c * k2star(m, t.a, t.b).real() * std::exp(t.a * u);
        res.neumann2 = std::max(res.neumann2, std::abs(n2));
    }
    return res;
}

ResidualSuite residual_suite(const AffineExponentialSum& as, const QuadrantModel& m,
                             const std::vector<double>& grid) {
    ResidualSuite res;
    const double h = 1e-4;
    auto f = [&](double u, double v) { return as.eval(u, v); };
    for (double u : grid) {
        for (double v : grid) {
            const double fuu = (f(u + h, v) - 2.0 * f(u, v) + f(u - h, v)) / (h * h);
            const double fvv = (f(u, v + h) - 2.0 * f(u, v) + f(u, v - h)) / (h * h);
            const double fuv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) +
                                f(u - h, v - h)) /
                               (4.0 * h * h);
            const double fu = (f(u + h, v) - f(u - h, v)) / (2.0 * h);
            const double fv = (f(u, v + h) - f(u, v - h)) / (2.0 * h);
            const double pde = 0.5 * (m.sigma11 * fuu + m.sigma22 * fvv + 2.0 * m.sigma12 * fuv) +
                               m.mu1 * fu + m.mu2 * fv;
            res.pde = std::max(res.pde, std::abs(pde));
        }
    }
    // The closed form extends analytically across the axes, so centered
    // differences at the boundary are fine.
    for (double v : grid) {
        const double fu = (f(h, v) - f(-h, v)) / (2.0 * h);
        const double fv = (f(0.0, v + h) - f(0.0, v - h)) / (2.0 * h);
        res.neumann1 = std::max(res.neumann1, std::abs(fu - m.r1 * fv));
    }
    for (double u : grid) {
        const double fu = (f(u + h, 0.0) - f(u - h, 0.0)) / (2.0 * h);
        const double fv = (f(u, h) - f(u, -h)) / (2.0 * h);
        res.neumann2 = std::max(res.neumann2, std::abs(-m.r2 * fu + fv));
    }
    return res;
}

} // namespace wedge
