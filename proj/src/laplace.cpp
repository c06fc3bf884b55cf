#include "wedge/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wedge/errors.hpp"

namespace wedge {

GluingFunction make_gluing(const KernelGeometry& geom) {
    return {geom.yplus, geom.yminus, kPi / geom.wedge.beta};
}

GluingFunction make_gluing_x(const KernelGeometry& geom) {
    return {geom.xplus, geom.xminus, kPi / geom.wedge.beta};
}

complexd w_eval(const GluingFunction& g, complexd y) {
    const complexd z = (2.0 * y - (g.yplus + g.yminus)) / (g.yplus - g.yminus);
    return std::cos(g.pi_over_beta * std::acos(z));
}

namespace {

// Argument normalized to [0, 2 pi), with values within tol of 2 pi wrapped
// back to 0 so the closed interval test is stable.
double normalized_arg(complexd s, double tol) {
    double a = std::arg(s);
    if (a < 0.0) a += 2.0 * kPi;
    if (a >= 2.0 * kPi - tol) a -= 2.0 * kPi;
    return a;
}

} // namespace

CorrectionS build_S(const KernelGeometry& geom, const DecouplingPair& pair,
                    const Tolerances& tols) {
    const GluingFunction g = make_gluing(geom);
    const double two_beta = 2.0 * geom.wedge.beta;

    CorrectionS S;
    S.pole_mode = pair.pole_mode;
    S.w0 = w_eval(g, complexd(0.0, 0.0)).real();

    complexd s = geom.s1;
    if (!pair.pole_mode) {
        for (int k = 1; k <= pair.d - 2; ++k) {
            s /= geom.q;
            s /= std::abs(s);
            if (normalized_arg(s, tols.angular) <= two_beta + tols.angular) {
                const complexd y = uniform_xy(geom, s).second;
                S.points.push_back(y.real());
            }
        }
    } else {
        for (int k = 0; k <= 1 - pair.d; ++k) {
            if (normalized_arg(s, tols.angular) <= two_beta + tols.angular) {
                const complexd y = uniform_xy(geom, s).second;
                S.points.push_back(y.real());
            }
            s *= geom.q;
            s /= std::abs(s);
        }
    }

    const std::size_t expected = static_cast<std::size_t>(std::abs(pair.r));
    if (S.points.size() != expected)
        throw Error(ErrorCode::Cardinality,
                    "collected " + std::to_string(S.points.size()) + " points, expected " +
                        std::to_string(expected));

    for (double y : S.points) S.w_points.push_back(w_eval(g, complexd(y, 0.0)).real());
    return S;
}

complexd S_eval(const CorrectionS& S, complexd z, const Tolerances& tols) {
    complexd value = 1.0;
    for (std::size_t i = 0; i < S.w_points.size(); ++i) {
        const double wq = S.w_points[i];
        if (!S.pole_mode) {
            value *= (z - wq) / (S.w0 - wq);
        } else {
            if (std::abs(z - wq) < tols.pole_guard * std::max(1.0, std::abs(wq)))
                throw Error(ErrorCode::Pole, "S evaluated at one of its poles");
            value *= (S.w0 - wq) / (z - wq);
        }
    }
    return value;
}

complexd phi1(const GluingFunction& g, const DecouplingPair& pair, const CorrectionS& S,
              complexd y, const Tolerances& tols) {
    const complexd q = eval_Q(pair, y, tols);
    if (std::abs(q) < tols.pole_guard)
        throw Error(ErrorCode::Pole, "phi1 evaluated at a pole");
    return S_eval(S, w_eval(g, y), tols) / q;
}

complexd phi2_rational(const DecouplingPair& pair, complexd x, const Tolerances& tols) {
    const complexd p = eval_P(pair, x, tols);
    if (std::abs(p) < tols.pole_guard)
        throw Error(ErrorCode::Pole, "phi2 evaluated at a pole");
    return 1.0 / p;
}

QuadrantModel swap_axes(const QuadrantModel& m) {
    QuadrantModel s = m;
    std::swap(s.sigma11, s.sigma22);
    std::swap(s.mu1, s.mu2);
    std::swap(s.r1, s.r2);
    return s;
}

complexd BivariatePoly::eval(complexd x, complexd y) const {
    complexd value = 0.0;
    complexd xp = 1.0;
    for (const auto& row : coeff) {
        complexd yp = 1.0;
        for (double c : row) {
            value += c * xp * yp;
            yp *= y;
        }
        xp *= x;
    }
    return value;
}

namespace {

// Gaussian elimination with partial pivoting; A is square, row-major.
std::vector<double> solve_linear(std::vector<std::vector<double>> A, std::vector<double> b) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        if (A[col][col] == 0.0)
            throw Error(ErrorCode::Numerics, "singular system in polynomial fit");
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = A[row][col] / A[col][col];
            for (std::size_t k = col; k < n; ++k) A[row][k] -= f * A[col][k];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= A[i][k] * x[k];
        x[i] = s / A[i][i];
    }
    return x;
}

} // namespace

BivariatePoly build_L(const QuadrantModel& m, const DecouplingPair& pair, const Tolerances& tols) {
    if (pair.pole_mode || pair.r != 0)
        throw Error(ErrorCode::Usage, "L exists for the polynomial pair with r = 0");
    const int deg = pair.d - 1; // total degree of the quotient

    // Monomial basis {x^i y^j : i + j <= deg} fitted by least squares on a
    // positive grid where K cannot vanish.
    std::vector<std::pair<int, int>> basis;
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; j + i <= deg; ++j) basis.emplace_back(i, j);

    const int grid_n = 20;
    std::vector<double> nodes(grid_n);
    for (int i = 0; i < grid_n; ++i) nodes[i] = 0.3 + 3.8 * i / (grid_n - 1);

    const std::size_t nb = basis.size();
    std::vector<std::vector<double>> ata(nb, std::vector<double>(nb, 0.0));
    std::vector<double> atb(nb, 0.0);
    std::vector<double> phi(nb);
    for (double x : nodes) {
        for (double y : nodes) {
            const complexd num = k1(m, x, y) * eval_P(pair, x, tols) +
                                 k2(m, x, y) * eval_Q(pair, y, tols);
            const double target = num.real() / K(m, x, y).real();
            for (std::size_t a = 0; a < nb; ++a)
                phi[a] = std::pow(x, basis[a].first) * std::pow(y, basis[a].second);
            for (std::size_t a = 0; a < nb; ++a) {
                atb[a] += phi[a] * target;
                for (std::size_t b = 0; b < nb; ++b) ata[a][b] += phi[a] * phi[b];
            }
        }
    }
    const std::vector<double> sol = solve_linear(std::move(ata), std::move(atb));

    BivariatePoly L;
    L.coeff.assign(deg + 1, std::vector<double>(deg + 1, 0.0));
    for (std::size_t a = 0; a < nb; ++a) L.coeff[basis[a].first][basis[a].second] = sol[a];

    // The quotient is only accepted if it divides: residual of
    // k1 P + k2 Q - L K over a test grid, relative to the numerator scale.
    double residual = 0.0, scale = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const double x = 0.45 + 3.61 * i / (grid_n - 1);
            const double y = 0.45 + 3.61 * j / (grid_n - 1);
            const complexd num = k1(m, x, y) * eval_P(pair, x, tols) +
                                 k2(m, x, y) * eval_Q(pair, y, tols);
            const complexd diff = num - L.eval(x, y) * K(m, x, y);
            residual = std::max(residual, std::abs(diff));
            scale = std::max(scale, std::abs(num));
        }
    }
    if (residual > tols.fit_residual * std::max(1.0, scale))
        throw Error(ErrorCode::DivisionResidual,
                    "division residual " + std::to_string(residual) + " exceeds tolerance");
    return L;
}

complexd phi_full(const QuadrantModel&, const DecouplingPair& pair, const BivariatePoly& L,
                  complexd x, complexd y, const Tolerances& tols) {
    const complexd p = eval_P(pair, x, tols);
    const complexd q = eval_Q(pair, y, tols);
    if (std::abs(p) < tols.pole_guard || std::abs(q) < tols.pole_guard)
        throw Error(ErrorCode::Pole, "phi evaluated at a pole");
    return L.eval(x, y) / (p * q);
}

double bvp_boundary_check(const KernelGeometry& geom, const DecouplingPair& pair,
                          const CorrectionS& S, double t, const Tolerances& tols) {
    if (!(t > 0.0)) throw Error(ErrorCode::Usage, "hyperbola parameter t must be positive");
    const auto [x, y] = uniform_xy(geom, complexd(t, 0.0));
    const complexd ybar = std::conj(y);
    const QuadrantModel& m = geom.model;
    // x(t) is the common real partner of y and conj(y) on the curve.
    const complexd G = (k1(m, x, y) / k2(m, x, y)) * (k2(m, x, ybar) / k1(m, x, ybar));
    const GluingFunction g = make_gluing(geom);
    const complexd lhs = phi1(g, pair, S, ybar, tols);
    const complexd rhs = G * phi1(g, pair, S, y, tols);
    return std::abs(lhs - rhs);
}

} // namespace wedge
