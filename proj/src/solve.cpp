#include "wedge/solve.hpp"

#include <cmath>

#include "wedge/errors.hpp"

namespace wedge {

std::string to_string(SolutionKind kind) {
    switch (kind) {
        case SolutionKind::ExponentialSum: return "exponential-sum";
        case SolutionKind::AffineExponential: return "affine-exponential";
        case SolutionKind::LaplaceOnly: return "laplace";
        case SolutionKind::NotImplemented: return "not-implemented";
    }
    return "not-implemented";
}

std::optional<double> SolveReport::eval(double u, double v) const {
    if (kind == SolutionKind::ExponentialSum) return sum->eval(u, v);
    if (kind == SolutionKind::AffineExponential) return affine->eval(u, v);
    return std::nullopt;
}

SolveReport solve(const QuadrantModel& m, const Tolerances& tols) {
    SolveReport report;
    report.model = m;
    report.wedge = quadrant_to_wedge(m, tols);
    validate(report.wedge, tols);
    report.alpha = report.wedge.alpha();
    report.cls = classify(report.wedge, tols);
    report.tols = tols;

    const std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0};

    if (report.cls.tag == TransformTag::Rational) {
        const int n = static_cast<int>(std::round(report.alpha));
        const auto check = simple_root_check(report.wedge, n + 1, tols);
        const KernelGeometry geom = special_points(m, tols);
        if (check.pass) {
            report.pair = decoupling_pair(geom, n + 1, 0, tols);
            report.sum = exponential_sum(m, n, geom, tols);
            report.residuals = residual_suite(*report.sum, m, grid);
            report.L = build_L(m, *report.pair, tols);
            report.kind = SolutionKind::ExponentialSum;
            return report;
        }
        report.violating_j = check.violating_j;
        if (n == 2) {
            for (DoubleRootCase which : {DoubleRootCase::Case1, DoubleRootCase::Case2}) {
                try {
                    report.affine = double_root_alpha2_sum(m, which, tols);
                    report.affine_case = which;
                    report.residuals = residual_suite(*report.affine, m, grid);
                    report.kind = SolutionKind::AffineExponential;
                    return report;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::ResonanceMismatch) throw;
                }
            }
        }
        report.kind = SolutionKind::NotImplemented;
        return report;
    }

    if (report.cls.dr) {
        const auto [d, r] = *report.cls.dr;
        const KernelGeometry geom = special_points(m, tols);
        try {
            report.pair = decoupling_pair(geom, d, r, tols);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::MultipleRoot) throw;
            report.violating_j = simple_root_check(report.wedge, d, tols).violating_j;
            report.kind = SolutionKind::NotImplemented;
            return report;
        }
        report.correction = build_S(geom, *report.pair, tols);
        report.kind = SolutionKind::LaplaceOnly;
        return report;
    }

    report.kind = SolutionKind::NotImplemented;
    return report;
}

} // namespace wedge
