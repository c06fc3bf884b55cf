// End-to-end pipeline: classify the model, build the decoupling pair, and
// dispatch to the closed form the regime admits (plain exponential sum,
// affine-exponential double-root formula, or Laplace-transform-only data).
#pragma once

#include <optional>

#include "wedge/absorption.hpp"
#include "wedge/laplace.hpp"

namespace wedge {

enum class SolutionKind { ExponentialSum, AffineExponential, LaplaceOnly, NotImplemented };

std::string to_string(SolutionKind kind);

struct SolveReport {
    QuadrantModel model;
    WedgeModel wedge;
    double alpha = 0.0;
    TransformClass cls;
    Tolerances tols;

    SolutionKind kind = SolutionKind::NotImplemented;
    std::optional<DecouplingPair> pair;
    std::optional<ExponentialSum> sum;
    std::optional<AffineExponentialSum> affine;
    std::optional<DoubleRootCase> affine_case;
    std::optional<CorrectionS> correction; // LaplaceOnly
    std::optional<BivariatePoly> L;        // integer alpha, simple roots
    std::optional<int> violating_j;        // NotImplemented via a double root
    std::optional<ResidualSuite> residuals;

    // Pointwise absorption probability when the solution kind provides one.
    std::optional<double> eval(double u, double v) const;
};

SolveReport solve(const QuadrantModel& m, const Tolerances& tols = default_tolerances());

} // namespace wedge
