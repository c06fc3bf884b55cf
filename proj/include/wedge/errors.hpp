// Error taxonomy for the solver pipeline. Each condition that callers may
// want to branch on carries its own code; the CLI maps codes to exit status.
#pragma once

#include <stdexcept>
#include <string>

namespace wedge {

enum class ErrorCode {
    RegimeViolation,      // parameters outside the transient absorbable regime
    MultipleRoot,         // simple-root condition fails for some index j
    DegreeOne,            // decoupling degree d = 1 requested
    Pole,                 // evaluation at (or too close to) a pole
    Cardinality,          // counted zero/pole set has the wrong size
    DivisionResidual,     // polynomial division residual above tolerance
    ResonanceMismatch,    // double-root formula invoked off its resonance
    DegenerateReflection, // r1*r2 == 1 in the double-root formula
    ChainDegenerate,      // division by a vanishing chain coordinate
    ZeroDenominator,      // a boundary form vanishes in the coefficient recursion
    TooManyCensored,      // censored path fraction above 5%
    NotImplemented,       // regime recognized but no closed form provided
    Numerics,             // internal numerical check failed
    Usage,                // malformed CLI input
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

} // namespace wedge
