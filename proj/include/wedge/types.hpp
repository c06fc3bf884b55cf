// Shared numeric aliases and the tolerance configuration record.
#pragma once

#include <complex>
#include <numbers>

namespace wedge {

using complexd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Every numerical cutoff used by the pipeline lives here so that a run can
// be reproduced from a report that echoes this record.
struct Tolerances {
    double integer_detect = 1e-9;   // |alpha - n| below this counts as integer
    double angular = 1e-9;          // membership of unit-circle arguments in [0, 2*beta]
    double realness = 1e-9;         // imaginary residue allowed before dropping to real
    double pole_guard = 1e-12;      // evaluation distance to a stored pole/root
    double fit_residual = 1e-8;     // polynomial division residual (relative)
    double chain_match = 1e-9;      // chain endpoint vs closed form
    double simple_root = 1e-9;      // |sin(theta - 2*delta + k*beta)| below this is a double root
    double simple_root_warn = 1e-6; // near-violation band: warn, do not fail
    double round_trip = 1e-12;      // wedge <-> quadrant round trip
    long   max_rational_den = 1000000; // continued-fraction denominator cutoff
    int    max_cf_depth = 32;
    int    max_r_search = 50;       // |r| range scanned for alpha = d-1 + r*pi/beta
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tols{};
    return tols;
}

} // namespace wedge
