// Path-simulation estimate of the absorption probability: Euler steps with
// an oblique projection onto the quadrant standing in for the boundary
// local time, counter-based per-path random streams, deterministic parallel
// fan-out.
#pragma once

#include <array>
#include <cstdint>

#include "wedge/model.hpp"

namespace wedge {

// SplitMix64 stream: each draw hashes an advancing counter, so streams keyed
// by (seed, path index) are independent and reproducible on any thread.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t stream_key) : state_(stream_key) {}

    static std::uint64_t stream_key(std::uint64_t seed, std::uint64_t path_index);

    std::uint64_t next_u64();
    double next_uniform(); // (0, 1]
    double next_normal();  // Marsaglia polar, one value cached

  private:
    std::uint64_t state_;
    double cache_ = 0.0;
    bool has_cache_ = false;
};

struct SimConfig {
    double dt = 1e-3;
    double eps_abs = 0.01;       // vertex-capture radius
    double escape_radius = 0.0;  // 0 = auto: 50 * (1 + |start|)
    double max_time = 1e3;
    long n_paths = 10000;
    std::uint64_t seed = 1;
    int threads = 0;             // 0 = hardware, capped by WEDGE_ABSORB_THREADS
};

struct McEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
    long n_absorbed = 0;
    long n_escaped = 0;
    long n_censored = 0;
    bool valid = false; // censored fraction below 1%
};

enum class PathOutcome { Absorbed, Escaped, Censored };

struct StepOutcome {
    std::array<double, 2> z{};
    bool resolved = true; // false after 10 projection alternations
};

// One Euler increment z + mu dt + A dW (A the Cholesky factor of Sigma)
// followed by the oblique projection: while a coordinate is negative, add
// the multiple of the matching reflection column that zeroes it.
StepOutcome step(const QuadrantModel& m, std::array<double, 2> z, std::array<double, 2> dW,
                 double dt);

PathOutcome run_path(const QuadrantModel& m, std::array<double, 2> start, const SimConfig& cfg,
                     CounterRng& rng);

// Fans paths out over threads; counts reduce associatively so the estimate
// is identical for any worker count. Throws TooManyCensored above 5%.
McEstimate estimate(const QuadrantModel& m, std::array<double, 2> start, const SimConfig& cfg);

// Half-line harness: drift +mu away from the absorbing endpoint at 0.
McEstimate estimate_half_line(double mu, double start, const SimConfig& cfg);

} // namespace wedge
