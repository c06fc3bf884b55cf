#include "wedge/mcoracle.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "wedge/errors.hpp"

namespace wedge {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

struct Chol {
    double a11, a21, a22;
};

Chol cholesky(const QuadrantModel& m) {
    const double a11 = std::sqrt(m.sigma11);
    const double a21 = m.sigma12 / a11;
    return {a11, a21, std::sqrt(m.sigma22 - a21 * a21)};
}

int resolve_threads(int requested, long n_paths) {
    int t = requested;
    if (t <= 0) {
        t = static_cast<int>(std::thread::hardware_concurrency());
        if (t <= 0) t = 1;
    }
    if (const char* cap = std::getenv("WEDGE_ABSORB_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1 && c < t) t = c;
    }
    if (static_cast<long>(t) > n_paths) t = static_cast<int>(n_paths);
    return std::max(t, 1);
}

struct Counts {
    long absorbed = 0, escaped = 0, censored = 0;
};

McEstimate finalize(const Counts& counts, long n_paths) {
    McEstimate est;
    est.n_absorbed = counts.absorbed;
    est.n_escaped = counts.escaped;
    est.n_censored = counts.censored;
    const double censored_fraction =
        static_cast<double>(counts.censored) / static_cast<double>(n_paths);
    if (censored_fraction > 0.05)
        throw Error(ErrorCode::TooManyCensored,
                    std::to_string(100.0 * censored_fraction) + "% of paths were censored");
    const long n_eff = n_paths - counts.censored;
    est.p_hat = static_cast<double>(counts.absorbed) / static_cast<double>(n_eff);
    est.std_err = (n_eff <= 1)
                      ? 1.0
                      : std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n_eff));
    est.valid = censored_fraction < 0.01;
    return est;
}

} // namespace

std::uint64_t CounterRng::stream_key(std::uint64_t seed, std::uint64_t path_index) {
    return mix64(seed + kGamma * (path_index + 1));
}

std::uint64_t CounterRng::next_u64() {
    state_ += kGamma;
    return mix64(state_);
}

double CounterRng::next_uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::next_normal() {
    if (has_cache_) {
        has_cache_ = false;
        return cache_;
    }
    double u, v, s;
    do {
        u = 2.0 * next_uniform() - 1.0;
        v = 2.0 * next_uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cache_ = v * f;
    has_cache_ = true;
    return u * f;
}

namespace {

// Alternating oblique projection. Each pass zeroes a violated coordinate by
// adding a multiple of the matching reflection column; the carried deficit is
// scaled by r1 r2 per round trip, so for r1 r2 >= 1 (the absorbable corner)
// the alternation cannot contract and is stopped as soon as the violation
// stops shrinking, leaving the iterate near where the path got stuck.
inline bool project_quadrant(const QuadrantModel& m, double& x, double& y) {
    double deficit = -std::min(x, 0.0) - std::min(y, 0.0);
    if (deficit == 0.0) return true;
    for (int it = 0; it < 10; ++it) {
        if (x < 0.0) {
            y += m.r1 * x; // add (-x) * R^1 = (-x, r1 x)
            x = 0.0;
        }
        if (y < 0.0) {
            x += m.r2 * y; // add (-y) * R^2 = (r2 y, -y)
            y = 0.0;
        }
        if (x >= 0.0 && y >= 0.0) return true;
        const double next = -std::min(x, 0.0) - std::min(y, 0.0);
        if (next >= deficit * (1.0 - 1e-9)) return false;
        deficit = next;
    }
    return false;
}

} // namespace

StepOutcome step(const QuadrantModel& m, std::array<double, 2> z, std::array<double, 2> dW,
                 double dt) {
    const Chol A = cholesky(m);
    double x = z[0] + m.mu1 * dt + A.a11 * dW[0];
    double y = z[1] + m.mu2 * dt + A.a21 * dW[0] + A.a22 * dW[1];
    const bool resolved = project_quadrant(m, x, y);
    return {{x, y}, resolved};
}

PathOutcome run_path(const QuadrantModel& m, std::array<double, 2> start, const SimConfig& cfg,
                     CounterRng& rng) {
    const Chol A = cholesky(m);
    const double escape =
        cfg.escape_radius > 0.0 ? cfg.escape_radius : 50.0 * (1.0 + std::hypot(start[0], start[1]));
    const double eps2 = cfg.eps_abs * cfg.eps_abs;
    const double escape2 = escape * escape;
    const double sqrt_dt = std::sqrt(cfg.dt);
    const double drift_x = m.mu1 * cfg.dt;
    const double drift_y = m.mu2 * cfg.dt;
    const long max_steps = static_cast<long>(std::ceil(cfg.max_time / cfg.dt));

    double x = start[0];
    double y = start[1];
    for (long n = 0;; ++n) {
        const double r2 = x * x + y * y;
        if (r2 <= eps2) return PathOutcome::Absorbed;
        if (r2 >= escape2) return PathOutcome::Escaped;
        if (n >= max_steps) return PathOutcome::Censored;

        const double prev_x = x;
        const double prev_y = y;
        const double g1 = rng.next_normal() * sqrt_dt;
        const double g2 = rng.next_normal() * sqrt_dt;
        x += drift_x + A.a11 * g1;
        y += drift_y + A.a21 * g1 + A.a22 * g2;
        if (x >= 0.0 && y >= 0.0) continue;
        if (!project_quadrant(m, x, y)) {
            // Non-contractive corner step: decide by the path's last valid
            // position (the diverged iterate is an artifact).
            return (prev_x * prev_x + prev_y * prev_y <= eps2) ? PathOutcome::Absorbed
                                                               : PathOutcome::Censored;
        }
    }
}

McEstimate estimate(const QuadrantModel& m, std::array<double, 2> start, const SimConfig& cfg) {
    if (!(cfg.dt > 0.0) || !(cfg.eps_abs > 0.0) || cfg.n_paths < 1)
        throw Error(ErrorCode::Usage, "simulation config requires dt > 0, eps_abs > 0, n >= 1");
    if (cfg.escape_radius > 0.0 && cfg.escape_radius <= cfg.eps_abs)
        throw Error(ErrorCode::Usage, "escape radius must exceed the capture radius");
    validate(m);

    const int n_threads = resolve_threads(cfg.threads, cfg.n_paths);
    std::vector<Counts> partial(n_threads);
    std::vector<std::thread> workers;
    const long block = (cfg.n_paths + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        const long lo = t * block;
        const long hi = std::min(cfg.n_paths, lo + block);
        workers.emplace_back([&, t, lo, hi]() {
            Counts local;
            for (long i = lo; i < hi; ++i) {
                CounterRng rng(CounterRng::stream_key(cfg.seed, static_cast<std::uint64_t>(i)));
                switch (run_path(m, start, cfg, rng)) {
                    case PathOutcome::Absorbed: ++local.absorbed; break;
                    case PathOutcome::Escaped: ++local.escaped; break;
                    case PathOutcome::Censored: ++local.censored; break;
                }
            }
            partial[t] = local;
        });
    }
    for (auto& w : workers) w.join();

    Counts total;
    for (const auto& c : partial) {
        total.absorbed += c.absorbed;
        total.escaped += c.escaped;
        total.censored += c.censored;
    }
    return finalize(total, cfg.n_paths);
}

McEstimate estimate_half_line(double mu, double start, const SimConfig& cfg) {
    if (!(cfg.dt > 0.0) || cfg.n_paths < 1)
        throw Error(ErrorCode::Usage, "simulation config requires dt > 0, n >= 1");
    const double escape =
        cfg.escape_radius > 0.0 ? cfg.escape_radius : 50.0 * (1.0 + std::abs(start));
    const double sqrt_dt = std::sqrt(cfg.dt);
    const double drift = mu * cfg.dt;
    const long max_steps = static_cast<long>(std::ceil(cfg.max_time / cfg.dt));

    const int n_threads = resolve_threads(cfg.threads, cfg.n_paths);
    std::vector<Counts> partial(n_threads);
    std::vector<std::thread> workers;
    const long block = (cfg.n_paths + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        const long lo = t * block;
        const long hi = std::min(cfg.n_paths, lo + block);
        workers.emplace_back([&, t, lo, hi]() {
            Counts local;
            for (long i = lo; i < hi; ++i) {
                CounterRng rng(CounterRng::stream_key(cfg.seed, static_cast<std::uint64_t>(i)));
                double x = start;
                long n = 0;
                for (;; ++n) {
                    if (x <= cfg.eps_abs) {
                        ++local.absorbed;
                        break;
                    }
                    if (x >= escape) {
                        ++local.escaped;
                        break;
                    }
                    if (n >= max_steps) {
                        ++local.censored;
                        break;
                    }
                    x += drift + sqrt_dt * rng.next_normal();
                }
            }
            partial[t] = local;
        });
    }
    for (auto& w : workers) w.join();

    Counts total;
    for (const auto& c : partial) {
        total.absorbed += c.absorbed;
        total.escaped += c.escaped;
        total.censored += c.censored;
    }
    return finalize(total, cfg.n_paths);
}

} // namespace wedge
