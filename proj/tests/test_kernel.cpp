#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wedge/kernel.hpp"

using namespace wedge;
using testsupport::instance_a;
using testsupport::instance_b;

namespace {

complexd random_s(std::mt19937_64& rng, double lo = 0.2, double hi = 5.0) {
    std::uniform_real_distribution<double> mod(lo, hi);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    return std::polar(mod(rng), ang(rng));
}

} // namespace

TEST_SUITE_BEGIN("kernel");

TEST_CASE("kernel values at pinned points") {
    CHECK(std::abs(K(instance_a(), 0.0, 0.0)) == 0.0);
    CHECK(std::abs(K(instance_a(), -2.0, -2.0)) < 1e-14);
    CHECK(std::abs(K(instance_b(), -4.0, -2.0)) < 1e-14);
}

TEST_CASE("boundary forms at pinned points") {
    CHECK(std::abs(k1star(instance_a(), -2.0, -2.0)) == 0.0);
    CHECK(std::abs(k2star(instance_b(), -2.0, -4.0)) == 0.0);
    CHECK(k2star(instance_b(), -4.0, -2.0).real() == doctest::Approx(6.0));
    CHECK(k2star(instance_b(), -4.0, -4.0).real() == doctest::Approx(4.0));
}

TEST_CASE("branch points") {
    const auto a = branch_points(instance_a());
    CHECK(a[0] == doctest::Approx(-1.0 + std::sqrt(2.0)).epsilon(1e-13));
    CHECK(a[1] == doctest::Approx(-1.0 - std::sqrt(2.0)).epsilon(1e-13));
    CHECK(a[2] == doctest::Approx(a[0]).epsilon(1e-13)); // symmetric model
    CHECK(a[3] == doctest::Approx(a[1]).epsilon(1e-13));

    const auto b = branch_points(instance_b());
    CHECK(b[0] == doctest::Approx((-1.5 + std::sqrt(3.0)) / 0.75).epsilon(1e-13));
    CHECK(b[1] == doctest::Approx((-1.5 - std::sqrt(3.0)) / 0.75).epsilon(1e-13));

    // The two y-solutions collide at a branch point and still lie on the curve.
    for (const QuadrantModel& m : {instance_a(), instance_b()}) {
        const auto bp = branch_points(m);
        const auto [yp, ym] = Y_branches(m, bp[0]);
        CHECK(std::abs(yp - ym) < 1e-6);
        CHECK(std::abs(K(m, bp[0], yp)) < 1e-10);
    }
}

TEST_CASE("quadratic branches satisfy the root relations") {
    std::mt19937_64 rng(101);
    const QuadrantModel m = instance_b();
    for (int i = 0; i < 100; ++i) {
        const complexd x = random_s(rng, 0.1, 4.0);
        const auto [yp, ym] = Y_branches(m, x);
        const complexd sum_expected = -2.0 * (m.sigma12 * x + m.mu2) / m.sigma22;
        const complexd prod_expected = (m.sigma11 * x * x + 2.0 * m.mu1 * x) / m.sigma22;
        CHECK(std::abs(yp + ym - sum_expected) < 1e-9 * (1.0 + std::abs(sum_expected)));
        CHECK(std::abs(yp * ym - prod_expected) < 1e-9 * (1.0 + std::abs(prod_expected)));
        CHECK(std::abs(K(m, x, yp)) < 1e-10 * (1.0 + std::abs(x) * std::abs(x)));
        const auto [xp, xm] = X_branches(m, yp);
        CHECK(std::min(std::abs(xp - x), std::abs(xm - x)) < 1e-8 * (1.0 + std::abs(x)));
    }

    const auto [y0p, y0m] = Y_branches(instance_a(), 0.0);
    CHECK(std::abs(y0p) < 1e-14);
    CHECK(std::abs(y0m + 2.0) < 1e-14);
}

TEST_CASE("uniformization lands on the curve and has the two invariances") {
    std::mt19937_64 rng(202);
    for (const QuadrantModel& m : {instance_a(), instance_b()}) {
        const KernelGeometry g = special_points(m);
        for (int i = 0; i < 1000; ++i) {
            const complexd s = random_s(rng);
            const auto [x, y] = uniform_xy(g, s);
            const double scale = 1.0 + std::norm(x) + std::norm(y);
            CHECK(std::abs(K(m, x, y)) < 1e-9 * scale);
        }
        for (int i = 0; i < 100; ++i) {
            const complexd s = random_s(rng);
            const auto [x1, y1] = uniform_xy(g, s);
            CHECK(std::abs(uniform_xy(g, 1.0 / s).first - x1) < 1e-9 * (1.0 + std::abs(x1)));
            CHECK(std::abs(uniform_xy(g, g.q / s).second - y1) < 1e-9 * (1.0 + std::abs(y1)));
        }
    }
}

TEST_CASE("uniformization values used by the closed forms") {
    const KernelGeometry ga = special_points(instance_a());
    CHECK(uniform_xy(ga, ga.s1).second.real() == doctest::Approx(-2.0).epsilon(1e-12));

    const KernelGeometry gb = special_points(instance_b());
    CHECK(uniform_xy(gb, gb.s2).first.real() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(uniform_xy(gb, gb.s2 * gb.q).first.real() == doctest::Approx(-4.0).epsilon(1e-12));
}

TEST_CASE("special points of the right-angle instance") {
    const KernelGeometry g = special_points(instance_a());
    CHECK(std::abs(g.q - complexd(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(g.s1 - std::polar(1.0, 7.0 * kPi / 4.0)) < 1e-12);
    CHECK(std::abs(g.s2 - std::polar(1.0, 3.0 * kPi / 4.0)) < 1e-12);
    CHECK(std::abs(g.s1 - g.q * g.s2) < 1e-12); // s1 = q^alpha s2 with alpha = 1
}

TEST_CASE("s0' = q s0'' for every accepted model") {
    for (const QuadrantModel& m :
         {instance_a(), instance_b(), wedge_to_quadrant(testsupport::dalgebraic_wedge())}) {
        const KernelGeometry g = special_points(m);
        CHECK(std::abs(g.s0p - g.q * g.s0pp) < 1e-12);
        CHECK(std::abs(std::abs(g.q) - 1.0) < 1e-12);
        for (complexd s : {g.s0p, g.s0pp, g.s1, g.s2, g.s0star, g.s1star, g.s2star})
            CHECK(std::abs(std::abs(s) - 1.0) < 1e-12);
    }
}

TEST_CASE("k1* composed with the uniformization vanishes at its stars") {
    const QuadrantModel m = instance_a();
    const KernelGeometry g = special_points(m);
    for (complexd s : {g.s0star, g.s1star}) {
        const auto [x, y] = uniform_xy(g, s);
        CHECK(std::abs(k1star(m, x, y)) < 1e-10);
    }
    for (complexd s : {g.s0star, g.s2star}) {
        const auto [x, y] = uniform_xy(g, s);
        CHECK(std::abs(k2star(m, x, y)) < 1e-10);
    }
}

TEST_CASE("factorization constants") {
    std::mt19937_64 rng(303);
    for (const QuadrantModel& m : {instance_a(), instance_b()}) {
        const KernelGeometry g = special_points(m);
        for (int i = 0; i < 100; ++i) {
            const complexd s = random_s(rng);
            const auto [x, y] = uniform_xy(g, s);
            const complexd c1 = k1(m, x, y) * s / ((s - g.s0p) * (s - g.s1));
            const complexd c2 = k2(m, x, y) * s / ((s - g.s0pp) * (s - g.s2));
            const complexd c1s = k1star(m, x, y) * s / ((s - g.s0star) * (s - g.s1star));
            const complexd c2s = k2star(m, x, y) * s / ((s - g.s0star) * (s - g.s2star));
            CHECK(std::abs(c1 - g.C1) < 1e-8 * std::abs(g.C1));
            CHECK(std::abs(c2 - g.C2) < 1e-8 * std::abs(g.C2));
            CHECK(std::abs(c1s - g.C1star) < 1e-8 * std::abs(g.C1star));
            CHECK(std::abs(c2s - g.C2star) < 1e-8 * std::abs(g.C2star));
        }
    }
}

TEST_CASE("conjugation relations between the k-forms") {
    std::mt19937_64 rng(404);
    for (const QuadrantModel& m : {instance_a(), instance_b()}) {
        const KernelGeometry g = special_points(m);
        for (int i = 0; i < 100; ++i) {
            const complexd s = random_s(rng);
            const auto [x, y] = uniform_xy(g, s);
            const auto [xq, yq] = uniform_xy(g, g.q / s);
            const auto [xi, yi] = uniform_xy(g, 1.0 / s);
            const complexd lhs1 = k1(m, x, y);
            const complexd rhs1 = -0.5 * m.sigma11 * k1star(m, xq, yq);
            const complexd lhs2 = k2(m, x, y);
            const complexd rhs2 = -0.5 * m.sigma22 * k2star(m, xi, yi);
            CHECK(std::abs(lhs1 - rhs1) < 1e-9 * (1.0 + std::abs(lhs1)));
            CHECK(std::abs(lhs2 - rhs2) < 1e-9 * (1.0 + std::abs(lhs2)));
        }
    }
}

TEST_CASE("hyperbola samples") {
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> tdist(0.05, 8.0);
    for (const QuadrantModel& m : {instance_a(), instance_b()}) {
        const KernelGeometry g = special_points(m);
        for (int i = 0; i < 20; ++i) {
            const double t = tdist(rng);
            const complexd y = hyperbola_sample(g, t);
            const complexd y_conj = uniform_xy(g, g.q * t).second;
            CHECK(std::abs(std::conj(y) - y_conj) < 1e-9 * (1.0 + std::abs(y)));
            // the sample lies on the curve together with one x-branch
            const auto [xp, xm] = X_branches(m, y);
            CHECK(std::min(std::abs(K(m, xp, y)), std::abs(K(m, xm, y))) < 1e-9);
        }
        // t = 1 direction: the branch point preimage is e^{i beta}
        CHECK(std::abs(uniform_xy(g, g.eib).second - complexd(g.yplus, 0.0)) < 1e-10);
    }
}

TEST_CASE("positive discriminant keeps the curve irreducible") {
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto disc = [](const QuadrantModel& m) {
        const double b = m.mu2 * m.sigma12 - m.mu1 * m.sigma22;
        return b * b + m.det_sigma() * m.mu2 * m.mu2;
    };
    CHECK(disc(instance_a()) > 0.0);
    CHECK(disc(instance_b()) > 0.0);
    for (int i = 0; i < 200; ++i) {
        WedgeModel w;
        w.beta = 0.3 + 2.4 * u01(rng);
        w.theta = w.beta * (0.1 + 0.8 * u01(rng));
        const double zeta = kPi + w.beta + (std::min(2.0 * kPi, kPi + w.beta + 1.0) - kPi - w.beta -
                                            1e-3) * u01(rng);
        const double dlo = std::max(zeta - kPi, 0.0) + 1e-2;
        const double dhi = std::min(kPi, zeta) - 1e-2;
        if (dlo >= dhi) continue;
        w.delta = dlo + (dhi - dlo) * u01(rng);
        w.epsilon = zeta - w.delta;
        CHECK(disc(wedge_to_quadrant(w)) > 0.0);
    }
}

TEST_SUITE_END();
