#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wedge/decoupling.hpp"
#include "wedge/errors.hpp"

using namespace wedge;
using testsupport::instance_a;
using testsupport::instance_b;

namespace {

double identity_residual(const QuadrantModel& m, const KernelGeometry& g,
                         const DecouplingPair& pair, complexd s) {
    const auto [x, y] = uniform_xy(g, s);
    const complexd lhs = k2(m, x, y) * eval_Q(pair, y);
    const complexd rhs = pair.lambda * eval_P(pair, x) * k1(m, x, y);
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::abs(lhs - rhs) / scale;
}

} // namespace

TEST_SUITE_BEGIN("decoupling");

TEST_CASE("simple-root scan") {
    const WedgeModel b = quadrant_to_wedge(instance_b());
    const auto ok = simple_root_check(b, 3);
    CHECK(ok.pass);

    // d = 2 has an empty index range
    const auto empty = simple_root_check(quadrant_to_wedge(instance_a()), 2);
    CHECK(empty.pass);

    // exact resonance theta - 2 delta + beta = -pi
    const auto bad = simple_root_check(testsupport::double_root_wedge_case1(), 3);
    CHECK_FALSE(bad.pass);
    CHECK(bad.violating_j == 1);
}

TEST_CASE("polynomial pair of the pinned instances") {
    const KernelGeometry ga = special_points(instance_a());
    const DecouplingPair pa = decoupling_pair(ga, 2, 0);
    REQUIRE(pa.proots.size() == 1);
    CHECK(pa.proots[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(pa.qroots[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(pa.lambda == doctest::Approx(-1.0).epsilon(1e-9));

    const KernelGeometry gb = special_points(instance_b());
    const DecouplingPair pb = decoupling_pair(gb, 3, 0);
    REQUIRE(pb.proots.size() == 2);
    CHECK(pb.proots[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(pb.proots[1] == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(pb.qroots[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(pb.qroots[1] == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(pb.lambda == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("lambda cross-checked against the factored form of P/Q") {
    // On the curve, P(x(s))/Q(y(s)) equals a constant F times
    // (s - s0'')(s - s2) / ((s - s0')(s - s1)), and lambda F = C2/C1.
    struct Case {
        QuadrantModel m;
        int d, r;
    };
    const Case cases[] = {
        {instance_a(), 2, 0},
        {instance_b(), 3, 0},
        {wedge_to_quadrant(testsupport::dalgebraic_wedge()), 5, -1},
    };
    for (const auto& cs : cases) {
        const KernelGeometry g = special_points(cs.m);
        const DecouplingPair pair = decoupling_pair(g, cs.d, cs.r);
        complexd F_prev{};
        bool have_prev = false;
        for (complexd s : {complexd(1.7, 0.6), complexd(0.4, -1.1), complexd(2.9, 0.2)}) {
            const auto [x, y] = uniform_xy(g, s);
            const complexd base =
                ((s - g.s0pp) * (s - g.s2)) / ((s - g.s0p) * (s - g.s1));
            const complexd F = eval_P(pair, x) / eval_Q(pair, y) / base;
            if (have_prev) CHECK(std::abs(F - F_prev) < 1e-8 * std::abs(F));
            F_prev = F;
            have_prev = true;
            CHECK(std::abs(pair.lambda * F - g.C2 / g.C1) < 1e-8 * std::abs(g.C2 / g.C1));
        }
    }
}

TEST_CASE("rational pair for d <= 0") {
    const WedgeModel w = testsupport::pole_pair_wedge();
    CHECK(w.alpha() == doctest::Approx(3.0).epsilon(1e-12));
    const QuadrantModel m = wedge_to_quadrant(w);
    const KernelGeometry g = special_points(m);
    const DecouplingPair pair = decoupling_pair(g, 0, 1);
    CHECK(pair.pole_mode);
    CHECK(pair.proots.size() == 1);
    CHECK(pair.qroots.size() == 1);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> mod(0.2, 5.0), ang(0.0, 2.0 * kPi);
    for (int i = 0; i < 100; ++i)
        CHECK(identity_residual(m, g, pair, std::polar(mod(rng), ang(rng))) < 1e-8);
}

TEST_CASE("decoupling identity on random curve points") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> mod(0.2, 5.0), ang(0.0, 2.0 * kPi);
    struct Case {
        QuadrantModel m;
        int d, r;
    };
    const Case cases[] = {
        {instance_a(), 2, 0},
        {instance_b(), 3, 0},
        {wedge_to_quadrant(testsupport::dalgebraic_wedge()), 5, -1},
    };
    for (const auto& c : cases) {
        const KernelGeometry g = special_points(c.m);
        const DecouplingPair pair = decoupling_pair(g, c.d, c.r);
        for (int i = 0; i < 100; ++i)
            CHECK(identity_residual(c.m, g, pair, std::polar(mod(rng), ang(rng))) < 1e-8);
    }
}

TEST_CASE("evaluation and normalization") {
    const KernelGeometry gb = special_points(instance_b());
    const DecouplingPair pb = decoupling_pair(gb, 3, 0);
    CHECK(eval_Q(pb, 1.0).real() == doctest::Approx(15.0 / 8.0).epsilon(1e-13));
    CHECK(std::abs(eval_P(pb, 0.0)) == 0.0);

    // first derivative at the origin is 1 by construction
    const double h = 1e-6;
    const double deriv = (eval_Q(pb, h).real() - eval_Q(pb, -h).real()) / (2.0 * h);
    CHECK(deriv == doctest::Approx(1.0).epsilon(1e-6));

    const QuadrantModel mp = wedge_to_quadrant(testsupport::pole_pair_wedge());
    const DecouplingPair pole_pair = decoupling_pair(special_points(mp), 0, 1);
    const double hp = 1e-6;
    const double dp =
        (eval_P(pole_pair, hp).real() - eval_P(pole_pair, -hp).real()) / (2.0 * hp);
    CHECK(dp == doctest::Approx(1.0).epsilon(1e-5));
    CHECK_THROWS_AS(eval_P(pole_pair, complexd(pole_pair.proots[0], 0.0)), Error);
}

TEST_CASE("degree bookkeeping") {
    const DecouplingPair pa = decoupling_pair(special_points(instance_a()), 2, 0);
    CHECK(static_cast<int>(pa.proots.size()) + 1 == 2); // origin root plus d-1 others
    const DecouplingPair pb = decoupling_pair(special_points(instance_b()), 3, 0);
    CHECK(static_cast<int>(pb.proots.size()) + 1 == 3);
    const DecouplingPair pp =
        decoupling_pair(special_points(wedge_to_quadrant(testsupport::pole_pair_wedge())), 0, 1);
    CHECK(static_cast<int>(pp.proots.size()) == 1); // 1 - d poles
}

TEST_CASE("near-resonant configurations carry a warning, not an error") {
    // nudge the exact resonance theta - 2 delta + beta = -pi by 1e-7
    WedgeModel w = testsupport::double_root_wedge_case1();
    w.theta += 1e-7;
    const auto check = simple_root_check(w, 3);
    CHECK(check.pass);
    CHECK(check.near_warning_j == 1);
    const DecouplingPair pair = decoupling_pair(special_points(wedge_to_quadrant(w)), 3, 0);
    CHECK(pair.near_double_root_j == 1);
}

TEST_CASE("error paths") {
    const KernelGeometry gb = special_points(instance_b());
    CHECK_THROWS_AS(decoupling_pair(gb, 1, 0), Error);

    // resonant configuration refuses the plain pair
    const QuadrantModel res = wedge_to_quadrant(testsupport::double_root_wedge_case1());
    const KernelGeometry gres = special_points(res);
    try {
        decoupling_pair(gres, 3, 0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MultipleRoot);
    }

    // a root of P landing on the origin is rejected the same way
    const QuadrantModel zero_root = wedge_to_quadrant({1.1, 0.55, 2.2, 2.2});
    const KernelGeometry gz = special_points(zero_root);
    try {
        decoupling_pair(gz, 5, -1);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MultipleRoot);
    }
}

TEST_SUITE_END();
