#include "../oracles.hpp"
#include "aer/outer.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace aer;

namespace {

ProblemSpec example1_analytic() {
    ProblemSpec s = preset_example1();
    s.extension = SourceExtension::analytic;
    return s;
}

}  // namespace

TEST_SUITE("outer") {

TEST_CASE("zero source gives the boundary trace") {
    ProblemSpec s = aer::testing::simple_spec("0", "-4", "2");
    for (double x : {-1.9, -0.3, 0.0, 1.2})
        for (double y : {-1.5, 0.0, 1.9}) {
            CHECK(eval_phi(s, Side::minus, x, y) == doctest::Approx(-4.0).epsilon(1e-14));
            CHECK(eval_phi(s, Side::plus, x, y) == doctest::Approx(2.0).epsilon(1e-14));
        }
}

TEST_CASE("first worked problem at the origin") {
    ProblemSpec s = example1_analytic();
    const double pi = oracle::pi;
    double printed = -(2 / std::sqrt(3 * pi)) *
                     std::sqrt(std::sin(0.0) - std::sin(-6 * pi / 4) + 3 * std::sin(0.0) - 3 * std::sin(-2 * pi / 4) + 12 * pi);
    CHECK(std::abs(eval_phi(s, Side::minus, 0, 0) - printed) < 1e-8);
    CHECK(std::abs(eval_phi(s, Side::plus, 0, 0) - oracle::phi_example1(Side::plus, 0, 0)) < 1e-8);
}

TEST_CASE("closed form and hand integration agree") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 200; ++i) {
        double x = u(rng), y = u(rng);
        for (Side side : {Side::minus, Side::plus})
            CHECK(std::abs(oracle::phi_example1(side, x, y) - oracle::phi_example1_integrated(side, x, y)) < 1e-12);
    }
}

TEST_CASE("first worked problem against its closed form") {
    ProblemSpec s = example1_analytic();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
        double x = u(rng), y = u(rng);
        for (Side side : {Side::minus, Side::plus})
            worst = std::max(worst, std::abs(eval_phi(s, side, x, y) - oracle::phi_example1(side, x, y)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("second worked problem on a 21 x 21 grid") {
    ProblemSpec s = preset_example2();  // periodic continuation; the source is periodic already
    Grid2D g = s.grid(20, 20);
    double worst = 0;
    for (int j = 0; j <= 20; ++j)
        for (int i = 0; i <= 20; ++i)
            for (Side side : {Side::minus, Side::plus})
                worst = std::max(worst, std::abs(eval_phi(s, side, g.x(i), g.y(j)) - oracle::phi_example2(side, g.x(i), g.y(j))));
    CHECK(worst < 1e-8);
}

TEST_CASE("outer functions keep their signs and are periodic") {
    ProblemSpec s = preset_example1();
    Grid2D g = s.grid(16, 16);
    Field2D pm = phi_field(s, Side::minus, g), pp = phi_field(s, Side::plus, g);
    for (double v : pm.values()) CHECK(v < 0);
    for (double v : pp.values()) CHECK(v > 0);
    for (int j = 0; j <= g.m(); ++j) {
        CHECK(pm(0, j) == doctest::Approx(pm(g.n(), j)).epsilon(1e-10));
        CHECK(pp(0, j) == doctest::Approx(pp(g.n(), j)).epsilon(1e-10));
    }
}

TEST_CASE("radicand violation is reported with the point") {
    ProblemSpec s = aer::testing::simple_spec("40", "-4", "2");
    CHECK_THROWS_WITH_AS(eval_phi(s, Side::plus, 0.5, -1.0), doctest::Contains("Assumption 2 violated at (0.5, -1"),
                         AssumptionViolation);
}

TEST_CASE("first-order term vanishes for constant data") {
    ProblemSpec s = aer::testing::simple_spec("0", "-4", "2");
    for (double x : {-1.0, 0.3})
        for (double y : {-1.2, 0.0, 1.4}) {
            CHECK(std::abs(eval_u1(s, Side::minus, x, y)) <= 1e-10);
            CHECK(std::abs(eval_u1(s, Side::plus, x, y)) <= 1e-10);
        }
}

TEST_CASE("first-order term is anchored on its boundary row") {
    ProblemSpec s = preset_example1();
    for (double x : {-1.7, 0.0, 0.9}) {
        CHECK(eval_u1(s, Side::minus, x, -s.a) == 0.0);
        CHECK(eval_u1(s, Side::plus, x, s.a) == 0.0);
    }
}

TEST_CASE("first-order term against the transport march") {
    ProblemSpec s = example1_analytic();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 8; ++i) {
        double x = u(rng), y = u(rng);
        for (Side side : {Side::minus, Side::plus}) {
            auto phi = [side](double xx, double yy) { return oracle::phi_example1(side, xx, yy); };
            double want = oracle::u1_rk4(phi, s.k, s.a, side, x, y);
            CHECK_MESSAGE(std::abs(eval_u1(s, side, x, y) - want) < 1e-5, "at (" << x << ", " << y << ")");
        }
    }
}

TEST_CASE("first-order term for the periodic second problem") {
    ProblemSpec s = preset_example2();
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 4; ++i) {
        double x = u(rng), y = u(rng);
        for (Side side : {Side::minus, Side::plus}) {
            auto phi = [side](double xx, double yy) { return oracle::phi_example2(side, xx, yy); };
            double want = oracle::u1_rk4(phi, s.k, s.a, side, x, y, 4000);
            CHECK_MESSAGE(std::abs(eval_u1(s, side, x, y) - want) < 1e-5, "at (" << x << ", " << y << ")");
        }
    }
}

}
