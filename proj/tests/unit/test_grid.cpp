#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace aer;
using aer::testing::sample;
using aer::testing::max_abs_diff;

TEST_SUITE("grid") {

TEST_CASE("spacing scales with the domain length") {
    Grid2D g(-2, 2, 2, 50, 50);
    CHECK(g.d1() == doctest::Approx(0.08));
    CHECK(g.d2() == doctest::Approx(0.08));
    CHECK(g.x(0) == -2.0);
    CHECK(g.x(50) == 2.0);
    CHECK(g.y(50) == 2.0);
    CHECK(g.x(25) == doctest::Approx(0.0));
}

TEST_CASE("invalid grids are rejected") {
    CHECK_THROWS_AS(Grid2D(0, 1, 1, 1, 4), ConfigError);
    CHECK_THROWS_AS(Grid2D(0, 1, 1, 4, 1), ConfigError);
    CHECK_THROWS_AS(Grid2D(1, 1, 1, 4, 4), ConfigError);
    CHECK_THROWS_AS(Grid2D(0, 1, 0, 4, 4), ConfigError);
}

TEST_CASE("region mask bounds") {
    Grid2D g(0, 1, 1, 8, 10);
    CHECK_NOTHROW(RegionMask{3, 6}.validate(g));
    CHECK_THROWS(RegionMask{6, 6}.validate(g));
    CHECK_THROWS(RegionMask{-1, 6}.validate(g));
    CHECK_THROWS(RegionMask{2, 11}.validate(g));
    RegionMask m{3, 6};
    CHECK(m.retained(3));
    CHECK_FALSE(m.retained(4));
    CHECK(m.retained(6));
}

TEST_CASE("derivatives of a constant vanish") {
    Grid2D g(-1, 3, 1.5, 32, 24);
    Field2D c(g, 2.75);
    for (const Field2D& d : {diff_x(c), diff_y(c), diff2_x(c), diff2_y(c)}) CHECK(d.max_abs() <= 1e-12);
}

TEST_CASE("diff_x of a Fourier mode") {
    const double L = 4.0, w = 2 * std::numbers::pi / L;
    Grid2D g(-2, 2, 1, 64, 4);
    Field2D v = sample(g, [&](double x, double) { return std::sin(w * x); });
    Field2D exact = sample(g, [&](double x, double) { return w * std::cos(w * x); });
    double err = max_abs_diff(diff_x(v), exact);
    CHECK(err < 0.01);
    CHECK(err > 1e-6);
}

TEST_CASE("diff_x converges at second order") {
    const double L = 4.0, w = 2 * std::numbers::pi / L;
    std::vector<double> h, e;
    for (int n : {16, 32, 64, 128, 256}) {
        Grid2D g(-2, 2, 1, n, 4);
        Field2D v = sample(g, [&](double x, double) { return std::sin(w * x); });
        Field2D exact = sample(g, [&](double x, double) { return w * std::cos(w * x); });
        h.push_back(g.d1());
        e.push_back(max_abs_diff(diff_x(v), exact));
    }
    double p = aer::testing::slope(h, e);
    CHECK(p == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("diff_y is exact on quadratics including boundary rows") {
    Grid2D g(0, 1, 1, 4, 50);
    Field2D lin = sample(g, [](double, double y) { return y; });
    Field2D ones = diff_y(lin);
    for (double v : ones.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    Field2D sq = sample(g, [](double, double y) { return y * y; });
    Field2D d = diff_y(sq);
    Field2D two_y = sample(g, [](double, double y) { return 2 * y; });
    CHECK(max_abs_diff(d, two_y) < 1e-11);
}

TEST_CASE("second differences") {
    Grid2D g(0, 4, 1, 64, 20);
    const double w = 2 * std::numbers::pi / 4;
    Field2D c = sample(g, [&](double x, double) { return std::cos(w * x); });
    Field2D exact = sample(g, [&](double x, double) { return -w * w * std::cos(w * x); });
    CHECK(max_abs_diff(diff2_x(c), exact) < 0.01);

    Field2D sq = sample(g, [](double, double y) { return y * y; });
    for (double v : diff2_y(sq).values()) CHECK(v == doctest::Approx(2.0).epsilon(1e-9));

    Field2D affine = sample(g, [](double x, double y) { return 1.5 + 0.25 * x - 3 * y; });
    CHECK(diff2_y(affine).max_abs() < 1e-9);
    Field2D d2x = diff2_x(affine);
    // Away from the seam only: columns 0 and n - 1 see the jump of a non-periodic ramp.
    for (int j = 0; j <= g.m(); ++j)
        for (int i = 1; i < g.n() - 1; ++i) CHECK(std::abs(d2x(i, j)) < 1e-9);
}

TEST_CASE("rel_l2_error basics") {
    Grid2D g(-2, 2, 2, 20, 20);
    Field2D e = sample(g, [](double x, double y) { return std::cos(x) + y * y + 0.3; });
    CHECK(rel_l2_error(e, e) == 0.0);
    CHECK(rel_l2_error(1.1 * e, e) == doctest::Approx(0.1).epsilon(1e-10));
    CHECK_THROWS_WITH_AS(rel_l2_error(e, Field2D(g, 0.0)), doctest::Contains("zero-norm reference"), NumericalError);
}

TEST_CASE("rel_l2_error is scale equivariant") {
    Grid2D g(0, 1, 1, 17, 13);
    Field2D e = sample(g, [](double x, double y) { return std::sin(3 * x) * std::exp(y) - 0.2; });
    for (double c : {-3.5, -1.0, 0.0, 1e-3, 0.7, 12.0}) {
        Field2D approx = c * e + e;
        CHECK(std::abs(rel_l2_error(approx, e) - std::abs(c)) <= 1e-12 * std::max(1.0, std::abs(c)));
    }
}

TEST_CASE("trapezoid norm integrates a constant exactly") {
    Grid2D g(-2, 2, 2, 10, 14);
    Field2D one(g, 1.0);
    CHECK(l2_norm(one) == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("block operators agree with the field operators") {
    Grid2D g(0, 2, 1, 12, 9);
    Field2D v = sample(g, [](double x, double y) { return std::sin(std::numbers::pi * x) * (1 + y * y * y); });
    RowBlock all{0, g.m()};
    Eigen::VectorXd u = gather_block(v, all);
    Field2D dx(g), dy(g);
    scatter_block(dx, all, op_dx(g, all) * u);
    scatter_block(dy, all, op_dy(g, all) * u);
    CHECK(max_abs_diff(dx, diff_x(v)) < 1e-13);
    CHECK(max_abs_diff(dy, diff_y(v)) < 1e-13);
}

}
