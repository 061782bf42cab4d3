#include "aer/noise.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace aer;

TEST_SUITE("noise") {

TEST_CASE("stream zero is the plain SplitMix64 sequence") {
    CounterRng r(0);
    CHECK(r.bits(0) == 0xe220a8397b1dcdafULL);
    CHECK(r.bits(1) == 0x6e789e6aa1b965f4ULL);
    CHECK(r.bits(2) == 0x06c45d188009454fULL);
}

TEST_CASE("zero level leaves data untouched") {
    Grid2D g(0, 1, 1, 10, 10);
    Field2D u = aer::testing::sample(g, [](double x, double y) { return std::sin(3 * x) + y; });
    CHECK(add_noise(u, 0.0, 7).values() == u.values());
}

TEST_CASE("multiplicative bound") {
    Grid2D g(0, 1, 1, 40, 40);
    Field2D u = aer::testing::sample(g, [](double x, double y) { return std::cos(5 * x) - 2 * y + 0.1; });
    const double delta = 0.03;
    Field2D n = add_noise(u, delta, 99);
    for (std::size_t k = 0; k < u.values().size(); ++k)
        CHECK(std::abs(n.values()[k] - u.values()[k]) <= delta * std::abs(u.values()[k]));
}

TEST_CASE("determinism and seed sensitivity") {
    Grid2D g(0, 1, 1, 30, 30);
    Field2D u(g, 2.0);
    Field2D a = add_noise(u, 0.01, 5), b = add_noise(u, 0.01, 5), c = add_noise(u, 0.01, 6);
    CHECK(a.values() == b.values());
    CHECK(a.values() != c.values());
    Field2D s1 = add_noise(u, 0.01, 5, NoiseKind::uniform, 1);
    CHECK(s1.values() != a.values());
    CHECK(add_noise(u, 0.01, 5, NoiseKind::gaussian).values() == add_noise(u, 0.01, 5, NoiseKind::gaussian).values());
}

TEST_CASE("uniform noise statistics") {
    Grid2D g(0, 1, 1, 999, 999);  // 10^6 nodes
    Field2D u(g, 1.0);
    const double delta = 0.01;
    Field2D n = add_noise(u, delta, 2024);
    double sum = 0, sq = 0;
    const double N = static_cast<double>(n.values().size());
    for (double v : n.values()) {
        sum += v - 1.0;
        sq += (v - 1.0) * (v - 1.0);
    }
    CHECK(std::abs(sum / N) <= 3 * delta / std::sqrt(3 * N));
    CHECK(sq / N == doctest::Approx(delta * delta / 3).epsilon(0.01));
}

TEST_CASE("gaussian noise statistics") {
    CounterRng r(17, 3);
    const int N = 1000000;
    double sum = 0, sq = 0;
    for (int c = 0; c < N; ++c) {
        double z = r.normal(c);
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / N) <= 5 / std::sqrt(double(N)));
    CHECK(sq / N == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("uniform draws lie in [0, 1)") {
    CounterRng r(123);
    for (int c = 0; c < 100000; ++c) {
        double v = r.uniform(c);
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("negative level is rejected") {
    Grid2D g(0, 1, 1, 4, 4);
    CHECK_THROWS_AS(add_noise(Field2D(g, 1.0), -0.1, 1), ConfigError);
}

}
