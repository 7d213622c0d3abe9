#include <doctest.h>

#include <cmath>
#include <vector>

#include "obsbench/errors.hpp"
#include "obsbench/rng.hpp"

using namespace obsbench;

TEST_CASE("rng is reproducible and substreams are independent") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng s1 = Rng::derive(99, {1, 2});
    Rng s2 = Rng::derive(99, {1, 3});
    CHECK(s1.next_u64() != s2.next_u64());

    // derivation is order-sensitive
    Rng s3 = Rng::derive(99, {2, 1});
    Rng s4 = Rng::derive(99, {1, 2});
    CHECK(s3.next_u64() != s4.next_u64());
}

TEST_CASE("uniform doubles live in [0,1)") {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gaussian moments") {
    Rng rng(2024);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_gaussian();
        s += x;
        s2 += x * x;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::fabs(mean) < 3.0 / std::sqrt(double(n)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("poisson(0) is identically zero") {
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) CHECK(rng.next_poisson(0.0) == 0);
}

TEST_CASE("poisson moments at mean 100 (rejection branch)") {
    Rng rng(31415);
    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k = double(rng.next_poisson(100.0));
        s += k;
        s2 += k * k;
    }
    const double mean = s / n;
    const double var = (s2 - n * mean * mean) / (n - 1);
    // 3 sigma of the sample mean: 3 * 10 / sqrt(n)
    CHECK(std::fabs(mean - 100.0) < 3.0 * 10.0 / std::sqrt(double(n)));
    CHECK(var / mean > 0.97);
    CHECK(var / mean < 1.03);
}

TEST_CASE("poisson moments at mean 5 (inversion branch)") {
    Rng rng(271828);
    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k = double(rng.next_poisson(5.0));
        s += k;
        s2 += k * k;
    }
    const double mean = s / n;
    const double var = (s2 - n * mean * mean) / (n - 1);
    CHECK(std::fabs(mean - 5.0) < 3.0 * std::sqrt(5.0) / std::sqrt(double(n)));
    CHECK(var / mean == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("poisson draws are seed-deterministic") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_poisson(37.5) == b.next_poisson(37.5));
}

TEST_CASE("negative poisson mean is rejected") {
    Rng rng(1);
    CHECK_THROWS_AS(rng.next_poisson(-1.0), ParameterError);
}
