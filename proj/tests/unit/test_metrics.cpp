#include <doctest.h>

#include <cmath>

#include "obsbench/errors.hpp"
#include "obsbench/metrics.hpp"
#include "obsbench/rng.hpp"

using namespace obsbench;

namespace {

Volume3D random_volume(std::uint64_t seed, double offset = 0.0) {
    Volume3D v(Dims{16, 14, 12}, Pitch{0.5, 0.5, 0.5});
    Rng rng(seed);
    for (double& x : v.data) x = offset + rng.next_double();
    return v;
}

}  // namespace

TEST_CASE("rmse identities and scaling") {
    const Volume3D v = random_volume(1);
    CHECK(rmse(v, v) == 0.0);

    Volume3D zeros(Dims{2, 1, 1}, Pitch{1, 1, 1}, 0.0);
    Volume3D ones(Dims{2, 1, 1}, Pitch{1, 1, 1}, 1.0);
    CHECK(rmse(zeros, ones) == doctest::Approx(1.0).epsilon(1e-15));

    const Volume3D w = random_volume(2);
    Volume3D va = v, wa = w;
    for (double& x : va.data) x *= -3.0;
    for (double& x : wa.data) x *= -3.0;
    CHECK(rmse(va, wa) == doctest::Approx(3.0 * rmse(v, w)).epsilon(1e-12));
}

TEST_CASE("rmse satisfies the triangle inequality") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Volume3D a = random_volume(3 * s + 1);
        const Volume3D b = random_volume(3 * s + 2);
        const Volume3D c = random_volume(3 * s + 3);
        CHECK(rmse(a, c) <= rmse(a, b) + rmse(b, c) + 1e-12);
    }
}

TEST_CASE("ssim identities") {
    const Volume3D v = random_volume(4);
    CHECK(ssim(v, v) == doctest::Approx(1.0).epsilon(1e-12));

    // constant images, closed form with vanishing variances
    Volume3D a(Dims{10, 10, 6}, Pitch{1, 1, 1}, 100.0);
    Volume3D b(a.dims, a.pitch, 50.0);
    const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    const double expect = (2.0 * 100.0 * 50.0 + c1) / (100.0 * 100.0 + 50.0 * 50.0 + c1);
    CHECK(ssim(a, b, 255.0) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(ssim(a, b, 255.0) == doctest::Approx(0.80011).epsilon(2e-5));
}

TEST_CASE("ssim is symmetric and bounded") {
    const Volume3D a = random_volume(5);
    const Volume3D b = random_volume(6);
    CHECK(ssim(a, b, 1.0) == doctest::Approx(ssim(b, a, 1.0)).epsilon(1e-12));
    for (std::uint64_t s = 10; s < 16; ++s) {
        const double val = ssim(random_volume(s), random_volume(s + 100), 1.0);
        CHECK(val <= 1.0);
        CHECK(val >= -1.0);
    }
    CHECK(ssim(a, b, 1.0) < 1.0);  // equals 1 only for identical inputs
}

TEST_CASE("psnr identities and monotonicity") {
    const Volume3D v = random_volume(7);
    CHECK(std::isinf(psnr(v, v, 1.0)));

    Volume3D zeros(Dims{4, 1, 1}, Pitch{1, 1, 1}, 0.0);
    Volume3D ones(Dims{4, 1, 1}, Pitch{1, 1, 1}, 1.0);
    CHECK(psnr(zeros, ones, 1.0) == doctest::Approx(0.0).epsilon(1e-12));  // rmse == peak

    // strictly decreasing along a growing-perturbation family
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {0.01, 0.02, 0.05, 0.1, 0.4}) {
        Volume3D t = v;
        for (double& x : t.data) x += eps;
        const double p = psnr(t, v, 1.0);
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("metric preconditions") {
    const Volume3D v = random_volume(8);
    Volume3D other(Dims{4, 4, 4}, Pitch{1, 1, 1}, 1.0);
    CHECK_THROWS_AS(rmse(v, other), GeometryError);
    CHECK_THROWS_AS(ssim(v, other), GeometryError);
    CHECK_THROWS_AS(psnr(v, other, 1.0), GeometryError);
    CHECK_THROWS_AS(psnr(v, v, 0.0), ParameterError);
}

TEST_CASE("compute_fidelity bundles the three metrics with shared defaults") {
    const Volume3D ref = random_volume(9);
    const Volume3D test = random_volume(10);
    const FidelityResult r = compute_fidelity(test, ref);
    CHECK(r.rmse == doctest::Approx(rmse(test, ref)).epsilon(1e-15));
    const double range = ref.max_value() - ref.min_value();
    CHECK(r.ssim == doctest::Approx(ssim(test, ref, range)).epsilon(1e-15));
    CHECK(r.psnr == doctest::Approx(psnr(test, ref, range)).epsilon(1e-15));
}
