#include <doctest.h>

#include <cmath>

#include "obsbench/errors.hpp"
#include "obsbench/roc.hpp"
#include "obsbench/rng.hpp"
#include "oracles.hpp"

using namespace obsbench;

TEST_CASE("empirical ROC: separation, ties, endpoints") {
    const RocCurve perfect = empirical_roc({2.0, 3.0}, {0.0, 1.0});
    CHECK(perfect.auc == doctest::Approx(1.0).epsilon(1e-15));
    bool passes_01 = false;
    for (const auto& [x, y] : perfect.points)
        if (x == 0.0 && y == 1.0) passes_01 = true;
    CHECK(passes_01);
    CHECK(perfect.points.front() == std::make_pair(0.0, 0.0));
    CHECK(perfect.points.back() == std::make_pair(1.0, 1.0));

    const RocCurve flat = empirical_roc({1.0, 1.0, 1.0}, {1.0, 1.0});
    CHECK(flat.auc == doctest::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(empirical_roc({}, {1.0}), ParameterError);
}

TEST_CASE("ROC points are monotone from (0,0) to (1,1)") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> p(1 + rng.next_u64() % 20), a(1 + rng.next_u64() % 20);
        for (double& x : p) x = std::floor(rng.next_double() * 6.0);
        for (double& x : a) x = std::floor(rng.next_double() * 6.0);
        const RocCurve c = empirical_roc(p, a);
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            CHECK(c.points[i].first >= c.points[i - 1].first);
            CHECK(c.points[i].second >= c.points[i - 1].second);
        }
    }
}

TEST_CASE("Mann-Whitney basics") {
    CHECK(auc_mann_whitney({1.0}, {0.0}) == 1.0);
    CHECK(auc_mann_whitney({0.0}, {0.0}) == 0.5);
    const double v = auc_mann_whitney({0.1, 0.9, 0.8}, {0.2, 0.7, 0.3});
    CHECK(v == doctest::Approx(6.0 / 9.0).epsilon(1e-15));
    CHECK(v == oracles::auc_exhaustive({0.1, 0.9, 0.8}, {0.2, 0.7, 0.3}));
}

TEST_CASE("Mann-Whitney equals exhaustive enumeration bitwise on random instances") {
    Rng rng(2718);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> p(1 + rng.next_u64() % 8), a(1 + rng.next_u64() % 8);
        for (double& x : p) x = std::floor(rng.next_double() * 5.0);
        for (double& x : a) x = std::floor(rng.next_double() * 5.0);
        CHECK(auc_mann_whitney(p, a) == oracles::auc_exhaustive(p, a));
        CHECK(std::fabs(empirical_roc(p, a).auc - auc_mann_whitney(p, a)) <= 1e-12);
    }
}

TEST_CASE("trapezoidal area equals Mann-Whitney in exact rational arithmetic") {
    Rng rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<long long> p(1 + rng.next_u64() % 7), a(1 + rng.next_u64() % 7);
        for (auto& x : p) x = (long long)(rng.next_u64() % 5);
        for (auto& x : a) x = (long long)(rng.next_u64() % 5);
        CHECK(oracles::roc_area_rational(p, a) == oracles::mw_rational(p, a));
    }
}

TEST_CASE("AUC is invariant under strictly increasing transforms") {
    Rng rng(414);
    std::vector<double> p(40), a(40);
    for (double& x : p) x = 0.2 + rng.next_gaussian();
    for (double& x : a) x = rng.next_gaussian();
    const double base = auc_mann_whitney(p, a);

    auto apply = [](std::vector<double> v, auto fn) {
        for (double& x : v) x = fn(x);
        return v;
    };
    auto expfn = [](double x) { return std::exp(x); };
    auto cubefn = [](double x) { return x * x * x; };
    CHECK(std::fabs(auc_mann_whitney(apply(p, expfn), apply(a, expfn)) - base) <= 1e-12);
    CHECK(std::fabs(auc_mann_whitney(apply(p, cubefn), apply(a, cubefn)) - base) <= 1e-12);

    // swapping class labels mirrors the AUC
    CHECK(auc_mann_whitney(a, p) == doctest::Approx(1.0 - base).epsilon(1e-12));
}

TEST_CASE("bootstrap CI: degenerate and deterministic cases") {
    const std::vector<double> p = {2.0, 3.0, 4.0};
    const std::vector<double> a = {0.0, 0.5, 1.0};
    const AucEstimate sep = bootstrap_ci(p, a, 500, 0.95, 9);
    CHECK(sep.auc == 1.0);
    CHECK(sep.ci_low == 1.0);
    CHECK(sep.ci_high == 1.0);
    CHECK(sep.level == 0.95);

    const AucEstimate r1 = bootstrap_ci({1.0, 2.0, 0.5, 3.0}, {0.0, 1.5, 0.7, 0.2}, 300, 0.9, 77);
    const AucEstimate r2 = bootstrap_ci({1.0, 2.0, 0.5, 3.0}, {0.0, 1.5, 0.7, 0.2}, 300, 0.9, 77);
    CHECK(r1.ci_low == r2.ci_low);
    CHECK(r1.ci_high == r2.ci_high);
    CHECK(r1.ci_low <= r1.auc);
    CHECK(r1.auc <= r1.ci_high);
}

TEST_CASE("bootstrap CI coverage near the nominal level") {
    // Gaussian classes separated by d = 1: true AUC = Phi(1/sqrt(2))
    const double true_auc = 0.5 * std::erfc(-1.0 / std::sqrt(2.0) / std::sqrt(2.0));
    const int n_exp = 1000, n = 100;
    int covered = 0;
    for (int e = 0; e < n_exp; ++e) {
        Rng rng(10000 + e);
        std::vector<double> p(n), a(n);
        for (double& x : p) x = 1.0 + rng.next_gaussian();
        for (double& x : a) x = rng.next_gaussian();
        const AucEstimate est = bootstrap_ci(p, a, 2000, 0.95, 555 + e);
        if (est.ci_low <= true_auc && true_auc <= est.ci_high) ++covered;
    }
    const double coverage = double(covered) / n_exp;
    CHECK(coverage >= 0.92);
    CHECK(coverage <= 0.98);
}

TEST_CASE("binormal fit") {
    // identical class distributions
    const std::vector<double> same = {0.0, 1.0, 2.0, 3.0};
    const BinormalFit null_fit = binormal_fit(same, same);
    CHECK(null_fit.auc == doctest::Approx(0.5).epsilon(1e-12));

    // unit-variance Gaussians separated by 1
    Rng rng(616);
    const int n = 100000;
    std::vector<double> p(n), a(n);
    for (double& x : p) x = 1.0 + rng.next_gaussian();
    for (double& x : a) x = rng.next_gaussian();
    const BinormalFit fit = binormal_fit(p, a);
    CHECK(std::fabs(fit.a - 1.0) < 0.02);
    CHECK(std::fabs(fit.b - 1.0) < 0.02);
    CHECK(std::fabs(fit.auc - 0.7602) < 0.01);

    // scale invariance
    std::vector<double> p2 = p, a2 = a;
    for (double& x : p2) x *= 3.5;
    for (double& x : a2) x *= 3.5;
    const BinormalFit scaled = binormal_fit(p2, a2);
    CHECK(scaled.a == doctest::Approx(fit.a).epsilon(1e-10));
    CHECK(scaled.b == doctest::Approx(fit.b).epsilon(1e-10));
    CHECK(scaled.auc == doctest::Approx(fit.auc).epsilon(1e-10));

    CHECK_THROWS_AS(binormal_fit({1.0, 1.0, 1.0}, {0.0, 0.5, 1.0}), ParameterError);
}
