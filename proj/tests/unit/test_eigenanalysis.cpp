#include <doctest.h>

#include <cmath>

#include "obsbench/eigenanalysis.hpp"
#include "obsbench/errors.hpp"
#include "obsbench/observer.hpp"
#include "obsbench/rng.hpp"
#include "oracles.hpp"

using namespace obsbench;

namespace {

std::vector<double> random_symmetric(int n, Rng& rng, double diag_boost = 0.0) {
    std::vector<double> m(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = rng.next_gaussian();
            m[std::size_t(i) * n + j] = v;
            m[std::size_t(j) * n + i] = v;
        }
    for (int i = 0; i < n; ++i) m[std::size_t(i) * n + i] += diag_boost;
    return m;
}

std::vector<double> random_spd(int n, Rng& rng) {
    // A A' plus a diagonal bump keeps the spectrum comfortably positive
    std::vector<double> a(std::size_t(n) * n);
    for (double& x : a) x = rng.next_gaussian();
    std::vector<double> m(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += a[std::size_t(i) * n + k] * a[std::size_t(j) * n + k];
            m[std::size_t(i) * n + j] = s;
        }
    for (int i = 0; i < n; ++i) m[std::size_t(i) * n + i] += 0.1;
    return m;
}

}  // namespace

TEST_CASE("eigendecomposition of simple matrices") {
    const std::vector<double> eye = {1, 0, 0, 1};
    const EigenDecomposition e1 = eig_decompose(2, eye);
    CHECK(e1.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e1.values[1] == doctest::Approx(1.0).epsilon(1e-14));

    const std::vector<double> m = {2, 1, 1, 2};
    const EigenDecomposition e2 = eig_decompose(2, m);
    CHECK(e2.values[0] == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(e2.values[1] == doctest::Approx(1.0).epsilon(1e-13));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::fabs(e2.vectors[0][0]) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(e2.vectors[0][0] == doctest::Approx(e2.vectors[0][1]).epsilon(1e-12));
    CHECK(std::fabs(e2.vectors[1][0]) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(e2.vectors[1][0] == doctest::Approx(-e2.vectors[1][1]).epsilon(1e-12));
}

TEST_CASE("eigendecomposition reconstructs and preserves the trace") {
    Rng rng(12);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 5;
        const std::vector<double> m = random_symmetric(n, rng);
        const EigenDecomposition e = eig_decompose(n, m);

        double frob = 0.0, resid = 0.0, trace = 0.0, lsum = 0.0;
        for (int i = 0; i < n; ++i) {
            trace += m[std::size_t(i) * n + i];
            lsum += e.values[i];
            for (int j = 0; j < n; ++j) {
                double r = m[std::size_t(i) * n + j];
                for (int k = 0; k < n; ++k) r -= e.values[k] * e.vectors[k][i] * e.vectors[k][j];
                resid += r * r;
                frob += m[std::size_t(i) * n + j] * m[std::size_t(i) * n + j];
            }
        }
        CHECK(std::sqrt(resid) <= 1e-10 * std::sqrt(frob));
        CHECK(std::fabs(lsum - trace) <= 1e-10 * std::max(1.0, std::fabs(trace)));
        for (int i = 1; i < n; ++i) CHECK(e.values[i - 1] >= e.values[i]);
    }
}

TEST_CASE("asymmetric input is rejected") {
    std::vector<double> m = {1, 2, 3, 4};
    CHECK_THROWS_AS(eig_decompose(2, m), ParameterError);
}

TEST_CASE("alpha coefficients: alignment, completeness, Parseval") {
    Rng rng(34);
    const int n = 5;
    const std::vector<double> m = random_spd(n, rng);
    const EigenDecomposition e = eig_decompose(n, m);

    // delta parallel to the leading eigenvector
    std::vector<double> delta = e.vectors[0];
    for (double& x : delta) x *= 2.5;
    const std::vector<double> aligned = alpha_coeffs(delta, e);
    CHECK(std::fabs(aligned[0]) == doctest::Approx(2.5).epsilon(1e-10));
    for (int i = 1; i < n; ++i) CHECK(std::fabs(aligned[i]) < 1e-10);

    // generic vector: completeness and Parseval
    std::vector<double> d2(n);
    for (double& x : d2) x = rng.next_gaussian();
    const std::vector<double> alphas = alpha_coeffs(d2, e);
    double norm_d = 0.0, norm_a = 0.0;
    for (int i = 0; i < n; ++i) {
        double rec = 0.0;
        for (int k = 0; k < n; ++k) rec += alphas[k] * e.vectors[k][i];
        CHECK(rec == doctest::Approx(d2[i]).epsilon(1e-12));
        norm_d += d2[i] * d2[i];
        norm_a += alphas[i] * alphas[i];
    }
    CHECK(norm_a == doctest::Approx(norm_d).epsilon(1e-12));
}

TEST_CASE("spectral SNR formula") {
    CHECK(snr_from_spectrum({0.0, 0.0}, {1.0, 2.0}) == 0.0);
    CHECK(snr_from_spectrum({2.0, 3.0}, {4.0, 1.0}) ==
          doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
    CHECK_THROWS_AS(snr_from_spectrum({1.0}, {0.0}), NumericalError);
    CHECK_THROWS_AS(snr_from_spectrum({1.0, 1.0}, {1.0, 1e-12}), NumericalError);
}

TEST_CASE("spectral SNR equals the direct Hotelling SNR") {
    Rng rng(56);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 5;
        EnsembleStats s;
        s.n_channels = n;
        s.cov = random_spd(n, rng);
        s.delta_mean.resize(n);
        for (double& x : s.delta_mean) x = rng.next_gaussian();
        s.mean_present = s.delta_mean;
        s.mean_absent.assign(n, 0.0);

        const double direct = cho_snr(s);
        const EigenDecomposition e = eig_decompose(n, s.cov);
        const double spectral = snr_from_spectrum(alpha_coeffs(s.delta_mean, e), e.values);
        CHECK(std::fabs(direct - spectral) <= 1e-9 * std::max(1.0, std::fabs(direct)));
    }
}

TEST_CASE("AUC from SNR: conventions, limits, table value") {
    CHECK(auc_from_snr(0.0, SnrAucConvention::paper) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(auc_from_snr(0.0, SnrAucConvention::textbook) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(auc_from_snr(50.0, SnrAucConvention::paper) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(auc_from_snr(50.0, SnrAucConvention::textbook) == doctest::Approx(1.0).epsilon(1e-12));

    // erf(1) = 0.8427 from published tables
    CHECK(auc_from_snr(1.0, SnrAucConvention::paper) ==
          doctest::Approx(0.5 + 0.5 * oracles::kErf1).epsilon(5e-5));

    double prev_p = 0.4, prev_t = 0.4;
    for (double snr : {0.0, 0.1, 0.5, 1.0, 2.0, 4.0}) {
        const double p = auc_from_snr(snr, SnrAucConvention::paper);
        const double t = auc_from_snr(snr, SnrAucConvention::textbook);
        CHECK(p > prev_p);
        CHECK(t > prev_t);
        CHECK(p >= 0.5);
        CHECK(p < 1.0);
        prev_p = p;
        prev_t = t;
    }
    CHECK_THROWS_AS(auc_from_snr(-0.1, SnrAucConvention::paper), ParameterError);
}

TEST_CASE("delta mean image and its channel consistency") {
    // identical sets cancel
    std::vector<Image2D> set = {Image2D(32, 32, 1.0), Image2D(32, 32, 2.0)};
    const DeltaMeanImage zero = delta_mean_image(set, set);
    for (double p : zero.image.pixels) CHECK(std::fabs(p) < 1e-15);

    // unit difference in one pixel
    Image2D base(32, 32, 0.0), bumped = base;
    bumped.at(5, 16) = 1.0;
    const DeltaMeanImage unit = delta_mean_image({bumped}, {base});
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x)
            CHECK(unit.image.at(x, y) == (x == 5 && y == 16 ? 1.0 : 0.0));
    CHECK(unit.center_profile[5] == 1.0);  // row 16 is the center row

    // linearity: U applied to the mean difference equals the feature-mean difference
    Rng rng(78);
    const ChannelMatrix u = build_channels();
    std::vector<Image2D> pres, abs;
    std::vector<FeatureVector> fp, fa;
    for (int i = 0; i < 7; ++i) {
        RoiImage rp, ra;
        rp.pixels = Image2D(32, 32);
        ra.pixels = Image2D(32, 32);
        for (int k = 0; k < 32 * 32; ++k) {
            rp.pixels.pixels[k] = rng.next_double();
            ra.pixels.pixels[k] = rng.next_double();
        }
        pres.push_back(rp.pixels);
        abs.push_back(ra.pixels);
        fp.push_back(apply_channels(u, rp));
        fa.push_back(apply_channels(u, ra));
    }
    const DeltaMeanImage df = delta_mean_image(pres, abs);
    RoiImage droi;
    droi.pixels = df.image;
    const FeatureVector dv_from_image = apply_channels(u, droi);
    const EnsembleStats stats = ensemble_stats(fp, fa);
    for (int m = 0; m < 5; ++m)
        CHECK(dv_from_image.values[m] == doctest::Approx(stats.delta_mean[m]).epsilon(1e-10));
}
