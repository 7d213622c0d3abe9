#include "obsbench/observer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "obsbench/eigenanalysis.hpp"
#include "obsbench/errors.hpp"

namespace obsbench {

namespace {

/// K^-1 b via the symmetric eigen-inverse with eigenvalues floored at
/// 1e-10 x largest. Throws NumericalError (with `who` in the message) when the
/// spectrum is entirely degenerate.
std::vector<double> spd_solve_floored(int n, const std::vector<double>& cov,
                                      const std::vector<double>& b, const std::string& who) {
    const EigenDecomposition eig = jacobi_eigensym(n, cov);
    const double lmax = *std::max_element(eig.values.begin(), eig.values.end());
    if (!(lmax > 0.0))
        throw NumericalError("singular covariance (zero spectrum): " + who);
    const double floor = 1e-10 * lmax;
    std::vector<double> out(n, 0.0);
    for (int m = 0; m < n; ++m) {
        const double lam = std::max(eig.values[m], floor);
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += eig.vectors[m][k] * b[k];
        const double scale = dot / lam;
        for (int k = 0; k < n; ++k) out[k] += scale * eig.vectors[m][k];
    }
    return out;
}

struct ClassMoments {
    int n = 0;
    std::vector<double> sum;    // L
    std::vector<double> outer;  // L x L, sum of x x'
};

ClassMoments accumulate(const std::vector<FeatureVector>& list, int L) {
    ClassMoments m;
    m.n = int(list.size());
    m.sum.assign(L, 0.0);
    m.outer.assign(std::size_t(L) * L, 0.0);
    for (const FeatureVector& f : list) {
        if (int(f.values.size()) != L)
            throw ParameterError("feature vectors have inconsistent lengths");
        for (int i = 0; i < L; ++i) {
            m.sum[i] += f.values[i];
            for (int j = 0; j < L; ++j) m.outer[std::size_t(i) * L + j] += f.values[i] * f.values[j];
        }
    }
    return m;
}

/// Sample covariance ((n-1) divisor) from moments, optionally leaving one
/// vector out.
void moments_to_mean_cov(const ClassMoments& m, const double* held_out, int L,
                         std::vector<double>& mean, std::vector<double>& cov) {
    int n = m.n;
    mean.assign(L, 0.0);
    std::vector<double> outer = m.outer;
    for (int i = 0; i < L; ++i) mean[i] = m.sum[i];
    if (held_out) {
        n -= 1;
        for (int i = 0; i < L; ++i) {
            mean[i] -= held_out[i];
            for (int j = 0; j < L; ++j)
                outer[std::size_t(i) * L + j] -= held_out[i] * held_out[j];
        }
    }
    for (int i = 0; i < L; ++i) mean[i] /= double(n);
    cov.assign(std::size_t(L) * L, 0.0);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            cov[std::size_t(i) * L + j] =
                (outer[std::size_t(i) * L + j] - double(n) * mean[i] * mean[j]) /
                double(n - 1);
}

}  // namespace

RoiImage extract_roi(const Volume3D& v, VoxelIndex defect_center, int size) {
    if (size < 1) throw ParameterError("extract_roi: size must be >= 1");
    if (defect_center.x < 0 || defect_center.x >= v.dims.nx || defect_center.y < 0 ||
        defect_center.y >= v.dims.ny || defect_center.z < 0 || defect_center.z >= v.dims.nz)
        throw ExtractionError("extract_roi: defect center outside the volume");

    const int half = size / 2;
    const int x0 = defect_center.x - half;
    const int y0 = defect_center.y - half;
    if (x0 < 0 || y0 < 0 || x0 + size > v.dims.nx || y0 + size > v.dims.ny)
        throw ExtractionError("extract_roi: crop window [" + std::to_string(x0) + "," +
                              std::to_string(x0 + size) + ") x [" + std::to_string(y0) + "," +
                              std::to_string(y0 + size) + ") exceeds the slice");

    RoiImage roi;
    roi.pixels = Image2D(size, size);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            roi.pixels.at(x, y) = v.at(x0 + x, y0 + y, defect_center.z);
    return roi;
}

RoiImage window_gray(const RoiImage& roi) {
    RoiImage out = roi;
    const auto [lo_it, hi_it] =
        std::minmax_element(roi.pixels.pixels.begin(), roi.pixels.pixels.end());
    const double lo = *lo_it, hi = *hi_it;
    if (hi == lo) {
        std::fill(out.pixels.pixels.begin(), out.pixels.pixels.end(), 0.0);
        return out;
    }
    const double scale = 255.0 / (hi - lo);
    for (double& p : out.pixels.pixels) p = (p - lo) * scale;
    return out;
}

ChannelMatrix build_channels(int n_channels, double f0, double w0, int size) {
    if (n_channels < 1) throw ParameterError("build_channels: need at least one channel");
    if (!(f0 > 0.0) || !(w0 > 0.0))
        throw ParameterError("build_channels: start frequency and width must be positive");
    if (size < 2) throw ParameterError("build_channels: size must be >= 2");

    ChannelMatrix u;
    u.size = size;
    u.n_channels = n_channels;
    u.band_edges.resize(n_channels + 1);
    u.band_edges[0] = f0;
    double width = w0;
    for (int m = 0; m < n_channels; ++m) {
        u.band_edges[m + 1] = u.band_edges[m] + width;
        width *= 2.0;
    }
    if (u.band_edges.back() > 0.5 + 1e-12)
        throw ParameterError("build_channels: top band edge exceeds the Nyquist frequency");

    // cos(2 pi j / size) lookup; (a x + b y) mod size indexes it exactly
    std::vector<double> cos_table(size);
    for (int j = 0; j < size; ++j) cos_table[j] = std::cos(2.0 * M_PI * j / double(size));

    const std::size_t npix = std::size_t(size) * size;
    u.rows.assign(std::size_t(n_channels) * npix, 0.0);

    for (int m = 0; m < n_channels; ++m) {
        double* row = u.rows.data() + std::size_t(m) * npix;
        const double lo = u.band_edges[m], hi = u.band_edges[m + 1];
        int n_bins = 0;
        for (int a = 0; a < size; ++a) {
            const int fa = a <= size / 2 ? a : a - size;
            for (int b = 0; b < size; ++b) {
                const int fb = b <= size / 2 ? b : b - size;
                // half-bin frequency sampling: index radius k maps to
                // k/(2*size) cycles/pixel, so the octave bands starting at
                // 1/64 are all populated on a 32x32 region
                const double r = std::hypot(double(fa), double(fb)) / (2.0 * double(size));
                if (r < lo || r >= hi) continue;
                ++n_bins;
                for (int y = 0; y < size; ++y) {
                    const int by = b * y;
                    double* out = row + std::size_t(y) * size;
                    for (int x = 0; x < size; ++x)
                        out[x] += cos_table[(a * x + by) % size];
                }
            }
        }
        if (n_bins == 0)
            throw ParameterError("build_channels: band " + std::to_string(m + 1) +
                                 " contains no frequency bins at size " + std::to_string(size));
        double norm = 0.0;
        for (std::size_t i = 0; i < npix; ++i) norm += row[i] * row[i];
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < npix; ++i) row[i] /= norm;
    }
    return u;
}

FeatureVector apply_channels(const ChannelMatrix& u, const RoiImage& roi) {
    if (roi.pixels.width != u.size || roi.pixels.height != u.size)
        throw ParameterError("apply_channels: ROI size does not match the channel grid");
    FeatureVector f;
    f.case_id = roi.case_id;
    f.truth = roi.truth;
    f.values.resize(u.n_channels);
    const std::size_t npix = std::size_t(u.size) * u.size;
    for (int m = 0; m < u.n_channels; ++m) {
        const double* row = u.row(m);
        double dot = 0.0;
        for (std::size_t i = 0; i < npix; ++i) dot += row[i] * roi.pixels.pixels[i];
        f.values[m] = dot;
    }
    return f;
}

EnsembleStats ensemble_stats(const std::vector<FeatureVector>& present,
                             const std::vector<FeatureVector>& absent) {
    if (present.size() < 2 || absent.size() < 2)
        throw ParameterError("ensemble_stats: each class needs at least 2 vectors");
    const int L = int(present.front().values.size());

    const ClassMoments mp = accumulate(present, L);
    const ClassMoments ma = accumulate(absent, L);
    std::vector<double> cov_p, cov_a;
    EnsembleStats s;
    s.n_channels = L;
    moments_to_mean_cov(mp, nullptr, L, s.mean_present, cov_p);
    moments_to_mean_cov(ma, nullptr, L, s.mean_absent, cov_a);
    s.delta_mean.resize(L);
    for (int i = 0; i < L; ++i) s.delta_mean[i] = s.mean_present[i] - s.mean_absent[i];
    s.cov.resize(std::size_t(L) * L);
    for (std::size_t i = 0; i < s.cov.size(); ++i) s.cov[i] = 0.5 * (cov_p[i] + cov_a[i]);
    // enforce exact symmetry against rounding in the accumulations
    for (int i = 0; i < L; ++i)
        for (int j = i + 1; j < L; ++j) {
            const double v = 0.5 * (s.cov[std::size_t(i) * L + j] + s.cov[std::size_t(j) * L + i]);
            s.cov[std::size_t(i) * L + j] = v;
            s.cov[std::size_t(j) * L + i] = v;
        }
    return s;
}

double cho_snr(const EnsembleStats& stats) {
    const std::vector<double> w =
        spd_solve_floored(stats.n_channels, stats.cov, stats.delta_mean, "cho_snr");
    double snr2 = 0.0;
    for (int i = 0; i < stats.n_channels; ++i) snr2 += w[i] * stats.delta_mean[i];
    return std::sqrt(std::max(snr2, 0.0));
}

LooStatistics cho_loo_test_statistics(const std::vector<FeatureVector>& present,
                                      const std::vector<FeatureVector>& absent) {
    if (present.size() < 3 || absent.size() < 3)
        throw ParameterError("cho_loo: each class needs at least 3 vectors");
    const int L = int(present.front().values.size());
    const ClassMoments mp = accumulate(present, L);
    const ClassMoments ma = accumulate(absent, L);

    std::vector<double> mean_p, cov_p, mean_a, cov_a;
    moments_to_mean_cov(mp, nullptr, L, mean_p, cov_p);
    moments_to_mean_cov(ma, nullptr, L, mean_a, cov_a);

    LooStatistics out;
    out.t_present.resize(present.size());
    out.t_absent.resize(absent.size());

    std::vector<double> mean_loo, cov_loo, delta(L), pooled(std::size_t(L) * L);
    auto score = [&](const FeatureVector& x, bool from_present) {
        const ClassMoments& mo = from_present ? mp : ma;
        moments_to_mean_cov(mo, x.values.data(), L, mean_loo, cov_loo);
        const std::vector<double>& other_mean = from_present ? mean_a : mean_p;
        const std::vector<double>& other_cov = from_present ? cov_a : cov_p;
        for (int i = 0; i < L; ++i)
            delta[i] = from_present ? mean_loo[i] - other_mean[i] : other_mean[i] - mean_loo[i];
        for (std::size_t i = 0; i < pooled.size(); ++i)
            pooled[i] = 0.5 * (cov_loo[i] + other_cov[i]);
        const std::vector<double> w = spd_solve_floored(
            L, pooled, delta, "leave-one-out case " + (x.case_id.empty() ? "?" : x.case_id));
        double t = 0.0;
        for (int i = 0; i < L; ++i) t += w[i] * x.values[i];
        return t;
    };

    for (std::size_t i = 0; i < present.size(); ++i)
        out.t_present[i] = score(present[i], true);
    for (std::size_t i = 0; i < absent.size(); ++i)
        out.t_absent[i] = score(absent[i], false);
    return out;
}

}  // namespace obsbench
