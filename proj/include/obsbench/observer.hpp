#pragma once

#include <string>
#include <vector>

#include "obsbench/grid.hpp"
#include "obsbench/phantom.hpp"

namespace obsbench {

struct Image2D {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;  // x-fastest

    Image2D() = default;
    Image2D(int w, int h, double fill = 0.0) : width(w), height(h), pixels(std::size_t(w) * h, fill) {}
    double& at(int x, int y) { return pixels[std::size_t(y) * width + x]; }
    double at(int x, int y) const { return pixels[std::size_t(y) * width + x]; }
};

enum class Truth { defect_absent = 0, defect_present = 1 };

/// One extracted region of interest (32x32 by default) with its provenance.
struct RoiImage {
    Image2D pixels;
    std::string case_id;
    Truth truth = Truth::defect_absent;
};

/// Rotationally symmetric frequency channels. Row m is the unit-norm inverse
/// transform of the indicator of radial frequencies in
/// [band_edges[m], band_edges[m+1]) on the size x size DFT grid; the DC bin
/// is below every band. Rows are mutually orthogonal because the bands are
/// disjoint.
struct ChannelMatrix {
    int size = 0;                        // ROI side length in pixels
    int n_channels = 0;                  // L
    std::vector<double> rows;            // L x size^2, row-major
    std::vector<double> band_edges;      // L+1 radial frequencies, cycles/pixel

    const double* row(int m) const { return rows.data() + std::size_t(m) * size * size; }
};

struct FeatureVector {
    std::vector<double> values;  // length L
    std::string case_id;
    Truth truth = Truth::defect_absent;
};

/// Per-class means, their difference, and the equal-weight pooled covariance
/// of the channel outputs.
struct EnsembleStats {
    int n_channels = 0;
    std::vector<double> mean_present;
    std::vector<double> mean_absent;
    std::vector<double> delta_mean;
    std::vector<double> cov;  // L x L row-major, symmetric
};

/// Crops the axial slice at the defect's longitudinal midpoint to
/// size x size, centered on the defect centroid. Throws ExtractionError if
/// the crop does not fit (no silent clamping).
RoiImage extract_roi(const Volume3D& v, VoxelIndex defect_center, int size = 32);

/// Affine gray-level windowing: min -> 0, max -> 255. A constant ROI maps to
/// all zeros.
RoiImage window_gray(const RoiImage& roi);

/// Builds L channels with first band starting at f0 and of width w0
/// (cycles/pixel); each subsequent band is adjacent with double the width.
ChannelMatrix build_channels(int n_channels = 5, double f0 = 1.0 / 64.0,
                             double w0 = 1.0 / 64.0, int size = 32);

/// v = U * (roi flattened).
FeatureVector apply_channels(const ChannelMatrix& u, const RoiImage& roi);

EnsembleStats ensemble_stats(const std::vector<FeatureVector>& present,
                             const std::vector<FeatureVector>& absent);

/// Hotelling SNR sqrt(delta_mean' K^-1 delta_mean). The covariance inverse is
/// the symmetric eigen-inverse with eigenvalues floored at 1e-10 x largest.
double cho_snr(const EnsembleStats& stats);

struct LooStatistics {
    std::vector<double> t_present;  // ordered as the input lists
    std::vector<double> t_absent;
};

/// Leave-one-out CHO test statistics: for each feature vector, the Hotelling
/// template is built from all remaining vectors and applied to the held-out
/// one.
LooStatistics cho_loo_test_statistics(const std::vector<FeatureVector>& present,
                                      const std::vector<FeatureVector>& absent);

}  // namespace obsbench
