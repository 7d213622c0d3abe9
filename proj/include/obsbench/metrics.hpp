#pragma once

#include "obsbench/grid.hpp"

namespace obsbench {

struct FidelityResult {
    double rmse = 0.0;
    double ssim = 0.0;
    double psnr = 0.0;  // dB; +infinity when test == ref
};

struct SsimParams {
    double k1 = 0.01;
    double k2 = 0.03;
    int window_radius = 5;     // voxels
    double window_sigma = 1.5; // voxels
};

/// sqrt(mean of squared voxel differences).
double rmse(const Volume3D& test, const Volume3D& ref);

/// Mean local SSIM over voxels with a 3-D Gaussian window; window weights are
/// renormalized where the window is truncated by the volume boundary.
/// dynamic_range <= 0 selects the reference max - min.
double ssim(const Volume3D& test, const Volume3D& ref, double dynamic_range = 0.0,
            const SsimParams& params = {});

/// 20 log10(peak / rmse); +infinity when rmse == 0.
double psnr(const Volume3D& test, const Volume3D& ref, double peak);

/// All three metrics with the shared defaults: dynamic range and PSNR peak
/// both taken from the reference volume's max - min.
FidelityResult compute_fidelity(const Volume3D& test, const Volume3D& ref);

}  // namespace obsbench
