#pragma once

#include <filesystem>
#include <string>

#include "obsbench/grid.hpp"

namespace obsbench {

enum class DenoiserKind { identity, gaussian, butterworth, external };

/// A pluggable denoising stage. Built-in smoothing denoisers stand in for
/// learned models; `external` ingests volumes produced by any outside tool,
/// one `<case_id>.vol` file per case.
struct DenoiserSpec {
    std::string name = "none";
    DenoiserKind kind = DenoiserKind::identity;
    double sigma_cm = 1.0;        // gaussian
    double cutoff_cm = 0.4;       // butterworth
    int order = 5;                // butterworth
    std::filesystem::path source_dir;  // external

    void validate() const;
};

/// Separable Gaussian smoothing with a normalized kernel and reflective
/// boundaries (total volume sum is preserved).
Volume3D gaussian_smooth(const Volume3D& v, double sigma_cm);

/// Applies the denoiser. identity returns the input unchanged; gaussian and
/// butterworth smooth and clip negatives; external loads
/// `source_dir/<case_id>.vol` and requires matching dims.
Volume3D denoise(const Volume3D& v, const DenoiserSpec& spec, const std::string& case_id);

}  // namespace obsbench
