#pragma once

#include <cstdint>
#include <vector>

#include "obsbench/grid.hpp"

namespace obsbench {

/// Parallel-hole acquisition geometry and resolution model. Views are spaced
/// uniformly over `arc_deg` starting at `start_angle_deg`; the default sweep
/// runs left-posterior-oblique to right-anterior-oblique. The collimator
/// response is Gaussian with FWHM(d) = sqrt(intrinsic^2 + (slope*d)^2),
/// with the slope calibrated so FWHM(10 cm) matches `fwhm_at_10cm_cm`.
struct SystemModel {
    int n_views = 60;
    double arc_deg = 180.0;
    double start_angle_deg = -45.0;
    double orbit_radius_cm = 25.0;
    double bin_pitch_cm = 0.44;
    int nu = 64;   // transaxial bins
    int nv = 32;   // axial bins
    double intrinsic_fwhm_cm = 0.4;
    double fwhm_at_10cm_cm = 0.74;

    void validate() const;
    double view_angle_rad(int view) const;
    double fwhm_slope() const;  // cm of FWHM growth per cm of depth
    std::size_t bins_per_view() const { return std::size_t(nu) * nv; }
};

/// Stack of per-view detector-bin arrays (u-fastest within a view).
/// Values are expected counts when noiseless, integer counts when noisy.
struct ProjectionSet {
    SystemModel system;
    std::vector<std::vector<double>> views;
    bool is_noisy = false;

    double total() const;
};

struct ProjectorFlags {
    bool attenuation = true;
    bool blur = true;
};

/// Analytic forward projection: attenuated line integrals of activity with
/// depth-dependent Gaussian blur. Activity and attenuation must share a grid.
ProjectionSet project(const Volume3D& activity, const Volume3D& attenuation,
                      const SystemModel& system, ProjectorFlags flags = {});

/// Rescales noiseless expected counts so the total equals
/// normal_total * fraction. Requires 0 < fraction <= 1 and a nonzero input.
ProjectionSet scale_to_dose(const ProjectionSet& p, double normal_total, double fraction);

/// Independent Poisson draw per bin, mean equal to the input bin.
/// Per-view substreams are derived from (seed, view index), so results do not
/// depend on evaluation order.
ProjectionSet add_poisson_noise(const ProjectionSet& p, std::uint64_t seed);

}  // namespace obsbench
