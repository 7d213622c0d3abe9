#pragma once

#include <vector>

#include "obsbench/grid.hpp"
#include "obsbench/imaging.hpp"
#include "obsbench/projector.hpp"

namespace obsbench {

struct ReconConfig {
    int n_iterations = 4;
    int n_subsets = 4;
    bool model_attenuation = true;
    bool model_blur = true;
    double epsilon = 1e-12;  // safe-division floor; 0/0 ratios map to 0

    void validate(int n_views) const;
};

/// Per-subset sensitivity images (backprojections of ones). They depend only
/// on the operator and subset layout, so callers reconstructing several dose
/// levels of one case can compute them once.
std::vector<Volume3D> osem_sensitivity(const ProjectionOperator& op, const ReconConfig& cfg);

/// Ordered-subsets EM with a multiplicative update. Views are assigned
/// round-robin to subsets (view i -> subset i mod n_subsets) so each subset
/// covers the arc evenly. Initialization is a uniform volume of ones; voxels
/// with zero sensitivity stay at zero.
Volume3D osem(const ProjectionOperator& op, const std::vector<std::vector<double>>& data,
              const ReconConfig& cfg);
Volume3D osem(const ProjectionOperator& op, const std::vector<std::vector<double>>& data,
              const ReconConfig& cfg, const std::vector<Volume3D>& sensitivity);

/// Convenience overload matching the acquisition geometry: reconstructs with
/// the same projector as the simulation, honoring the model_* flags.
Volume3D osem(const ProjectionSet& p, const Volume3D& attenuation,
              const SystemModel& system, const ReconConfig& cfg);

/// Poisson log-likelihood sum_i (g_i ln yhat_i - yhat_i), up to constants.
double poisson_log_likelihood(const ProjectionOperator& op,
                              const std::vector<std::vector<double>>& data,
                              const Volume3D& f);

/// 3-D frequency-domain low-pass with radial response
/// |H(f)| = (1 + (f/cutoff)^(2 order))^(-1/2); frequencies in 1/cm from the
/// voxel pitch. `squared_gain` selects the squared-magnitude convention
/// (1 + (f/fc)^(2n))^(-1) instead.
Volume3D butterworth_filter(const Volume3D& v, int order = 5, double cutoff_cm = 0.4,
                            bool squared_gain = false);

/// max(v, 0) voxelwise.
Volume3D clip_negative(const Volume3D& v);

}  // namespace obsbench
