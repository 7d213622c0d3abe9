#pragma once

#include <memory>
#include <vector>

#include "obsbench/grid.hpp"
#include "obsbench/imaging.hpp"

namespace obsbench {

/// Linear forward/back projection pair used by OSEM. Implementations must be
/// exact adjoints of each other so the EM update retains its fixed-point and
/// monotonicity properties.
class ProjectionOperator {
public:
    virtual ~ProjectionOperator() = default;

    virtual int n_views() const = 0;
    virtual std::size_t bins_per_view() const = 0;
    virtual Volume3D make_volume() const = 0;

    virtual void forward_view(const Volume3D& f, int view, std::vector<double>& bins) const = 0;
    virtual void backproject_view(int view, const std::vector<double>& bins,
                                  Volume3D& accum) const = 0;
};

/// Rotation-based projector for the parallel-hole system. Per view, the
/// volume is resampled by trilinear splatting onto a grid aligned with the
/// detector (u transaxial, v axial, t depth), each depth plane is attenuated
/// by the cumulative path to the detector and convolved with the Gaussian for
/// its depth, and the planes are summed. Splatting conserves total activity,
/// and the backprojection is the exact adjoint by construction.
///
/// Attenuation factors per (view, depth plane) are cached lazily; one
/// instance must not be shared across threads.
class SpectProjector : public ProjectionOperator {
public:
    SpectProjector(const Volume3D& attenuation, const SystemModel& system,
                   ProjectorFlags flags = {});
    ~SpectProjector() override;

    int n_views() const override;
    std::size_t bins_per_view() const override;
    Volume3D make_volume() const override;

    void forward_view(const Volume3D& f, int view, std::vector<double>& bins) const override;
    void backproject_view(int view, const std::vector<double>& bins,
                          Volume3D& accum) const override;

    /// Backprojection of all-ones data over the given views (OSEM sensitivity).
    Volume3D backproject_ones(const std::vector<int>& views) const;

    int n_depth_planes() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace obsbench
