#pragma once

#include <cstddef>
#include <vector>

namespace obsbench {

struct Dims {
    int nx = 0;
    int ny = 0;
    int nz = 0;

    bool operator==(const Dims&) const = default;
    std::size_t count() const { return std::size_t(nx) * ny * nz; }
};

struct Pitch {
    double dx = 0.0;  // cm
    double dy = 0.0;
    double dz = 0.0;

    bool operator==(const Pitch&) const = default;
    double voxel_volume() const { return dx * dy * dz; }
};

/// Dense 3-D scalar grid (activity, attenuation, or reconstructed values).
/// Data is stored x-fastest: index = x + nx*(y + ny*z). The grid is centered
/// on the isocenter, so voxel (ix,iy,iz) has world coordinates
/// ((ix-(nx-1)/2)*dx, (iy-(ny-1)/2)*dy, (iz-(nz-1)/2)*dz) in cm.
struct Volume3D {
    Dims dims;
    Pitch pitch;
    std::vector<double> data;

    Volume3D() = default;
    Volume3D(Dims d, Pitch p, double fill = 0.0)
        : dims(d), pitch(p), data(d.count(), fill) {}

    std::size_t index(int x, int y, int z) const {
        return std::size_t(x) + std::size_t(dims.nx) * (std::size_t(y) + std::size_t(dims.ny) * z);
    }
    double& at(int x, int y, int z) { return data[index(x, y, z)]; }
    double at(int x, int y, int z) const { return data[index(x, y, z)]; }

    double x_of(int ix) const { return (ix - 0.5 * (dims.nx - 1)) * pitch.dx; }
    double y_of(int iy) const { return (iy - 0.5 * (dims.ny - 1)) * pitch.dy; }
    double z_of(int iz) const { return (iz - 0.5 * (dims.nz - 1)) * pitch.dz; }

    bool same_grid(const Volume3D& other) const {
        return dims == other.dims && pitch == other.pitch;
    }

    void fill(double v) { data.assign(data.size(), v); }
    double sum() const;
    double max_value() const;
    double min_value() const;
};

/// Throws ParameterError if any entry is non-finite, or negative when
/// `nonnegative` is requested. `what` names the volume in the message.
void validate_volume(const Volume3D& v, const char* what, bool nonnegative = true);

/// Round-trip every voxel through IEEE float32, matching the precision of the
/// on-disk volume format so in-memory and cached pipelines agree bit-exactly.
Volume3D quantize_f32(const Volume3D& v);

}  // namespace obsbench
