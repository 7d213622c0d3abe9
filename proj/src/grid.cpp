#include "obsbench/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "obsbench/errors.hpp"

namespace obsbench {

double Volume3D::sum() const {
    double s = 0.0;
    for (double v : data) s += v;
    return s;
}

double Volume3D::max_value() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : data) m = std::max(m, v);
    return m;
}

double Volume3D::min_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : data) m = std::min(m, v);
    return m;
}

void validate_volume(const Volume3D& v, const char* what, bool nonnegative) {
    if (v.dims.nx <= 0 || v.dims.ny <= 0 || v.dims.nz <= 0)
        throw ParameterError(std::string(what) + ": dims must be positive");
    if (v.pitch.dx <= 0.0 || v.pitch.dy <= 0.0 || v.pitch.dz <= 0.0)
        throw ParameterError(std::string(what) + ": pitch must be positive");
    if (v.data.size() != v.dims.count())
        throw ParameterError(std::string(what) + ": data size does not match dims");
    for (double x : v.data) {
        if (!std::isfinite(x))
            throw ParameterError(std::string(what) + ": non-finite voxel value");
        if (nonnegative && x < 0.0)
            throw ParameterError(std::string(what) + ": negative voxel value");
    }
}

Volume3D quantize_f32(const Volume3D& v) {
    Volume3D out = v;
    for (double& x : out.data) x = static_cast<double>(static_cast<float>(x));
    return out;
}

}  // namespace obsbench
