#include "obsbench/denoise.hpp"

#include <cmath>
#include <vector>

#include "obsbench/errors.hpp"
#include "obsbench/recon.hpp"
#include "obsbench/volume_io.hpp"

namespace obsbench {

namespace {

int reflect_index(int i, int n) {
    // half-sample symmetric extension: -1 -> 0, n -> n-1
    while (i < 0 || i >= n) {
        if (i < 0) i = -1 - i;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

void smooth_axis(std::vector<double>& v, Dims d, int axis, const std::vector<double>& taps,
                 int radius) {
    const int n[3] = {d.nx, d.ny, d.nz};
    const std::size_t stride[3] = {1, std::size_t(d.nx), std::size_t(d.nx) * d.ny};
    const int len = n[axis];
    const std::size_t st = stride[axis];
    const int n_lines_a = n[(axis + 1) % 3];
    const int n_lines_b = n[(axis + 2) % 3];
    const std::size_t st_a = stride[(axis + 1) % 3];
    const std::size_t st_b = stride[(axis + 2) % 3];

    std::vector<double> line(len);
    for (int b = 0; b < n_lines_b; ++b) {
        for (int a = 0; a < n_lines_a; ++a) {
            double* base = v.data() + st_a * a + st_b * b;
            for (int i = 0; i < len; ++i) line[i] = base[st * i];
            for (int i = 0; i < len; ++i) {
                double acc = 0.0;
                for (int j = -radius; j <= radius; ++j)
                    acc += taps[radius + j] * line[reflect_index(i + j, len)];
                base[st * i] = acc;
            }
        }
    }
}

}  // namespace

void DenoiserSpec::validate() const {
    switch (kind) {
        case DenoiserKind::identity:
            break;
        case DenoiserKind::gaussian:
            if (!(sigma_cm > 0.0)) throw ParameterError("denoiser: sigma must be positive");
            break;
        case DenoiserKind::butterworth:
            if (!(cutoff_cm > 0.0)) throw ParameterError("denoiser: cutoff must be positive");
            if (order < 1) throw ParameterError("denoiser: order must be >= 1");
            break;
        case DenoiserKind::external:
            if (source_dir.empty())
                throw ParameterError("denoiser: external source_dir must be set");
            break;
    }
}

Volume3D gaussian_smooth(const Volume3D& v, double sigma_cm) {
    if (!(sigma_cm > 0.0)) throw ParameterError("gaussian_smooth: sigma must be positive");
    Volume3D out = v;
    const double pitches[3] = {v.pitch.dx, v.pitch.dy, v.pitch.dz};
    for (int axis = 0; axis < 3; ++axis) {
        const double sigma_px = sigma_cm / pitches[axis];
        if (sigma_px < 0.05) continue;
        const int radius = std::max(1, int(std::ceil(3.0 * sigma_px)));
        std::vector<double> taps(2 * radius + 1);
        double sum = 0.0;
        for (int j = -radius; j <= radius; ++j) {
            taps[radius + j] = std::exp(-0.5 * (j / sigma_px) * (j / sigma_px));
            sum += taps[radius + j];
        }
        for (double& t : taps) t /= sum;
        smooth_axis(out.data, v.dims, axis, taps, radius);
    }
    return out;
}

Volume3D denoise(const Volume3D& v, const DenoiserSpec& spec, const std::string& case_id) {
    spec.validate();
    switch (spec.kind) {
        case DenoiserKind::identity:
            return v;
        case DenoiserKind::gaussian:
            return clip_negative(gaussian_smooth(v, spec.sigma_cm));
        case DenoiserKind::butterworth:
            return clip_negative(butterworth_filter(v, spec.order, spec.cutoff_cm));
        case DenoiserKind::external: {
            const auto path = spec.source_dir / (case_id + ".vol");
            if (!std::filesystem::exists(path))
                throw IngestionError("denoise: no external volume for case " + case_id +
                                     " at " + path.string());
            Volume3D ext = load_volume(path);
            if (!ext.same_grid(v))
                throw IngestionError("denoise: external volume for case " + case_id +
                                     " has mismatched dims/pitch");
            return clip_negative(ext);
        }
    }
    throw ParameterError("denoise: unknown denoiser kind");
}

}  // namespace obsbench
