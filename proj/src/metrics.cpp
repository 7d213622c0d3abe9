#include "obsbench/metrics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "obsbench/errors.hpp"

namespace obsbench {

namespace {

void require_same_grid(const Volume3D& a, const Volume3D& b, const char* what) {
    if (!a.same_grid(b)) throw GeometryError(std::string(what) + ": volume grids differ");
}

/// Separable Gaussian smoothing in place, truncated window with per-voxel
/// weight renormalization at the boundary.
void gaussian_smooth_renorm(std::vector<double>& v, Dims d, int radius, double sigma) {
    std::vector<double> taps(2 * radius + 1);
    for (int j = -radius; j <= radius; ++j)
        taps[radius + j] = std::exp(-0.5 * (j / sigma) * (j / sigma));

    const int n[3] = {d.nx, d.ny, d.nz};
    const std::size_t stride[3] = {1, std::size_t(d.nx), std::size_t(d.nx) * d.ny};
    std::vector<double> line;
    for (int axis = 0; axis < 3; ++axis) {
        const int len = n[axis];
        const std::size_t st = stride[axis];
        const int n_lines_a = n[(axis + 1) % 3];
        const int n_lines_b = n[(axis + 2) % 3];
        const std::size_t st_a = stride[(axis + 1) % 3];
        const std::size_t st_b = stride[(axis + 2) % 3];
        line.resize(len);
        for (int b = 0; b < n_lines_b; ++b) {
            for (int a = 0; a < n_lines_a; ++a) {
                double* base = v.data() + st_a * a + st_b * b;
                for (int i = 0; i < len; ++i) line[i] = base[st * i];
                for (int i = 0; i < len; ++i) {
                    const int jlo = std::max(-radius, -i);
                    const int jhi = std::min(radius, len - 1 - i);
                    double acc = 0.0, wsum = 0.0;
                    for (int j = jlo; j <= jhi; ++j) {
                        acc += taps[radius + j] * line[i + j];
                        wsum += taps[radius + j];
                    }
                    base[st * i] = acc / wsum;
                }
            }
        }
    }
}

}  // namespace

double rmse(const Volume3D& test, const Volume3D& ref) {
    require_same_grid(test, ref, "rmse");
    double acc = 0.0;
    for (std::size_t i = 0; i < test.data.size(); ++i) {
        const double d = test.data[i] - ref.data[i];
        acc += d * d;
    }
    return std::sqrt(acc / double(test.data.size()));
}

double ssim(const Volume3D& test, const Volume3D& ref, double dynamic_range,
            const SsimParams& params) {
    require_same_grid(test, ref, "ssim");
    double range = dynamic_range;
    if (range <= 0.0) range = ref.max_value() - ref.min_value();
    if (range <= 0.0) range = 1.0;  // constant reference: fall back to unit range
    const double c1 = (params.k1 * range) * (params.k1 * range);
    const double c2 = (params.k2 * range) * (params.k2 * range);

    // local moments via Gaussian smoothing of x, y, x^2, y^2, xy
    const std::size_t n = test.data.size();
    std::vector<double> mx = test.data;
    std::vector<double> my = ref.data;
    std::vector<double> mxx(n), myy(n), mxy(n);
    for (std::size_t i = 0; i < n; ++i) {
        mxx[i] = test.data[i] * test.data[i];
        myy[i] = ref.data[i] * ref.data[i];
        mxy[i] = test.data[i] * ref.data[i];
    }
    for (auto* m : {&mx, &my, &mxx, &myy, &mxy})
        gaussian_smooth_renorm(*m, test.dims, params.window_radius, params.window_sigma);

    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double vx = mxx[i] - mx[i] * mx[i];
        const double vy = myy[i] - my[i] * my[i];
        const double cxy = mxy[i] - mx[i] * my[i];
        const double num = (2.0 * mx[i] * my[i] + c1) * (2.0 * cxy + c2);
        const double den = (mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2);
        acc += num / den;
    }
    return acc / double(n);
}

double psnr(const Volume3D& test, const Volume3D& ref, double peak) {
    require_same_grid(test, ref, "psnr");
    if (!(peak > 0.0)) throw ParameterError("psnr: peak must be positive");
    const double e = rmse(test, ref);
    if (e == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(peak / e);
}

FidelityResult compute_fidelity(const Volume3D& test, const Volume3D& ref) {
    FidelityResult r;
    r.rmse = rmse(test, ref);
    double range = ref.max_value() - ref.min_value();
    if (range <= 0.0) range = 1.0;
    r.ssim = ssim(test, ref, range);
    r.psnr = psnr(test, ref, range);
    return r;
}

}  // namespace obsbench
