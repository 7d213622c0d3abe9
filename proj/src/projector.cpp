#include "obsbench/projector.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "obsbench/errors.hpp"
#include "obsbench/rng.hpp"

namespace obsbench {

namespace {

constexpr double kFwhmToSigma = 1.0 / 2.3548200450309493;  // 1 / (2 sqrt(2 ln 2))
constexpr std::size_t kAttCacheLimitBytes = 256ull << 20;

/// Separable zero-padded convolution with a symmetric kernel. Zero padding
/// keeps the operation self-adjoint, which the OSEM update relies on.
void conv2_same(double* img, int w, int h, const double* taps, int radius, double* scratch) {
    // u pass: img -> scratch; interior pixels take the branch-free path
    const int lo = std::min(radius, w);
    const int hi = std::max(w - radius, lo);
    for (int y = 0; y < h; ++y) {
        const double* row = img + std::size_t(y) * w;
        double* out = scratch + std::size_t(y) * w;
        auto edge = [&](int x) {
            const int jlo = std::max(-radius, -x);
            const int jhi = std::min(radius, w - 1 - x);
            double acc = 0.0;
            for (int j = jlo; j <= jhi; ++j) acc += taps[radius + j] * row[x + j];
            out[x] = acc;
        };
        for (int x = 0; x < lo; ++x) edge(x);
        for (int x = lo; x < hi; ++x) {
            double acc = 0.0;
            for (int j = -radius; j <= radius; ++j) acc += taps[radius + j] * row[x + j];
            out[x] = acc;
        }
        for (int x = hi; x < w; ++x) edge(x);
    }
    // v pass: scratch -> img
    std::memset(img, 0, sizeof(double) * std::size_t(w) * h);
    for (int y = 0; y < h; ++y) {
        double* out = img + std::size_t(y) * w;
        for (int j = -radius; j <= radius; ++j) {
            const int ys = y + j;
            if (ys < 0 || ys >= h) continue;
            const double tap = taps[radius + j];
            const double* row = scratch + std::size_t(ys) * w;
            for (int x = 0; x < w; ++x) out[x] += tap * row[x];
        }
    }
}

}  // namespace

void SystemModel::validate() const {
    if (n_views < 1) throw ParameterError("system: n_views must be >= 1");
    if (nu < 1 || nv < 1) throw ParameterError("system: detector dims must be >= 1");
    if (!(arc_deg > 0.0)) throw ParameterError("system: arc must be positive");
    if (!(orbit_radius_cm > 0.0) || !(bin_pitch_cm > 0.0))
        throw ParameterError("system: lengths must be positive");
    if (!(intrinsic_fwhm_cm >= 0.0) || fwhm_at_10cm_cm < intrinsic_fwhm_cm)
        throw ParameterError("system: fwhm_at_10cm must be >= intrinsic_fwhm");
}

double SystemModel::view_angle_rad(int view) const {
    return (start_angle_deg + arc_deg * double(view) / double(n_views)) * M_PI / 180.0;
}

double SystemModel::fwhm_slope() const {
    const double d = fwhm_at_10cm_cm * fwhm_at_10cm_cm - intrinsic_fwhm_cm * intrinsic_fwhm_cm;
    return std::sqrt(std::max(d, 0.0)) / 10.0;
}

double ProjectionSet::total() const {
    double s = 0.0;
    for (const auto& v : views)
        for (double x : v) s += x;
    return s;
}

struct SpectProjector::Impl {
    SystemModel sys;
    ProjectorFlags flags;
    Volume3D mu;  // attenuation map, kept for lazy per-view path integrals
    int nt = 0;
    double pitch = 0.0;        // rotated-grid spacing = bin pitch, cm
    double splat_scale = 0.0;  // voxel volume / rotated-cell volume

    std::vector<double> kernel_taps;   // flattened per-plane kernels
    std::vector<int> kernel_offset;    // offset into kernel_taps per plane
    std::vector<int> kernel_radius;    // -1 means identity (no blur)

    bool cache_att = false;
    mutable std::vector<std::vector<float>> att_cache;

    // scratch buffers; one projector instance is single-threaded by contract
    mutable std::vector<double> planes;
    mutable std::vector<unsigned char> has_mass;
    mutable std::vector<double> emit;
    mutable std::vector<double> conv_scratch;
    mutable std::vector<float> att_scratch;
    mutable std::vector<double> cum_scratch;

    std::size_t plane_stride() const { return std::size_t(sys.nu) * sys.nv; }
    std::size_t plane_cells() const { return plane_stride() * nt; }

    void build_kernels();
    void splat(const Volume3D& vol, double cosv, double sinv, double* dst,
               unsigned char* mass) const;
    void gather(const double* src, double cosv, double sinv, Volume3D& accum) const;
    const float* att_planes(int view) const;
    void compute_att(int view, std::vector<float>& out) const;
};

SpectProjector::SpectProjector(const Volume3D& attenuation, const SystemModel& system,
                               ProjectorFlags flags)
    : impl_(std::make_unique<Impl>()) {
    system.validate();
    validate_volume(attenuation, "attenuation");
    impl_->sys = system;
    impl_->flags = flags;
    impl_->mu = attenuation;
    impl_->pitch = system.bin_pitch_cm;

    const double diag = std::hypot(attenuation.dims.nx * attenuation.pitch.dx,
                                   attenuation.dims.ny * attenuation.pitch.dy);
    impl_->nt = int(std::ceil(diag / impl_->pitch)) + 4;
    impl_->splat_scale =
        attenuation.pitch.voxel_volume() / (impl_->pitch * impl_->pitch * impl_->pitch);

    impl_->build_kernels();

    const std::size_t att_bytes =
        impl_->plane_cells() * sizeof(float) * std::size_t(system.n_views);
    impl_->cache_att = flags.attenuation && att_bytes <= kAttCacheLimitBytes;
    if (impl_->cache_att) impl_->att_cache.resize(system.n_views);

    impl_->planes.resize(impl_->plane_cells());
    impl_->has_mass.resize(impl_->nt);
    impl_->emit.resize(impl_->plane_stride());
    impl_->conv_scratch.resize(impl_->plane_stride());
    impl_->cum_scratch.resize(impl_->plane_stride());
}

SpectProjector::~SpectProjector() = default;

int SpectProjector::n_views() const { return impl_->sys.n_views; }
std::size_t SpectProjector::bins_per_view() const { return impl_->plane_stride(); }
int SpectProjector::n_depth_planes() const { return impl_->nt; }

Volume3D SpectProjector::make_volume() const {
    return Volume3D(impl_->mu.dims, impl_->mu.pitch);
}

void SpectProjector::Impl::build_kernels() {
    kernel_offset.assign(nt, 0);
    kernel_radius.assign(nt, -1);
    if (!flags.blur) return;
    const double slope = sys.fwhm_slope();
    for (int k = 0; k < nt; ++k) {
        const double t = (k - 0.5 * (nt - 1)) * pitch;
        const double depth = std::max(sys.orbit_radius_cm - t, 0.0);
        const double fwhm = std::hypot(sys.intrinsic_fwhm_cm, slope * depth);
        const double sigma_px = fwhm * kFwhmToSigma / pitch;
        if (sigma_px < 0.05) continue;  // effectively a delta
        const int radius = std::max(1, int(std::ceil(3.0 * sigma_px)));
        kernel_offset[k] = int(kernel_taps.size());
        kernel_radius[k] = radius;
        double sum = 0.0;
        for (int j = -radius; j <= radius; ++j) {
            const double w = std::exp(-0.5 * (j / sigma_px) * (j / sigma_px));
            kernel_taps.push_back(w);
            sum += w;
        }
        for (int j = 0; j <= 2 * radius; ++j) kernel_taps[kernel_offset[k] + j] /= sum;
    }
}

void SpectProjector::Impl::splat(const Volume3D& vol, double cosv, double sinv,
                                 double* dst, unsigned char* mass) const {
    const int nu = sys.nu, nv = sys.nv;
    const std::size_t stride = plane_stride();
    const double invp = 1.0 / pitch;
    const double uc = 0.5 * (nu - 1), tc = 0.5 * (nt - 1), vc = 0.5 * (nv - 1);
    const double du = -sinv * vol.pitch.dx * invp;
    const double dt = cosv * vol.pitch.dx * invp;

    for (int iz = 0; iz < vol.dims.nz; ++iz) {
        const double fv = vol.z_of(iz) * invp + vc;
        const int j0 = int(std::floor(fv));
        const double wj1 = fv - j0, wj0 = 1.0 - wj1;
        const bool j0ok = j0 >= 0 && j0 < nv;
        const bool j1ok = j0 + 1 >= 0 && j0 + 1 < nv;
        if (!j0ok && !j1ok) continue;
        for (int iy = 0; iy < vol.dims.ny; ++iy) {
            const double x0 = vol.x_of(0);
            const double y = vol.y_of(iy);
            double fu = (-sinv * x0 + cosv * y) * invp + uc;
            double ft = (cosv * x0 + sinv * y) * invp + tc;
            const double* src = &vol.data[vol.index(0, iy, iz)];
            for (int ix = 0; ix < vol.dims.nx; ++ix, fu += du, ft += dt) {
                const double a = src[ix];
                if (a == 0.0) continue;
                const double av = a * splat_scale;
                const int i0 = int(std::floor(fu));
                const int k0 = int(std::floor(ft));
                const double wi1 = fu - i0, wi0 = 1.0 - wi1;
                const double wk1 = ft - k0, wk0 = 1.0 - wk1;
                for (int dk = 0; dk < 2; ++dk) {
                    const int k = k0 + dk;
                    if (k < 0 || k >= nt) continue;
                    const double wk = dk ? wk1 : wk0;
                    if (wk == 0.0) continue;
                    mass[k] = 1;
                    double* plane = dst + std::size_t(k) * stride;
                    for (int dj = 0; dj < 2; ++dj) {
                        const int j = j0 + dj;
                        if (!(dj ? j1ok : j0ok)) continue;
                        const double wkj = wk * (dj ? wj1 : wj0) * av;
                        double* row = plane + std::size_t(j) * nu;
                        if (i0 >= 0 && i0 < nu) row[i0] += wkj * wi0;
                        if (i0 + 1 >= 0 && i0 + 1 < nu) row[i0 + 1] += wkj * wi1;
                    }
                }
            }
        }
    }
}

void SpectProjector::Impl::gather(const double* src, double cosv, double sinv,
                                  Volume3D& accum) const {
    const int nu = sys.nu, nv = sys.nv;
    const std::size_t stride = plane_stride();
    const double invp = 1.0 / pitch;
    const double uc = 0.5 * (nu - 1), tc = 0.5 * (nt - 1), vc = 0.5 * (nv - 1);
    const double du = -sinv * accum.pitch.dx * invp;
    const double dt = cosv * accum.pitch.dx * invp;

    for (int iz = 0; iz < accum.dims.nz; ++iz) {
        const double fv = accum.z_of(iz) * invp + vc;
        const int j0 = int(std::floor(fv));
        const double wj1 = fv - j0, wj0 = 1.0 - wj1;
        const bool j0ok = j0 >= 0 && j0 < nv;
        const bool j1ok = j0 + 1 >= 0 && j0 + 1 < nv;
        if (!j0ok && !j1ok) continue;
        for (int iy = 0; iy < accum.dims.ny; ++iy) {
            const double x0 = accum.x_of(0);
            const double y = accum.y_of(iy);
            double fu = (-sinv * x0 + cosv * y) * invp + uc;
            double ft = (cosv * x0 + sinv * y) * invp + tc;
            double* out = &accum.data[accum.index(0, iy, iz)];
            for (int ix = 0; ix < accum.dims.nx; ++ix, fu += du, ft += dt) {
                const int i0 = int(std::floor(fu));
                const int k0 = int(std::floor(ft));
                const double wi1 = fu - i0, wi0 = 1.0 - wi1;
                const double wk1 = ft - k0, wk0 = 1.0 - wk1;
                double acc = 0.0;
                for (int dk = 0; dk < 2; ++dk) {
                    const int k = k0 + dk;
                    if (k < 0 || k >= nt) continue;
                    const double wk = dk ? wk1 : wk0;
                    const double* plane = src + std::size_t(k) * stride;
                    for (int dj = 0; dj < 2; ++dj) {
                        const int j = j0 + dj;
                        if (!(dj ? j1ok : j0ok)) continue;
                        const double wkj = wk * (dj ? wj1 : wj0);
                        const double* row = plane + std::size_t(j) * nu;
                        double r = 0.0;
                        if (i0 >= 0 && i0 < nu) r += row[i0] * wi0;
                        if (i0 + 1 >= 0 && i0 + 1 < nu) r += row[i0 + 1] * wi1;
                        acc += wkj * r;
                    }
                }
                out[ix] += acc * splat_scale;
            }
        }
    }
}

void SpectProjector::Impl::compute_att(int view, std::vector<float>& out) const {
    const std::size_t stride = plane_stride();
    out.resize(plane_cells());
    const double angle = sys.view_angle_rad(view);
    const double cosv = std::cos(angle), sinv = std::sin(angle);

    std::fill(planes.begin(), planes.end(), 0.0);
    std::fill(has_mass.begin(), has_mass.end(), 0);
    splat(mu, cosv, sinv, planes.data(), has_mass.data());

    std::fill(cum_scratch.begin(), cum_scratch.end(), 0.0);
    // march from the detector side (largest t) toward the back of the volume
    for (int k = nt - 1; k >= 0; --k) {
        const double* m = planes.data() + std::size_t(k) * stride;
        float* a = out.data() + std::size_t(k) * stride;
        double* cum = cum_scratch.data();
        for (std::size_t i = 0; i < stride; ++i) {
            const double path = m[i] * pitch;
            a[i] = float(std::exp(-(cum[i] + 0.5 * path)));
            cum[i] += path;
        }
    }
}

const float* SpectProjector::Impl::att_planes(int view) const {
    if (!flags.attenuation) return nullptr;
    if (cache_att) {
        auto& slot = att_cache[view];
        if (slot.empty()) compute_att(view, slot);
        return slot.data();
    }
    compute_att(view, att_scratch);
    return att_scratch.data();
}

void SpectProjector::forward_view(const Volume3D& f, int view,
                                  std::vector<double>& bins) const {
    Impl& im = *impl_;
    if (!f.same_grid(im.mu))
        throw GeometryError("project: activity and attenuation grids differ");
    if (view < 0 || view >= im.sys.n_views) throw ParameterError("view index out of range");

    const float* att = im.att_planes(view);  // computed before reusing scratch planes
    const std::size_t stride = im.plane_stride();
    const double angle = im.sys.view_angle_rad(view);
    const double cosv = std::cos(angle), sinv = std::sin(angle);

    std::fill(im.planes.begin(), im.planes.end(), 0.0);
    std::fill(im.has_mass.begin(), im.has_mass.end(), 0);
    im.splat(f, cosv, sinv, im.planes.data(), im.has_mass.data());

    bins.assign(stride, 0.0);
    for (int k = im.nt - 1; k >= 0; --k) {
        if (!im.has_mass[k]) continue;
        const double* p = im.planes.data() + std::size_t(k) * stride;
        double* e = im.emit.data();
        if (att) {
            const float* a = att + std::size_t(k) * stride;
            for (std::size_t i = 0; i < stride; ++i) e[i] = p[i] * a[i];
        } else {
            std::copy(p, p + stride, e);
        }
        if (im.kernel_radius[k] >= 0)
            conv2_same(e, im.sys.nu, im.sys.nv, im.kernel_taps.data() + im.kernel_offset[k],
                       im.kernel_radius[k], im.conv_scratch.data());
        for (std::size_t i = 0; i < stride; ++i) bins[i] += e[i];
    }
    for (double& b : bins) b *= im.pitch;
}

void SpectProjector::backproject_view(int view, const std::vector<double>& bins,
                                      Volume3D& accum) const {
    Impl& im = *impl_;
    if (!accum.same_grid(im.mu))
        throw GeometryError("backproject: accumulator grid differs from attenuation grid");
    if (bins.size() != im.plane_stride())
        throw GeometryError("backproject: bin count mismatch");
    if (view < 0 || view >= im.sys.n_views) throw ParameterError("view index out of range");

    const float* att = im.att_planes(view);
    const std::size_t stride = im.plane_stride();
    const double angle = im.sys.view_angle_rad(view);
    const double cosv = std::cos(angle), sinv = std::sin(angle);

    // only depth planes under the volume's rotated footprint receive voxels
    const double hx = 0.5 * im.mu.dims.nx * im.mu.pitch.dx;
    const double hy = 0.5 * im.mu.dims.ny * im.mu.pitch.dy;
    const double text = hx * std::fabs(cosv) + hy * std::fabs(sinv);
    const double tc = 0.5 * (im.nt - 1);
    const int kmin = std::max(0, int(std::floor(-text / im.pitch + tc)) - 1);
    const int kmax = std::min(im.nt - 1, int(std::ceil(text / im.pitch + tc)) + 1);

    std::fill(im.planes.begin(), im.planes.end(), 0.0);
    for (int k = kmin; k <= kmax; ++k) {
        double* e = im.emit.data();
        std::copy(bins.begin(), bins.end(), e);
        if (im.kernel_radius[k] >= 0)
            conv2_same(e, im.sys.nu, im.sys.nv, im.kernel_taps.data() + im.kernel_offset[k],
                       im.kernel_radius[k], im.conv_scratch.data());
        double* p = im.planes.data() + std::size_t(k) * stride;
        if (att) {
            const float* a = att + std::size_t(k) * stride;
            for (std::size_t i = 0; i < stride; ++i) p[i] = e[i] * a[i] * im.pitch;
        } else {
            for (std::size_t i = 0; i < stride; ++i) p[i] = e[i] * im.pitch;
        }
    }
    im.gather(im.planes.data(), cosv, sinv, accum);
}

Volume3D SpectProjector::backproject_ones(const std::vector<int>& views) const {
    Volume3D sens = make_volume();
    std::vector<double> ones(bins_per_view(), 1.0);
    for (int v : views) backproject_view(v, ones, sens);
    return sens;
}

ProjectionSet project(const Volume3D& activity, const Volume3D& attenuation,
                      const SystemModel& system, ProjectorFlags flags) {
    if (!activity.same_grid(attenuation))
        throw GeometryError("project: activity and attenuation grids differ");
    validate_volume(activity, "activity");
    validate_volume(attenuation, "attenuation");

    SpectProjector op(attenuation, system, flags);
    ProjectionSet p;
    p.system = system;
    p.is_noisy = false;
    p.views.resize(system.n_views);
    for (int v = 0; v < system.n_views; ++v) op.forward_view(activity, v, p.views[v]);
    return p;
}

ProjectionSet scale_to_dose(const ProjectionSet& p, double normal_total, double fraction) {
    if (p.is_noisy) throw ParameterError("scale_to_dose: input must be noiseless");
    if (!(normal_total > 0.0)) throw ParameterError("scale_to_dose: normal_total must be > 0");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw ParameterError("scale_to_dose: fraction must be in (0, 1]");
    const double total = p.total();
    if (!(total > 0.0)) throw ScalingError("scale_to_dose: projection total is zero");

    const double factor = normal_total * fraction / total;
    ProjectionSet out = p;
    for (auto& view : out.views)
        for (double& b : view) b *= factor;
    return out;
}

ProjectionSet add_poisson_noise(const ProjectionSet& p, std::uint64_t seed) {
    if (p.is_noisy) throw ParameterError("add_poisson_noise: input must be noiseless");
    ProjectionSet out = p;
    out.is_noisy = true;
    for (std::size_t v = 0; v < out.views.size(); ++v) {
        Rng rng = Rng::derive(seed, {fnv1a64("poisson"), v});
        for (double& b : out.views[v]) {
            if (b < 0.0) throw ParameterError("add_poisson_noise: negative bin mean");
            b = double(rng.next_poisson(b));
        }
    }
    return out;
}

}  // namespace obsbench
