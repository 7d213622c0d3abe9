#include "obsbench/recon.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>

#include "obsbench/errors.hpp"

namespace obsbench {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution on distinct
// plans is.
std::mutex g_fftw_mutex;

std::vector<std::vector<int>> subset_views(int n_views, int n_subsets) {
    std::vector<std::vector<int>> subsets(n_subsets);
    for (int v = 0; v < n_views; ++v) subsets[v % n_subsets].push_back(v);
    return subsets;
}

}  // namespace

void ReconConfig::validate(int n_views) const {
    if (n_iterations < 1) throw ParameterError("recon: n_iterations must be >= 1");
    if (n_subsets < 1) throw ParameterError("recon: n_subsets must be >= 1");
    if (n_views % n_subsets != 0)
        throw ParameterError("recon: n_views must be divisible by n_subsets");
    if (!(epsilon > 0.0)) throw ParameterError("recon: epsilon must be positive");
}

std::vector<Volume3D> osem_sensitivity(const ProjectionOperator& op, const ReconConfig& cfg) {
    cfg.validate(op.n_views());
    const auto subsets = subset_views(op.n_views(), cfg.n_subsets);
    std::vector<Volume3D> sens;
    sens.reserve(subsets.size());
    std::vector<double> ones(op.bins_per_view(), 1.0);
    for (const auto& views : subsets) {
        Volume3D s = op.make_volume();
        for (int v : views) op.backproject_view(v, ones, s);
        sens.push_back(std::move(s));
    }
    return sens;
}

Volume3D osem(const ProjectionOperator& op, const std::vector<std::vector<double>>& data,
              const ReconConfig& cfg) {
    return osem(op, data, cfg, osem_sensitivity(op, cfg));
}

Volume3D osem(const ProjectionOperator& op, const std::vector<std::vector<double>>& data,
              const ReconConfig& cfg, const std::vector<Volume3D>& sens) {
    const int n_views = op.n_views();
    cfg.validate(n_views);
    if (int(data.size()) != n_views)
        throw GeometryError("osem: data view count does not match the operator");
    for (const auto& v : data)
        if (v.size() != op.bins_per_view())
            throw GeometryError("osem: bin count does not match the operator");
    if (int(sens.size()) != cfg.n_subsets)
        throw GeometryError("osem: sensitivity images do not match the subset count");

    const auto subsets = subset_views(n_views, cfg.n_subsets);

    Volume3D f = op.make_volume();
    f.fill(1.0);

    std::vector<double> yhat;
    std::vector<double> ratio(op.bins_per_view());
    for (int it = 0; it < cfg.n_iterations; ++it) {
        for (std::size_t s = 0; s < subsets.size(); ++s) {
            Volume3D num = op.make_volume();
            for (int v : subsets[s]) {
                op.forward_view(f, v, yhat);
                const std::vector<double>& g = data[v];
                for (std::size_t i = 0; i < ratio.size(); ++i)
                    ratio[i] = g[i] / (yhat[i] + cfg.epsilon);
                op.backproject_view(v, ratio, num);
            }
            const std::vector<double>& sv = sens[s].data;
            for (std::size_t i = 0; i < f.data.size(); ++i)
                f.data[i] = sv[i] > 0.0 ? f.data[i] * num.data[i] / sv[i] : 0.0;
        }
    }
    return f;
}

Volume3D osem(const ProjectionSet& p, const Volume3D& attenuation,
              const SystemModel& system, const ReconConfig& cfg) {
    if (int(p.views.size()) != system.n_views)
        throw GeometryError("osem: projection view count does not match the system");
    ProjectorFlags flags;
    flags.attenuation = cfg.model_attenuation;
    flags.blur = cfg.model_blur;
    SpectProjector op(attenuation, system, flags);
    return osem(op, p.views, cfg);
}

double poisson_log_likelihood(const ProjectionOperator& op,
                              const std::vector<std::vector<double>>& data,
                              const Volume3D& f) {
    double ll = 0.0;
    std::vector<double> yhat;
    for (int v = 0; v < op.n_views(); ++v) {
        op.forward_view(f, v, yhat);
        const std::vector<double>& g = data[v];
        for (std::size_t i = 0; i < yhat.size(); ++i) {
            if (yhat[i] > 0.0)
                ll += g[i] * std::log(yhat[i]) - yhat[i];
            else if (g[i] > 0.0)
                return -std::numeric_limits<double>::infinity();
        }
    }
    return ll;
}

Volume3D butterworth_filter(const Volume3D& v, int order, double cutoff_cm,
                            bool squared_gain) {
    if (!(cutoff_cm > 0.0)) throw ParameterError("butterworth: cutoff must be positive");
    if (order < 1) throw ParameterError("butterworth: order must be >= 1");
    validate_volume(v, "butterworth input", /*nonnegative=*/false);

    const int nx = v.dims.nx, ny = v.dims.ny, nz = v.dims.nz;
    const int nxh = nx / 2 + 1;
    const std::size_t n_total = v.dims.count();

    std::vector<double> real(n_total);
    std::vector<std::complex<double>> freq(std::size_t(nxh) * ny * nz);

    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fwd = fftw_plan_dft_r2c_3d(nz, ny, nx, real.data(),
                                   reinterpret_cast<fftw_complex*>(freq.data()),
                                   FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_3d(nz, ny, nx, reinterpret_cast<fftw_complex*>(freq.data()),
                                   real.data(), FFTW_ESTIMATE);
    }

    std::copy(v.data.begin(), v.data.end(), real.begin());
    fftw_execute(fwd);

    const double fx_step = 1.0 / (nx * v.pitch.dx);
    const double fy_step = 1.0 / (ny * v.pitch.dy);
    const double fz_step = 1.0 / (nz * v.pitch.dz);
    const double norm = 1.0 / double(n_total);
    std::size_t idx = 0;
    for (int kz = 0; kz < nz; ++kz) {
        const int wz = kz <= nz / 2 ? kz : kz - nz;
        const double fz = wz * fz_step;
        for (int ky = 0; ky < ny; ++ky) {
            const int wy = ky <= ny / 2 ? ky : ky - ny;
            const double fy = wy * fy_step;
            for (int kx = 0; kx < nxh; ++kx, ++idx) {
                const double fx = kx * fx_step;
                const double f = std::sqrt(fx * fx + fy * fy + fz * fz);
                const double r = std::pow(f / cutoff_cm, 2.0 * order);
                const double gain = squared_gain ? 1.0 / (1.0 + r) : 1.0 / std::sqrt(1.0 + r);
                freq[idx] *= gain * norm;
            }
        }
    }

    fftw_execute(bwd);
    Volume3D out(v.dims, v.pitch);
    std::copy(real.begin(), real.end(), out.data.begin());

    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    return out;
}

Volume3D clip_negative(const Volume3D& v) {
    Volume3D out = v;
    for (double& x : out.data) x = std::max(x, 0.0);
    return out;
}

}  // namespace obsbench
