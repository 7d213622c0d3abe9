#include "obsbench/eigenanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "obsbench/errors.hpp"

namespace obsbench {

EigenDecomposition jacobi_eigensym(int n, const std::vector<double>& matrix) {
    if (n < 1 || int(matrix.size()) != n * n)
        throw ParameterError("jacobi: matrix size does not match n");

    std::vector<double> a = matrix;
    std::vector<double> v(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[std::size_t(i) * n + i] = 1.0;

    auto A = [&](int r, int c) -> double& { return a[std::size_t(r) * n + c]; };
    auto V = [&](int r, int c) -> double& { return v[std::size_t(r) * n + c]; };

    double norm = 0.0;
    for (double x : a) norm += x * x;
    norm = std::sqrt(norm);
    const double tol = (norm > 0.0 ? norm : 1.0) * 1e-15;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (std::sqrt(2.0 * off) <= tol) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (apq == 0.0) continue;
                const double app = A(p, p), aqq = A(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return A(i, i) > A(j, j); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<double>(n));
    for (int m = 0; m < n; ++m) {
        out.values[m] = A(order[m], order[m]);
        for (int k = 0; k < n; ++k) out.vectors[m][k] = V(k, order[m]);
    }
    return out;
}

EigenDecomposition eig_decompose(int n, const std::vector<double>& matrix) {
    if (n < 1 || int(matrix.size()) != n * n)
        throw ParameterError("eig_decompose: matrix size does not match n");
    double maxabs = 0.0;
    for (double x : matrix) maxabs = std::max(maxabs, std::fabs(x));
    const double tol = 1e-10 * std::max(1.0, maxabs);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(matrix[std::size_t(i) * n + j] - matrix[std::size_t(j) * n + i]) > tol)
                throw ParameterError("eig_decompose: matrix is not symmetric");
    return jacobi_eigensym(n, matrix);
}

std::vector<double> alpha_coeffs(const std::vector<double>& delta_mean,
                                 const EigenDecomposition& eig) {
    const std::size_t n = delta_mean.size();
    if (eig.vectors.size() != n)
        throw ParameterError("alpha_coeffs: eigenvector count does not match delta_mean");
    std::vector<double> alphas(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        if (eig.vectors[m].size() != n)
            throw ParameterError("alpha_coeffs: eigenvector length mismatch");
        double dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += eig.vectors[m][k] * delta_mean[k];
        alphas[m] = dot;
    }
    return alphas;
}

double snr_from_spectrum(const std::vector<double>& alphas,
                         const std::vector<double>& lambdas) {
    if (alphas.size() != lambdas.size())
        throw ParameterError("snr_from_spectrum: alpha/lambda length mismatch");
    if (lambdas.empty()) throw ParameterError("snr_from_spectrum: empty spectrum");
    const double lmax = *std::max_element(lambdas.begin(), lambdas.end());
    if (!(lmax > 0.0)) throw NumericalError("snr_from_spectrum: covariance spectrum is zero");
    const double floor = 1e-10 * lmax;
    double snr2 = 0.0;
    for (std::size_t m = 0; m < lambdas.size(); ++m) {
        if (lambdas[m] <= floor)
            throw NumericalError("snr_from_spectrum: eigenvalue at or below floor");
        snr2 += alphas[m] * alphas[m] / lambdas[m];
    }
    return std::sqrt(snr2);
}

double auc_from_snr(double snr, SnrAucConvention convention) {
    if (!(snr >= 0.0)) throw ParameterError("auc_from_snr: snr must be >= 0");
    const double z = convention == SnrAucConvention::paper ? snr : 0.5 * snr;
    return 0.5 + 0.5 * std::erf(z);
}

EigenReport eigen_report(const EnsembleStats& stats) {
    EigenReport rep;
    const EigenDecomposition eig = eig_decompose(stats.n_channels, stats.cov);
    rep.eigenvalues = eig.values;
    rep.eigenvectors = eig.vectors;
    rep.alphas = alpha_coeffs(stats.delta_mean, eig);
    rep.per_mode_contrib.resize(rep.alphas.size());
    for (std::size_t m = 0; m < rep.alphas.size(); ++m) {
        const double lam = rep.eigenvalues[m];
        rep.per_mode_contrib[m] = lam > 0.0 ? rep.alphas[m] * rep.alphas[m] / lam : 0.0;
    }
    rep.snr = snr_from_spectrum(rep.alphas, rep.eigenvalues);
    return rep;
}

DeltaMeanImage delta_mean_image(const std::vector<Image2D>& present,
                                const std::vector<Image2D>& absent) {
    if (present.empty() || absent.empty())
        throw ParameterError("delta_mean_image: empty image set");
    const int w = present.front().width, h = present.front().height;
    for (const auto* set : {&present, &absent})
        for (const Image2D& im : *set)
            if (im.width != w || im.height != h)
                throw ParameterError("delta_mean_image: image sizes differ");

    DeltaMeanImage out;
    out.image = Image2D(w, h, 0.0);
    for (const Image2D& im : present)
        for (std::size_t i = 0; i < im.pixels.size(); ++i)
            out.image.pixels[i] += im.pixels[i] / double(present.size());
    for (const Image2D& im : absent)
        for (std::size_t i = 0; i < im.pixels.size(); ++i)
            out.image.pixels[i] -= im.pixels[i] / double(absent.size());

    const int row = h / 2;
    out.center_profile.resize(w);
    for (int x = 0; x < w; ++x) out.center_profile[x] = out.image.at(x, row);
    return out;
}

}  // namespace obsbench
