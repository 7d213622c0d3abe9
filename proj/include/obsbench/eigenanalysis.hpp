#pragma once

#include <vector>

#include "obsbench/observer.hpp"

namespace obsbench {

/// Symmetric eigendecomposition, eigenvalues sorted descending with
/// orthonormal eigenvectors (vectors[m] pairs with values[m]).
struct EigenDecomposition {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

/// Cyclic Jacobi rotations; assumes the matrix is symmetric (no check).
/// Accurate and dependency-free at the small sizes used here.
EigenDecomposition jacobi_eigensym(int n, const std::vector<double>& matrix);

/// Validates symmetry (to 1e-10 relative) and decomposes
/// K = sum_m lambda_m u_m u_m'.
EigenDecomposition eig_decompose(int n, const std::vector<double>& matrix);

/// alpha_m = u_m . delta_mean.
std::vector<double> alpha_coeffs(const std::vector<double>& delta_mean,
                                 const EigenDecomposition& eig);

/// SNR = sqrt(sum alpha_m^2 / lambda_m). Throws NumericalError when any
/// eigenvalue is at or below the floor 1e-10 x largest.
double snr_from_spectrum(const std::vector<double>& alphas,
                         const std::vector<double>& lambdas);

/// AUC = 1/2 + 1/2 erf(snr) (paper) or 1/2 + 1/2 erf(snr/2) (textbook).
/// Both conventions are shipped because published forms of the relation
/// disagree; reports state which one was used.
enum class SnrAucConvention { paper, textbook };
double auc_from_snr(double snr, SnrAucConvention convention);

/// Per-condition eigenanalysis of the observer statistics: covariance
/// spectrum, signal coefficients along the eigenvectors, and the spectral SNR.
struct EigenReport {
    std::vector<double> eigenvalues;                // descending
    std::vector<std::vector<double>> eigenvectors;  // orthonormal
    std::vector<double> alphas;
    std::vector<double> per_mode_contrib;  // alpha_m^2 / lambda_m
    double snr = 0.0;
};

EigenReport eigen_report(const EnsembleStats& stats);

/// Pixelwise mean(present) - mean(absent) of windowed ROI images, plus the
/// intensity profile along the image's center row.
struct DeltaMeanImage {
    Image2D image;
    std::vector<double> center_profile;
};

DeltaMeanImage delta_mean_image(const std::vector<Image2D>& present,
                                const std::vector<Image2D>& absent);

}  // namespace obsbench
