#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace obsbench {

struct RocCurve {
    std::vector<std::pair<double, double>> points;  // (fpf, tpf), (0,0) -> (1,1)
    double auc = 0.0;
};

struct AucEstimate {
    double auc = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double level = 0.95;
    int n_boot = 0;
};

/// ROC curve from sweeping the threshold over all distinct statistic values
/// (t >= threshold calls a case positive); auc is the trapezoidal area, which
/// equals the Mann-Whitney estimate including tie half-credit.
RocCurve empirical_roc(const std::vector<double>& t_present,
                       const std::vector<double>& t_absent);

/// Fraction of (present, absent) pairs with t_present > t_absent, ties
/// counted half. Computed by midranks.
double auc_mann_whitney(const std::vector<double>& t_present,
                        const std::vector<double>& t_absent);

/// Percentile bootstrap CI for the AUC; classes are resampled independently
/// (stratified), with one substream per replicate.
AucEstimate bootstrap_ci(const std::vector<double>& t_present,
                         const std::vector<double>& t_absent, int n_boot = 2000,
                         double level = 0.95, std::uint64_t seed = 0);

struct BinormalFit {
    double a = 0.0;    // (mu_p - mu_a) / sigma_p
    double b = 0.0;    // sigma_a / sigma_p
    double auc = 0.0;  // Phi(a / sqrt(1 + b^2))
};

/// Moment-based binormal ROC fit. Requires nonzero sample variance per class.
BinormalFit binormal_fit(const std::vector<double>& t_present,
                         const std::vector<double>& t_absent);

}  // namespace obsbench
