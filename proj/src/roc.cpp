#include "obsbench/roc.hpp"

#include <algorithm>
#include <cmath>

#include "obsbench/errors.hpp"
#include "obsbench/rng.hpp"

namespace obsbench {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

double sample_sd(const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / double(v.size() - 1));
}

/// Midrank Mann-Whitney on pre-sorted copies; numerators are exact halves so
/// the result matches exhaustive pair enumeration bit for bit.
double auc_from_sorted(const std::vector<double>& sp, const std::vector<double>& sa) {
    const std::size_t np = sp.size(), na = sa.size();
    // merge-walk computing, for each present value, the count of absent values
    // below it plus half the ties
    double numerator = 0.0;
    std::size_t ia = 0;
    std::size_t ip = 0;
    while (ip < np) {
        const double v = sp[ip];
        while (ia < na && sa[ia] < v) ++ia;
        std::size_t ties = 0;
        while (ia + ties < na && sa[ia + ties] == v) ++ties;
        std::size_t ip_ties = 1;
        while (ip + ip_ties < np && sp[ip + ip_ties] == v) ++ip_ties;
        numerator += double(ip_ties) * (double(ia) + 0.5 * double(ties));
        ip += ip_ties;
    }
    return numerator / (double(np) * double(na));
}

}  // namespace

double auc_mann_whitney(const std::vector<double>& t_present,
                        const std::vector<double>& t_absent) {
    if (t_present.empty() || t_absent.empty())
        throw ParameterError("auc: both classes must be non-empty");
    std::vector<double> sp = t_present, sa = t_absent;
    std::sort(sp.begin(), sp.end());
    std::sort(sa.begin(), sa.end());
    return auc_from_sorted(sp, sa);
}

RocCurve empirical_roc(const std::vector<double>& t_present,
                       const std::vector<double>& t_absent) {
    if (t_present.empty() || t_absent.empty())
        throw ParameterError("empirical_roc: both classes must be non-empty");

    std::vector<double> thresholds = t_present;
    thresholds.insert(thresholds.end(), t_absent.begin(), t_absent.end());
    std::sort(thresholds.begin(), thresholds.end(), std::greater<double>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::vector<double> sp = t_present, sa = t_absent;
    std::sort(sp.begin(), sp.end(), std::greater<double>());
    std::sort(sa.begin(), sa.end(), std::greater<double>());

    RocCurve curve;
    curve.points.reserve(thresholds.size() + 2);
    curve.points.emplace_back(0.0, 0.0);
    std::size_t ip = 0, ia = 0;
    for (double thr : thresholds) {
        while (ip < sp.size() && sp[ip] >= thr) ++ip;
        while (ia < sa.size() && sa[ia] >= thr) ++ia;
        curve.points.emplace_back(double(ia) / double(sa.size()),
                                  double(ip) / double(sp.size()));
    }
    if (curve.points.back() != std::make_pair(1.0, 1.0)) curve.points.emplace_back(1.0, 1.0);

    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& [x0, y0] = curve.points[i - 1];
        const auto& [x1, y1] = curve.points[i];
        area += (x1 - x0) * 0.5 * (y0 + y1);
    }
    curve.auc = area;
    return curve;
}

AucEstimate bootstrap_ci(const std::vector<double>& t_present,
                         const std::vector<double>& t_absent, int n_boot, double level,
                         std::uint64_t seed) {
    if (t_present.size() < 2 || t_absent.size() < 2)
        throw ParameterError("bootstrap_ci: each class needs at least 2 values");
    if (n_boot < 1) throw ParameterError("bootstrap_ci: n_boot must be >= 1");
    if (!(level > 0.0 && level < 1.0))
        throw ParameterError("bootstrap_ci: level must be in (0, 1)");

    AucEstimate est;
    est.auc = auc_mann_whitney(t_present, t_absent);
    est.level = level;
    est.n_boot = n_boot;

    std::vector<double> aucs(n_boot);
    std::vector<double> rp(t_present.size()), ra(t_absent.size());
    for (int r = 0; r < n_boot; ++r) {
        Rng rng = Rng::derive(seed, {fnv1a64("bootstrap"), std::uint64_t(r)});
        for (double& x : rp) x = t_present[rng.next_u64() % t_present.size()];
        for (double& x : ra) x = t_absent[rng.next_u64() % t_absent.size()];
        std::sort(rp.begin(), rp.end());
        std::sort(ra.begin(), ra.end());
        aucs[r] = auc_from_sorted(rp, ra);
    }
    std::sort(aucs.begin(), aucs.end());

    auto quantile = [&](double q) {
        const double pos = q * double(n_boot - 1);
        const std::size_t lo = std::size_t(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, std::size_t(n_boot - 1));
        const double frac = pos - double(lo);
        return aucs[lo] * (1.0 - frac) + aucs[hi] * frac;
    };
    const double alpha = 1.0 - level;
    est.ci_low = std::min(quantile(0.5 * alpha), est.auc);
    est.ci_high = std::max(quantile(1.0 - 0.5 * alpha), est.auc);
    return est;
}

BinormalFit binormal_fit(const std::vector<double>& t_present,
                         const std::vector<double>& t_absent) {
    if (t_present.size() < 2 || t_absent.size() < 2)
        throw ParameterError("binormal_fit: each class needs at least 2 values");
    const double mu_p = mean_of(t_present);
    const double mu_a = mean_of(t_absent);
    const double sd_p = sample_sd(t_present, mu_p);
    const double sd_a = sample_sd(t_absent, mu_a);
    if (!(sd_p > 0.0) || !(sd_a > 0.0))
        throw ParameterError("binormal_fit: class sample variance is zero");

    BinormalFit fit;
    fit.a = (mu_p - mu_a) / sd_p;
    fit.b = sd_a / sd_p;
    fit.auc = normal_cdf(fit.a / std::sqrt(1.0 + fit.b * fit.b));
    return fit;
}

}  // namespace obsbench
