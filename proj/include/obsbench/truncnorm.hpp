#pragma once

#include "obsbench/rng.hpp"

namespace obsbench {

/// Truncated normal distribution parameters (units follow the field: cm or pure ratio).
struct TruncNormParams {
    double mean = 0.0;
    double sd = 0.0;
    double min = 0.0;
    double max = 0.0;

    /// Throws ParameterError unless min <= mean <= max, sd >= 0, min < max.
    void validate(const char* what) const;
};

/// Rejection sampling from the untruncated normal; sd == 0 returns the mean.
double sample_truncnorm(const TruncNormParams& p, Rng& rng);

}  // namespace obsbench
