#include "obsbench/truncnorm.hpp"

#include <string>

#include "obsbench/errors.hpp"

namespace obsbench {

void TruncNormParams::validate(const char* what) const {
    const std::string name(what);
    if (!(min < max)) throw ParameterError(name + ": min must be < max");
    if (!(sd >= 0.0)) throw ParameterError(name + ": sd must be >= 0");
    if (!(min <= mean && mean <= max))
        throw ParameterError(name + ": mean must lie within [min, max]");
}

double sample_truncnorm(const TruncNormParams& p, Rng& rng) {
    p.validate("truncnorm");
    if (p.sd == 0.0) return p.mean;
    for (;;) {
        const double x = p.mean + p.sd * rng.next_gaussian();
        if (x >= p.min && x <= p.max) return x;
    }
}

}  // namespace obsbench
