#pragma once

#include <stdexcept>
#include <string>

namespace obsbench {

/// Invalid configuration or argument values (bad bounds, nonpositive counts, ...).
struct ParameterError : std::runtime_error {
    explicit ParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Grid/geometry mismatches: differing dims or pitch, objects outside the field of view.
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Projection data that cannot be rescaled (zero total counts).
struct ScalingError : std::runtime_error {
    explicit ScalingError(const std::string& msg) : std::runtime_error(msg) {}
};

/// ROI crops that do not fit inside the volume.
struct ExtractionError : std::runtime_error {
    explicit ExtractionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Singular or otherwise numerically unusable matrices.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed binary files (bad magic, truncation, inconsistent header).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Missing or mismatched externally supplied volumes.
struct IngestionError : std::runtime_error {
    explicit IngestionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace obsbench
