#pragma once

#include <stdexcept>
#include <string>

namespace statgeom {

struct GeomError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tensor operands live in incompatible frames or have mismatched extents.
struct FrameMismatchError : GeomError {
  using GeomError::GeomError;
};

/// A metric failed the positive-definiteness check (Cholesky breakdown).
struct MetricDegenerateError : GeomError {
  using GeomError::GeomError;
};

/// Evaluation point lies outside the declared chart box.
struct DomainError : GeomError {
  using GeomError::GeomError;
};

/// Plane arguments are (numerically) collinear.
struct CollinearError : GeomError {
  using GeomError::GeomError;
};

/// A slot-level precondition of a closed-form formula was violated.
struct SlotConditionError : GeomError {
  using GeomError::GeomError;
};

/// A specialized code path was requested for a structure that does not
/// satisfy the corresponding classification.
struct ClassificationError : GeomError {
  using GeomError::GeomError;
};

/// Input vectors were expected normalized/orthonormal but are not.
struct NormalizationError : GeomError {
  using GeomError::GeomError;
};

struct ConfigError : GeomError {
  using GeomError::GeomError;
};

}  // namespace statgeom
