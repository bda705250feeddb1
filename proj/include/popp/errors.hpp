#pragma once

#include <stdexcept>
#include <string>

namespace popp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatches, parse errors, bad indices.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A polynomial operation would exceed the configured term cap.
class TermCapExceeded : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The query point lies on (or too close to) a locus where the
/// computation is not meaningful: rank-deficient horizontal fields,
/// non-equiregular strata, ill-conditioned frames.
class SingularPoint : public Error {
 public:
  using Error::Error;
};

/// Horizontal field values are linearly dependent at the point.
class RankDeficientHorizontal : public SingularPoint {
 public:
  using SingularPoint::SingularPoint;
};

/// Iterated brackets stopped growing before spanning R^n.
class NotBracketGenerating : public SingularPoint {
 public:
  NotBracketGenerating(const std::string& what, int stalled_rank)
      : SingularPoint(what), stalled_rank_(stalled_rank) {}
  int stalled_rank() const noexcept { return stalled_rank_; }

 private:
  int stalled_rank_;
};

/// A check that should be impossible to fail after upstream validation
/// (positive definiteness of B_j, solve residuals) failed.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace popp
