#pragma once

#include <stdexcept>
#include <string>

namespace specdist {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Validation,
  DimensionMismatch,
  NotHermitian,
  NoConvergence,
  Infeasible,
  MissingGrading,
  AlreadyEven,
  NonUnital,
  RhoNotInAlgebra,
  OutOfBall,
  NotProbability,
  Internal,
};

const char* to_string(ErrorCode code);

// Every failure inside the core is reported through this type; the C API maps
// `code()` onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by solvers that ran out of iterations. Carries the best certified
// lower bound found so far.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double best_lower_bound, int iterations)
      : Error(ErrorCode::NoConvergence, what),
        best_lower_bound_(best_lower_bound),
        iterations_(iterations) {}

  double best_lower_bound() const noexcept { return best_lower_bound_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double best_lower_bound_;
  int iterations_;
};

}  // namespace specdist
