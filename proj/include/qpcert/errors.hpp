#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qpcert {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg, std::string field_path = "")
      : Error(field_path.empty() ? msg : msg + " (at " + field_path + ")"),
        path(std::move(field_path)) {}
  std::string path;
};

struct ValidationFailure : Error {
  using Error::Error;
};

struct InvalidDimension : Error {
  using Error::Error;
};

struct PadOverflow : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  using Error::Error;
};

struct InfeasibleProblem : Error {
  using Error::Error;
};

struct NoSlaterPoint : Error {
  using Error::Error;
};

struct NotBoundedBelow : Error {
  explicit NotBoundedBelow(const std::string& msg,
                           std::vector<double> descent_ray = {},
                           std::vector<double> base_point = {})
      : Error(msg), ray(std::move(descent_ray)), base(std::move(base_point)) {}
  std::vector<double> ray;   // empty when no affine descent ray exists
  std::vector<double> base;
};

struct NoPsdShift : Error {
  using Error::Error;
};

struct HardCaseNoRay : Error {
  using Error::Error;
};

struct PreconditionViolation : Error {
  using Error::Error;
};

struct EmptyLevelSet : Error {
  using Error::Error;
};

struct UnknownFixture : Error {
  using Error::Error;
};

}  // namespace qpcert
