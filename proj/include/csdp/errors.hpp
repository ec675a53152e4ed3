#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace csdp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct NotPerfectOrdering : Error {
  NotPerfectOrdering() : Error("ordering is not a perfect elimination ordering") {}
};
struct NotChordal : Error {
  using Error::Error;
};
struct NotPositiveSemidefinite : Error {
  using Error::Error;
};
struct NotPositiveDefinite : Error {
  using Error::Error;
};
struct InfeasibleCompletion : Error {
  using Error::Error;
};
struct ConstraintOutsideClique : Error {
  using Error::Error;
};

// Monomials of f that no Gram entry can produce; exponents are stored as is.
struct SupportNotCovered : Error {
  std::vector<std::vector<int>> uncovered;
  explicit SupportNotCovered(std::vector<std::vector<int>> alphas);
};

// line is 1-based; 0 when the error is not tied to a line
struct ParseError : Error {
  int line;
  ParseError(const std::string& msg, int line_no)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

struct SingularKkt : Error {
  std::vector<int> dependent_rows;  // 0-based constraint indices
  explicit SingularKkt(std::vector<int> rows);
};

}  // namespace csdp
