#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace degulab {

inline constexpr const char* kVersion = "0.1.0";

/// Absolute tolerance for comparisons of accumulated real weights.
inline constexpr double kTol = 1e-9;

enum class ErrorCode : int {
  argument = 1,
  precondition = 2,
  capacity = 3,
  construction = 4,
  size = 5,
  io = 6,
  internal = 7,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct ArgumentError : Error {
  explicit ArgumentError(const std::string& w) : Error(ErrorCode::argument, w) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error(ErrorCode::precondition, w) {}
};
/// Raised when an exact method is asked to run beyond its hard size cap.
struct CapacityError : Error {
  explicit CapacityError(const std::string& w) : Error(ErrorCode::capacity, w) {}
};
struct ConstructionError : Error {
  explicit ConstructionError(const std::string& w) : Error(ErrorCode::construction, w) {}
};
struct SizeError : Error {
  explicit SizeError(const std::string& w) : Error(ErrorCode::size, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::io, w) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& w) : Error(ErrorCode::internal, w) {}
};

// Count thresholds of the form "count <= eps * size" are evaluated with a small
// slack so that products like 0.57 * 100 = 56.999... do not flip the verdict.
inline bool count_within(std::size_t count, double eps, std::size_t size) {
  return static_cast<double>(count) <= eps * static_cast<double>(size) + kTol;
}
inline bool count_exceeds(std::size_t count, double eps, std::size_t size) {
  return static_cast<double>(count) > eps * static_cast<double>(size) + kTol;
}

}  // namespace degulab
