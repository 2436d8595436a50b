#pragma once

#include <stdexcept>
#include <string>

namespace badforms {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotRationalError : Error {
  explicit NotRationalError(const std::string& m) : Error("NotRational: " + m) {}
};
struct SingularBasisError : Error {
  explicit SingularBasisError(const std::string& m) : Error("SingularBasis: " + m) {}
};
struct DimensionTooLargeError : Error {
  explicit DimensionTooLargeError(const std::string& m) : Error("DimensionTooLarge: " + m) {}
};
struct DegenerateBaseError : Error {
  explicit DegenerateBaseError(const std::string& m) : Error("DegenerateBase: " + m) {}
};
struct EmptyIntersectionError : Error {
  explicit EmptyIntersectionError(const std::string& m) : Error("EmptyIntersection: " + m) {}
};
struct NotFoundError : Error {
  explicit NotFoundError(const std::string& m) : Error("NotFound: " + m) {}
};
struct StrategyBreakdownError : Error {
  explicit StrategyBreakdownError(const std::string& m) : Error("StrategyBreakdown: " + m) {}
};
struct BaseStrategyViolationError : Error {
  explicit BaseStrategyViolationError(const std::string& m) : Error("BaseStrategyViolation: " + m) {}
};
struct InvalidTranscriptError : Error {
  explicit InvalidTranscriptError(const std::string& m) : Error("InvalidTranscript: " + m) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error("ConfigError: " + m) {}
};
struct NotCase1Error : Error {
  explicit NotCase1Error(const std::string& m) : Error("NotCase1: " + m) {}
};

}  // namespace badforms
