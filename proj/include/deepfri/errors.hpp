#ifndef DEEPFRI_ERRORS_HPP
#define DEEPFRI_ERRORS_HPP

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace deepfri {

enum class ErrorCode {
  kInversionOfZero,
  kFieldMismatch,
  kDimensionNotOne,
  kKernelNotInDomain,
  kNotInImage,
  kEmptyDomain,
  kQuotientPointInDomain,
  kDuplicatePoint,
  kDomainMismatch,
  kSearchSpaceTooLarge,
  kEpsOutOfRange,
  kBadDomainSize,
  kMalformedTranscript,
  kNonDivisible,
  kSubgroupUnavailable,
  kTraceShapeMismatch,
  kDomainSizeMismatch,
  kNOutOfRange,
  kDomainOverlap,
  kPreconditionUnmet,
  kBadArgument,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::kInversionOfZero: return "InversionOfZero";
    case ErrorCode::kFieldMismatch: return "FieldMismatch";
    case ErrorCode::kDimensionNotOne: return "DimensionNotOne";
    case ErrorCode::kKernelNotInDomain: return "KernelNotInDomain";
    case ErrorCode::kNotInImage: return "NotInImage";
    case ErrorCode::kEmptyDomain: return "EmptyDomain";
    case ErrorCode::kQuotientPointInDomain: return "QuotientPointInDomain";
    case ErrorCode::kDuplicatePoint: return "DuplicatePoint";
    case ErrorCode::kDomainMismatch: return "DomainMismatch";
    case ErrorCode::kSearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::kEpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::kBadDomainSize: return "BadDomainSize";
    case ErrorCode::kMalformedTranscript: return "MalformedTranscript";
    case ErrorCode::kNonDivisible: return "NonDivisible";
    case ErrorCode::kSubgroupUnavailable: return "SubgroupUnavailable";
    case ErrorCode::kTraceShapeMismatch: return "TraceShapeMismatch";
    case ErrorCode::kDomainSizeMismatch: return "DomainSizeMismatch";
    case ErrorCode::kNOutOfRange: return "NOutOfRange";
    case ErrorCode::kDomainOverlap: return "DomainOverlap";
    case ErrorCode::kPreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::kBadArgument: return "BadArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

#define DFRI_REQUIRE(cond, code, msg)            \
  do {                                           \
    if (!(cond)) throw ::deepfri::Error(code, msg); \
  } while (0)

namespace guards {

// Brute-force searches refuse to start above this many enumeration bits unless
// the override is active (DEEPFRI_GUARD_OVERRIDE=1 or a ScopedOverride in tests).
inline bool& override_flag() {
  static bool flag = [] {
    const char* env = std::getenv("DEEPFRI_GUARD_OVERRIDE");
    return env != nullptr && env[0] == '1';
  }();
  return flag;
}

struct ScopedOverride {
  bool previous;
  ScopedOverride() : previous(override_flag()) { override_flag() = true; }
  ~ScopedOverride() { override_flag() = previous; }
};

inline void check_search_space(double log2_size, double limit, const std::string& what) {
  if (log2_size <= limit || override_flag()) return;
  throw Error(ErrorCode::kSearchSpaceTooLarge,
              what + " needs 2^" + std::to_string(log2_size) + " enumeration (guard 2^" +
                  std::to_string(limit) + "; set DEEPFRI_GUARD_OVERRIDE=1 to lift)");
}

}  // namespace guards

}  // namespace deepfri

#endif  // DEEPFRI_ERRORS_HPP
