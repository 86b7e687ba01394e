#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tuhf {

using BigInt = boost::multiprecision::cpp_int;

// Matrix-unit and partition element index. Elements are 1-based.
using Index = std::uint32_t;

enum class ErrorCode {
  // input could not be read
  ParseError,
  MalformedToken,
  NonPrimeBase,
  DuplicatePrime,
  InvalidDescriptor,
  // domain errors
  InvalidAssignment,
  UnequalBlockSizes,
  RankOrderViolation,
  ShapeMismatch,
  OutOfRange,
  HypothesisViolated,
  IndexOutOfRange,
  LowerTriangularRequest,
  InvalidPartition,
  NotNormalizingPartialIsometry,
  NonUnimodularPhase,
  PrimeNotCommonInfinite,
  TowerNotNormalizedForPrime,
  NotIntervalForm,
  InconsistentLevels,
  InvalidShiftWord,
  NotAlternatingTower,
  NotMaterializable,
  ChainMismatch,
  DepthMismatch,
  LevelTooLarge,
};

const char* error_code_name(ErrorCode code);

// True for codes that mean "the input text was unreadable" rather than
// "the input was read but violates a mathematical precondition".
bool is_parse_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Narrows an exact dimension to a materializable size; partitions are
// stored densely so anything beyond 32-bit indices is rejected.
std::size_t to_size(const BigInt& value);

}  // namespace tuhf
