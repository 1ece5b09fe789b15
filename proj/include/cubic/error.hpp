#ifndef CUBIC_ERROR_HPP
#define CUBIC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cubic {

enum class Errc {
  NotPrime,
  CongruenceViolation,
  NoIrreducibleFound,
  ElementNotInField,
  ZeroDenominator,
  NotIrreducible,
  NotSquareFree,
  NotMonic,
  ConjugateMissing,
  DegenerateLeadingCoefficient,
  WrongParity,
  PrefactorPole,
  DegreeTooLarge,
  NotCoprime,
  PoleAtOne,
  DomainError,
  IsCube,
  SampleTooLarge,
  OutOfRange,
  BadSplit,
  PartitionTooLarge,
  Overflow,
  Parse,
};

const char* errc_name(Errc code) noexcept;

/// Domain or precondition failure raised by the library. The CLI maps these
/// to exit code 3 (2 for Parse).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cubic

#endif  // CUBIC_ERROR_HPP
