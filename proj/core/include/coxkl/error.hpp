#pragma once

#include <stdexcept>
#include <string>

namespace coxkl {

enum class Errc {
  MatrixShape,
  BadEntry,
  Parse,
  Overflow,
  NotComparable,
  SubstitutionMismatch,
  DegreeViolation,
  TieUnresolved,
  MultipleLongest,
  PreconditionViolated,
  NotDeodhar,
  WrongBranch,
  ConstructionFailed,
  Checksum,
  Io,
  Budget,
};

const char* to_string(Errc code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

private:
  Errc code_;
  std::string detail_;
};

} // namespace coxkl
