#include "coxkl/error.hpp"

namespace coxkl {

const char* to_string(Errc code)
{
  switch (code) {
  case Errc::MatrixShape: return "MatrixShape";
  case Errc::BadEntry: return "BadEntry";
  case Errc::Parse: return "Parse";
  case Errc::Overflow: return "Overflow";
  case Errc::NotComparable: return "NotComparable";
  case Errc::SubstitutionMismatch: return "SubstitutionMismatch";
  case Errc::DegreeViolation: return "DegreeViolation";
  case Errc::TieUnresolved: return "TieUnresolved";
  case Errc::MultipleLongest: return "MultipleLongest";
  case Errc::PreconditionViolated: return "PreconditionViolated";
  case Errc::NotDeodhar: return "NotDeodhar";
  case Errc::WrongBranch: return "WrongBranch";
  case Errc::ConstructionFailed: return "ConstructionFailed";
  case Errc::Checksum: return "Checksum";
  case Errc::Io: return "Io";
  case Errc::Budget: return "Budget";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what)
{
}

} // namespace coxkl
