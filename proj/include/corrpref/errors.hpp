#pragma once

#include <stdexcept>
#include <string>

namespace corrpref {

// Every failure mode carries a stable code string so the CLI can report it
// without parsing prose.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define CORRPREF_ERROR(NAME)                           \
  class NAME : public Error {                          \
   public:                                             \
    explicit NAME(const std::string& what)             \
        : Error(#NAME, what) {}                        \
  }

CORRPREF_ERROR(NonStochastic);
CORRPREF_ERROR(RaggedHorizon);
CORRPREF_ERROR(NegativeConsumption);
CORRPREF_ERROR(StageOutOfRange);
CORRPREF_ERROR(NotInMStar);
CORRPREF_ERROR(ParamOutOfRange);
CORRPREF_ERROR(DimensionMismatch);
CORRPREF_ERROR(MassOverflow);
CORRPREF_ERROR(ZeroMarginal);
CORRPREF_ERROR(DomainViolation);
CORRPREF_ERROR(RangeViolation);
CORRPREF_ERROR(NoRoot);
CORRPREF_ERROR(UnsupportedRho);
CORRPREF_ERROR(NoBracket);
CORRPREF_ERROR(DegenerateQ);
CORRPREF_ERROR(NonConvergence);
CORRPREF_ERROR(NonContraction);
CORRPREF_ERROR(IterationCap);
CORRPREF_ERROR(SingularIntegrand);
CORRPREF_ERROR(NoWitness);

#undef CORRPREF_ERROR

}  // namespace corrpref
