#pragma once

#include <stdexcept>
#include <string>

namespace hamcube {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define HAMCUBE_DEFINE_ERROR(Name) \
  struct Name : Error {            \
    using Error::Error;            \
  }

// cube-core
HAMCUBE_DEFINE_ERROR(LengthMismatch);
HAMCUBE_DEFINE_ERROR(NonFinite);
HAMCUBE_DEFINE_ERROR(NTooLarge);
HAMCUBE_DEFINE_ERROR(IndexOutOfRange);

// normed-spaces
HAMCUBE_DEFINE_ERROR(DimensionMismatch);
HAMCUBE_DEFINE_ERROR(InvalidExponent);
HAMCUBE_DEFINE_ERROR(NoConvergence);
HAMCUBE_DEFINE_ERROR(UnsupportedSpace);

// functionals
HAMCUBE_DEFINE_ERROR(NegativeInput);
HAMCUBE_DEFINE_ERROR(ExactTooLarge);
HAMCUBE_DEFINE_ERROR(ZeroMoment);
HAMCUBE_DEFINE_ERROR(Overflow);
HAMCUBE_DEFINE_ERROR(InvalidEpsilon);

// verifier / matrix analysis
HAMCUBE_DEFINE_ERROR(NotLipschitz);
HAMCUBE_DEFINE_ERROR(PreconditionViolated);
HAMCUBE_DEFINE_ERROR(NotPSD);
HAMCUBE_DEFINE_ERROR(ZeroDenominator);
HAMCUBE_DEFINE_ERROR(InvalidRange);
HAMCUBE_DEFINE_ERROR(DegenerateDraw);
HAMCUBE_DEFINE_ERROR(ConfigError);
HAMCUBE_DEFINE_ERROR(EmptyGrid);

// extremal search
HAMCUBE_DEFINE_ERROR(DegenerateInput);
HAMCUBE_DEFINE_ERROR(BudgetExceeded);
HAMCUBE_DEFINE_ERROR(OutOfRange);

#undef HAMCUBE_DEFINE_ERROR

}  // namespace hamcube
