// Copyright rbsweep Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RBSWEEP_ERRORS_HPP
#define RBSWEEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rbsweep
{

// Base class for every failure raised by the library. The CLI maps subclasses of
// ConfigError to exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

#define RBSWEEP_DECLARE_ERROR(Name, Base)  \
  class Name : public Base                 \
  {                                        \
  public:                                  \
    using Base::Base;                      \
  }

// Input and configuration problems.
RBSWEEP_DECLARE_ERROR(ConfigError, Error);
RBSWEEP_DECLARE_ERROR(ParseError, ConfigError);
RBSWEEP_DECLARE_ERROR(DimensionMismatch, ConfigError);
RBSWEEP_DECLARE_ERROR(NotSymmetric, ConfigError);
RBSWEEP_DECLARE_ERROR(MassNotPositiveDefinite, ConfigError);
RBSWEEP_DECLARE_ERROR(StiffnessNotSemidefinite, ConfigError);
RBSWEEP_DECLARE_ERROR(InvalidPort, ConfigError);
RBSWEEP_DECLARE_ERROR(InvalidBand, ConfigError);

// Numerical failures.
RBSWEEP_DECLARE_ERROR(SingularAtResonance, Error);
RBSWEEP_DECLARE_ERROR(EigensolverFailure, Error);
RBSWEEP_DECLARE_ERROR(AtResonance, Error);
RBSWEEP_DECLARE_ERROR(ReducedSingular, Error);
RBSWEEP_DECLARE_ERROR(ZeroVector, Error);
RBSWEEP_DECLARE_ERROR(ResonantBound, Error);
RBSWEEP_DECLARE_ERROR(DivisionByZeroTrueError, Error);

#undef RBSWEEP_DECLARE_ERROR

}  // namespace rbsweep

#endif  // RBSWEEP_ERRORS_HPP
