#pragma once

#include <stdexcept>
#include <string>

namespace hua {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Parameter outside the range where the potential is defined (|q| >= 1, non-positive scales).
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// Parameters outside the regime e^{-b_h r_e} <= q < 1 where the closed form applies.
class ValidityError : public Error
{
  public:
    using Error::Error;
};

/// Evaluation at or below the pole r0 of the potential.
class SingularityError : public Error
{
  public:
    using Error::Error;
};

/// A square root that should be real has a negative radicand.
class NoRealSolutionError : public Error
{
  public:
    using Error::Error;
};

/// A ladder value a_k = a_0 - k*alpha is zero.
class DegenerateLadderError : public Error
{
  public:
    using Error::Error;
};

/// Requested level lies above the stationary point N_r^2 = lambda_l.
class UnboundLevelError : public Error
{
  public:
    using Error::Error;
};

/// Ground state of the superpotential is not normalizable (A + B <= 0).
class AdmissibilityError : public Error
{
  public:
    using Error::Error;
};

class ConvergenceError : public Error
{
  public:
    using Error::Error;
};

/// Bad user input: malformed config file, inconsistent grid window, etc.
class ConfigError : public Error
{
  public:
    using Error::Error;
};

} // namespace hua
