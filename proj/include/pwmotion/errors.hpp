#pragma once

#include <stdexcept>
#include <string>

namespace pwmotion {

/// Base class for all library errors. Catching this catches everything
/// thrown intentionally by pwmotion.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Envelope evaluation produced a negative value.
class NegativeEnvelope : public Error {
 public:
  using Error::Error;
};

/// Envelope or data sample evaluated to NaN or infinity where a finite
/// value is required.
class NonFiniteSample : public Error {
 public:
  using Error::Error;
};

/// A construction that requires a convergent log-integral was asked to run
/// on an envelope classified Divergent.
class DivergentLogIntegral : public Error {
 public:
  using Error::Error;
};

/// The classifier could not settle on Convergent or Divergent, and the
/// requested construction refuses to proceed on ambiguous input.
class InconclusiveLogIntegral : public Error {
 public:
  using Error::Error;
};

/// No width schedule within the support budget certifies the envelope.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Symmetrization produced the zero function for every tried shift.
class AnnihilatedSymmetrization : public Error {
 public:
  using Error::Error;
};

/// The sampling grid cannot represent the requested data or operation
/// (declared support outside the box, dispersion exceeding the box, or a
/// frequency request beyond the grid's resolution).
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

/// Boundary data does not cover enough of the Poisson kernel mass and no
/// tail model was supplied.
class InsufficientCoverage : public Error {
 public:
  using Error::Error;
};

/// Input is identically zero (or numerically so) where a nontrivial
/// function is required.
class DegenerateData : public Error {
 public:
  using Error::Error;
};

/// A requested matrix band exceeds the implementation cap.
class BandCapExceeded : public Error {
 public:
  using Error::Error;
};

/// An evaluation would overflow double range (complexified arguments too
/// deep into the imaginary axis for the declared support).
class OverflowGuard : public Error {
 public:
  using Error::Error;
};

/// Malformed file content or an I/O failure during (de)serialization.
class SerializationError : public Error {
 public:
  using Error::Error;
};

/// Invalid command-line or config-file input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace pwmotion
