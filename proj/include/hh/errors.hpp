#pragma once
/// @file errors.hpp
/// @brief Exception taxonomy for the exact homology engine.

#include <stdexcept>
#include <string>

namespace hh {

/// Base class for all engine errors.
struct HHError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimension or index mismatch in matrix/tensor plumbing.
struct ShapeError : HHError {
  using HHError::HHError;
};

/// Malformed input document or invalid field specification.
struct ParseError : HHError {
  using HHError::HHError;
};

/// A Cayley table that is not a group multiplication table.
struct InvalidGroupTable : HHError {
  using HHError::HHError;
};

/// An operation needed an antipode (or its inverse) that was not supplied.
struct AntipodeRequired : HHError {
  using HHError::HHError;
};

/// A requested realization exceeds the configured ambient-dimension cap.
struct SizeLimit : HHError {
  using HHError::HHError;
};

/// A subspace that must be differential-stable failed the membership check.
struct StabilityViolation : HHError {
  using HHError::HHError;
};

/// An internal cross-check (oracle) failed; message carries degree and witness.
struct OracleFailure : HHError {
  using HHError::HHError;
};

/// A constructed structure failed its own axiom suite; message carries the
/// first witness.
struct ValidationFailure : HHError {
  using HHError::HHError;
};

}  // namespace hh
