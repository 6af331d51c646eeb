#pragma once

#include <stdexcept>
#include <string>

namespace zloch {

// Base of every error raised by the library. The CLI maps all of these to
// exit code 2 (invalid input) except InternalError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent caller input (unknown ids, mismatched graphs,
// dimension out of range, schema violations).
class InputError : public Error {
 public:
  using Error::Error;
};

// A polyline that does not lie on the ambient 1-skeleton, or endpoints that
// disagree with the vertex they are attached to.
class EmbeddingError : public Error {
 public:
  using Error::Error;
};

// Operation not available for the requested manifold family.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A 1-chain passed where a cycle is required.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

// Cycle and surface share lattice points.
class NonTransverseError : public Error {
 public:
  using Error::Error;
};

// Sampled data too coarse for the winding computation to be meaningful.
class UndersampledError : public Error {
 public:
  using Error::Error;
};

class ZeroSampleError : public Error {
 public:
  using Error::Error;
};

// Plaquette fluxes that do not sum to an integer multiple of 2*pi.
class NonIntegralFluxError : public Error {
 public:
  using Error::Error;
};

class FluxMismatchError : public Error {
 public:
  using Error::Error;
};

class NotSurjectiveError : public Error {
 public:
  using Error::Error;
};

class RoughFrameError : public Error {
 public:
  using Error::Error;
};

// Violated internal invariant; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace zloch
