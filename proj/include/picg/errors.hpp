#pragma once

#include <stdexcept>
#include <string>

namespace picg {

class PicgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A selection kernel found nothing to select (e.g. no non-adjacent pair).
class NoLeftElement : public PicgError {
 public:
  using PicgError::PicgError;
};

class NotApplicable : public PicgError {
 public:
  using PicgError::PicgError;
};

// No rule of the model can be applied to the current graph.
class Stuck : public PicgError {
 public:
  using PicgError::PicgError;
};

class UnknownBasis : public PicgError {
 public:
  using PicgError::PicgError;
};

class BadBlockSize : public PicgError {
 public:
  using PicgError::PicgError;
};

class BadParams : public PicgError {
 public:
  using PicgError::PicgError;
};

class NotNormalized : public PicgError {
 public:
  using PicgError::PicgError;
};

// A structural monitor caught a graph outside its class during growth.
class InvariantViolation : public PicgError {
 public:
  using PicgError::PicgError;
};

}  // namespace picg
