#pragma once

#include <stdexcept>
#include <string>

namespace soliton {

// Bad input: wrong layout, out-of-domain parameters, malformed specs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The shooting seed left the admissible region RS.
class SeedOutOfRegion : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Metric data cannot be recovered from the trajectory (Y2 or Y3 vanish, t does not advance).
class ReconstructionDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EigenSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StepSizeUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientData : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace soliton
