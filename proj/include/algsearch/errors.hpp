#pragma once

#include <stdexcept>
#include <string>

namespace algsearch {

// Thrown when an input would exceed an enumeration or history-tree cap.
class CapError : public std::invalid_argument {
 public:
  explicit CapError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a theorem verifier is called outside the theorem's hypotheses
// (b < 3, a target family that is not closed under permutation, n < 2^b, ...).
class HypothesisError : public std::invalid_argument {
 public:
  explicit HypothesisError(const std::string& what) : std::invalid_argument(what) {}
};

// A search algorithm emitted something that is not a probability vector.
class InvalidDistribution : public std::invalid_argument {
 public:
  explicit InvalidDistribution(const std::string& what) : std::invalid_argument(what) {}
};

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace algsearch
