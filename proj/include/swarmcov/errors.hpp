#pragma once

#include <stdexcept>
#include <string>

namespace swarmcov {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateBox : Error {
  explicit DegenerateBox(const std::string& msg) : Error(msg) {}
};

struct ZeroMass : Error {
  explicit ZeroMass(const std::string& msg) : Error(msg) {}
};

struct NonPositiveMass : Error {
  explicit NonPositiveMass(const std::string& msg) : Error(msg) {}
};

struct DuplicatePositions : Error {
  explicit DuplicatePositions(const std::string& msg) : Error(msg) {}
};

struct PositionOutsideRegion : Error {
  explicit PositionOutsideRegion(const std::string& msg) : Error(msg) {}
};

struct NonUnitDirection : Error {
  explicit NonUnitDirection(const std::string& msg) : Error(msg) {}
};

struct AlreadyInCollision : Error {
  explicit AlreadyInCollision(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace swarmcov
