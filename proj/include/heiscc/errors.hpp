#pragma once

#include <stdexcept>
#include <string>

namespace heiscc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generator projections span at most a line through the origin.
class DegenerateHull : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Footprint point with gauge norm > 1.
class OutsideQ : public Error {
 public:
  using Error::Error;
};

class OutsideBall : public Error {
 public:
  using Error::Error;
};

class RegionOutsideQ : public Error {
 public:
  using Error::Error;
};

/// Internal sentinel: the atlas failed its own exact self-check.
class AtlasInconsistency : public Error {
 public:
  using Error::Error;
};

/// Internal sentinel: distance candidates disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class MemoryBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

}  // namespace heiscc
