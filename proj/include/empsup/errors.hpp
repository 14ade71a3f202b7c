#pragma once

#include <stdexcept>
#include <string>

namespace empsup {

// Input validation failures. All derive from std::invalid_argument so callers
// can treat every precondition violation uniformly (the CLI maps them to exit
// code 2) while tests can still catch the specific type.

struct EmptySample : std::invalid_argument {
  EmptySample() : std::invalid_argument("empty sample") {}
};

struct OutOfDomain : std::invalid_argument {
  explicit OutOfDomain(const std::string& what) : std::invalid_argument(what) {}
};

// Interval half-width for an interior/boundary split; must lie in (0, 1/2).
struct InvalidAlpha : std::invalid_argument {
  explicit InvalidAlpha(const std::string& what) : std::invalid_argument(what) {}
};

// Lower endpoint of the maximal-inequality interval; must lie in (0, 1/2].
struct InvalidA : std::invalid_argument {
  explicit InvalidA(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidLambda : std::invalid_argument {
  explicit InvalidLambda(const std::string& what) : std::invalid_argument(what) {}
};

// Norming constants require log log log n to be real, hence n >= 16.
struct TooSmallN : std::invalid_argument {
  explicit TooSmallN(const std::string& what) : std::invalid_argument(what) {}
};

struct TooFewRecords : std::invalid_argument {
  explicit TooFewRecords(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace empsup
