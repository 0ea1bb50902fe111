#pragma once

#include <stdexcept>
#include <string>

namespace dimcov {

// Domain errors thrown on contract violations.  Each is its own type so
// callers (and tests) can tell them apart; all carry a human-readable message.

struct UnknownNode : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownEdge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateEdge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SelfLoop : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LtWeightOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StaleSet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateNode : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadEpsilon : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyGraph : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadEpoch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadSeed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason),
        line_number(line),
        reason(reason) {}

  std::size_t line_number;
  std::string reason;
};

}  // namespace dimcov
