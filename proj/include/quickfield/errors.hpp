#pragma once

#include <stdexcept>
#include <string>

namespace quickfield {

/// Malformed scenario text (ragged rows, unknown glyphs, bad header keys).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structurally well-formed object that violates a domain invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an API precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace quickfield
