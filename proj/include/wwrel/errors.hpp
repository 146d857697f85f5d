#pragma once

#include <stdexcept>
#include <string>

namespace wwrel {

// Malformed input text or a document that does not match the schema.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A well-formed request that is mathematically invalid: dimension
// mismatches, non-composable words, non-lagrangian graphs.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wwrel
