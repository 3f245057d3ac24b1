#pragma once

#include <stdexcept>
#include <string>

namespace bsva {

// Malformed input or parameters outside an operation's contract.
// The CLI maps this to exit code 2.
class invalid_params : public std::invalid_argument {
 public:
  explicit invalid_params(const std::string& what) : std::invalid_argument(what) {}
};

// Raised by glue() when branch domains or images overlap; the message
// names the offending arcs.
class gluing_conflict : public std::runtime_error {
 public:
  explicit gluing_conflict(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bsva
