#pragma once

#include <stdexcept>
#include <string>

namespace ccms2 {

enum class ErrorKind {
  bounds,           // l/u/n window violated
  degenerate_set,   // S1 == S2, or an empty monomial set
  forced_zero,      // |S_i| > n-l forces the monomial to zero
  cap_exceeded,     // enumeration/generation cap hit
  non_binary,       // binary point expected
  infeasible_point, // point outside the feasible set
  bad_params,       // malformed family parameters / indices
  parse,            // text input could not be parsed
  unsupported,      // operation precondition not met
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace ccms2
