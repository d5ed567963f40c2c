#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "ineq/distribution.hpp"
#include "ineq/errors.hpp"

namespace ineq {

// Distribution spec grammar (whitespace is ignored between tokens):
//
//   spec   := "file:" path | expr
//   expr   := "atom(" num ")"
//           | "uniform(" num "," num ")"
//           | "lognormal(" num "," num ")"     log-mean, log-sd
//           | "gamma(" num "," num ")"         shape, scale
//           | "exp(" num ")"                   rate
//           | "mix(" term ("," term)* ")"
//   term   := num "*" expr
//
// Mixture weights must sum to 1 within 1e-9 and are renormalized.
// `file:` reads a sample file and yields its empirical measure.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

Distribution parse_distribution_spec(std::string_view text);

}  // namespace ineq
