#pragma once

#include <map>
#include <string>
#include <vector>

#include "folab/errors.hpp"
#include "folab/mpoly.hpp"

namespace folab {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Polynomial expression over the given variables. Supports integer and p/q
/// literals, `i`, `rt(m)`, `param(s)`, + - * ^ and parentheses; juxtaposition
/// multiplies.
MPoly parse_poly(const std::string& text, const std::vector<std::string>& vars);

/// Differential expression `P du + Q dv + ...`; returns one coefficient per
/// variable, in the order of `vars`.
std::vector<MPoly> parse_differential(const std::string& text, const std::vector<std::string>& vars);

}  // namespace folab
