#pragma once

#include "zw/diagram.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace zw {

struct Term {
  enum class Kind { Id, Swap, Cup, Cap, Cross, W, Z, Seq, Tensor };

  Kind kind = Kind::Id;
  int in = 0;  // w/z only
  int out = 0; // w/z only
  std::vector<Term> children;
  int line = 1;
  int column = 1;

  static Term generator(Kind k, int line = 1, int column = 1);
  static Term spider(Kind k, int in, int out, int line = 1, int column = 1);
  static Term seq(Term lower, Term upper);
  static Term tensor(Term left, Term right);
};

struct TermType {
  int inputs = 0;
  int outputs = 0;
};

// Throws TypeError naming the offending composition node.
TermType type_of(const Term& t);

Term parse_term(std::string_view text);
std::string to_string(const Term& t);

// Boundary = inputs (dir in) then outputs (dir out).
Diagram from_term(const Term& t);

} // namespace zw
