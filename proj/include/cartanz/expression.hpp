#ifndef CARTANZ_EXPRESSION_HPP
#define CARTANZ_EXPRESSION_HPP

// Text form of integral monomials.
//
//   monomial := "1" | factor ("*" factor)*
//   factor   := "dp(" gen "," INT ")" | "odd(" gen ")" | "p(" INT "," chi ")"
//   gen      := "x[" root "," INT "]" ("⊗" | "@") LABEL
//   root     := "(" INT ("," INT)* ")" | ["-"] "a" INT
//   chi      := "{" [LABEL ":" INT ("," LABEL ":" INT)*] "}"
//
// Root and p indices are 1-based; "a<i>" is the i-th simple root. Whitespace
// between tokens is ignored. Printing is ZForm::str, and parse(str(m)) == m.

#include <stdexcept>
#include <string>
#include <vector>

#include "cartanz/zform.hpp"

namespace cartanz {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// `simple` resolves "a<i>"; pass an empty list to accept explicit weights only.
IntegralMonomial parse_monomial(const std::string& text, const StructureConstants& sc, const MonoidAlgebra& A,
                                const std::vector<Weight>& simple = {});

/// Indecomposable positive roots of the table, sorted by (height, weight).
std::vector<Weight> simple_roots(const StructureConstants& sc);

}  // namespace cartanz

#endif
