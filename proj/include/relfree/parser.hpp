#pragma once

#include <string>

#include "relfree/freepoly.hpp"
#include "relfree/grassmann.hpp"

namespace relfree {

// Surface syntax for free polynomials:
//
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := power ('*' power)*
//   power   := primary ('^' nat)?
//   primary := nat | 'x' nat | '(' expr ')' | '[' expr (',' expr)+ ']'
//
// Whitespace is insignificant, '[a,b,c]' is the left-normed commutator,
// integer literals reduce mod p, and multiplication is always explicit.
// `n_vars` <= 0 derives the ambient from the largest index present.
FreePoly parse(const std::string& text, PrimeField field, int n_vars = 0);

// Grassmann elements use the same expression grammar with generators
// 'e<k>' instead of variables and no commutator brackets.
GrassmannElement parse_grassmann(const std::string& text, PrimeField field,
                                 int s);

}  // namespace relfree
