#pragma once

#include <string>

#include "pltl/formula.hpp"

namespace pltl {

/* Parses the ASCII formula grammar:
 *
 *   formula := or ('->' formula)?          implication desugars to !a | b
 *   or      := and ('|' and)*
 *   and     := temp ('&' temp)*
 *   temp    := unary (('U'|'R') interval? temp)?
 *   unary   := ('!'|'X'|'F'|'G') interval? unary | primary
 *   primary := 'true' | 'false' | atom | '(' formula ')'
 *   atom    := ident ('>='|'<='|'=') (int | ident)
 *   interval:= '[' '<=' int ']' | '[' '>=' int (',' '<=' int)? ']'
 *
 * Whitespace is insignificant. Atoms must reference variables declared in
 * `space`; thresholds must lie inside the variable's domain. Throws
 * parse_error with the offending position on malformed input.
 */
Formula parse(const std::string &text, const StateSpace &space);

} // namespace pltl
