#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lqi/refinement.hpp"
#include "lqi/term.hpp"
#include "lqi/types.hpp"

namespace lqi {

struct Binding {
  std::string name;
  TermPtr term;
  SourcePos pos;
};

struct Program {
  std::vector<ExprPtr> qualifiers;
  std::vector<Binding> bindings;
};

/// Parses `Qualifiers { q, ... }` followed by `val name = term` bindings.
/// Throws ParseError with the offending line and column.
Program parse_program(std::string_view text);

// A single comparison or boolean atom; `v` is the value variable.
ExprPtr parse_qualifier(std::string_view text);
// Any refinement expression, conjunctions included.
ExprPtr parse_refinement(std::string_view text);
TermPtr parse_term(std::string_view text);
LiquidType parse_type(std::string_view text);
Scheme parse_scheme(std::string_view text);

std::string to_string(const Program& p);

}  // namespace lqi
