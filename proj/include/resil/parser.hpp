#ifndef RESIL_PARSER_HPP_
#define RESIL_PARSER_HPP_

#include <string>

#include "resil/model.hpp"

namespace resil {

// Parses a model file and validates its declarations (arity, declared names,
// guarded recursion, hole numbering, location placement). Throws ParseError
// for syntax and ModelError for semantic violations.
Model parse_model(const std::string& text);

}  // namespace resil

#endif  // RESIL_PARSER_HPP_
