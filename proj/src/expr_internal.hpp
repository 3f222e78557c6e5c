#pragma once

#include "walkerlie/expr.hpp"

namespace walkerlie::detail {

// Pushes a sign into a term the way the parser folds '-'; shared between
// the parser and the canonicalizer so printed forms reparse identically.
ExprPtr negate_term(const ExprPtr& e);

// True when the printed form of this term starts with a minus sign.
bool term_is_negative(const ExprPtr& e);

}  // namespace walkerlie::detail
