#pragma once

#include <string>

#include "leq/term.hpp"

namespace leq {

struct PrintOptions {
  // Emit the {A ; A' ; B ; B'} endpoint block on Pi*/Sig*/eq* nodes that
  // carry one.  Off by default: the blocks are recomputable and noisy.
  bool show_annots = false;
};

// Render to the surface syntax.  Output reparses to an alpha-equal term as
// long as distinct free variables have distinct spellings; bound names are
// re-spelled on the fly when they would collide with a free name or an
// enclosing binder.
std::string print_term(const Term& t, const PrintOptions& opts = {});

std::string print_context(const Context& ctx, const PrintOptions& opts = {});

}  // namespace leq
