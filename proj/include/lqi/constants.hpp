#pragma once

#include "lqi/term.hpp"
#include "lqi/types.hpp"

namespace lqi {

// ty(c). Partially applied constants have no entry; expand them first.
Scheme constant_type(const Constant& c);
Scheme prim_type(Prim p);

}  // namespace lqi
