#pragma once

#include <set>
#include <string>

#include "lqi/term.hpp"

namespace lqi {

/// Let-binds every non-atomic function and argument position, naming the
/// intermediates t0, t1, ... while skipping names in `avoid` or in `m`.
TermPtr normalize(const TermPtr& m, const std::set<std::string>& avoid = {});

bool is_anf(const Term& m);

}  // namespace lqi
