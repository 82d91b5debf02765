#pragma once

#include <ostream>

#include "abscope/field.hpp"

namespace abscope {

/// Runs the cross-module invariant battery at the given degree, printing one
/// "ok"/"FAIL" line per check. Returns true when everything held. Checks that
/// only make sense for odd m are skipped (and say so) on even degrees;
/// exhaustive comparisons degrade to sampling above the noted sizes.
bool verify_all(const Field& field, std::ostream& out, unsigned jobs = 0);

} // namespace abscope
