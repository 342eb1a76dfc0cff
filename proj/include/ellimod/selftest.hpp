// End-to-end verification suite: one pass/fail line per criterion.
#pragma once

#include <iosfwd>

namespace ellimod {

// Runs every criterion, printing one line each to `out`; returns the number of
// failed criteria (0 when everything holds).
int run_acceptance(std::ostream& out);

}  // namespace ellimod
