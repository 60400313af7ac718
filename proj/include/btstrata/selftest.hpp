#ifndef BTSTRATA_SELFTEST_HPP
#define BTSTRATA_SELFTEST_HPP

#include <ostream>

namespace bts {

// Desk-scale property suite; prints one deterministic pass/fail row per law
// and returns the number of failures.  quick = reduced scales (< 1 min).
int run_selftest(bool quick, std::ostream& out, unsigned long long seed, int jobs);

}  // namespace bts

#endif
