#pragma once

#include <cstdint>

#include "puresig/report.hpp"

namespace puresig {

/// Runs the invariant suite at desk scale (n <= nmax) and collects one
/// verdict per check. Conjecture checks and disagreements with published
/// claims are reported with kind "conjecture" / "finding".
Report verify_all(unsigned nmax);

}  // namespace puresig
