#pragma once

#include <ostream>

namespace apflow {

/// Run the built-in property suite (operator identities, spectral solves
/// against dense oracles, symbol bounds, step-identity residuals,
/// positivity on the presets, low-Mach projection scaling) and print one
/// pass/fail line per item. Returns true when everything passed.
///
/// inject_spectral_fault corrupts one Fourier symbol before the
/// spectral-vs-dense item, which must then fail; it exercises the
/// suite's ability to catch a broken solver.
bool cmd_validate(std::ostream& os, bool inject_spectral_fault = false);

}  // namespace apflow
