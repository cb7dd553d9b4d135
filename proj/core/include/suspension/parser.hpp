#pragma once

#include "suspension/observable.hpp"

#include <string>

namespace suspension {

// Observable expression language used by the CLI:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := number | 'N' '(' region ')' | 'I1' '(' simple ')' | '(' expr ')'
//   region := rect ('+' rect)*          rect := C(k)[a..b] | P(bits)[a..b]
//   simple := number '*' rect ('+' number '*' rect)*
// Level bounds are arbitrary-precision integers.

Rectangle parse_rectangle(const std::string& text, const GrowthSpec& spec);
RegionSet parse_region(const std::string& text, const GrowthSpec& spec);
SimpleFunction parse_simple_function(const std::string& text, const GrowthSpec& spec);
Observable parse_observable(const std::string& text, const GrowthSpec& spec);

/// Point literal "bits@level", e.g. "10@2": word starting 1,0 (zero tail),
/// level 2.
TowerPoint parse_point(const std::string& text, const GrowthSpec& spec);

}  // namespace suspension
