#pragma once

#include <memory>
#include <string>
#include <vector>

#include "uqr/rational_map.hpp"

namespace uqr::maps {

/// z^d.
RationalMap power(int d);
/// z^2 - 2, whose Julia set is the segment [-2, 2].
RationalMap chebyshev();
/// z^2 - 1.
RationalMap basilica();
/// Fixed degree-3 rational map with unstructured complex coefficients.
RationalMap generic_cubic();
/// z^3 / (z^3 + 1).
RationalMap cubic_quotient();
/// (z^2 + 1)^2 / (4 z (z^2 - 1)), a degree-4 map with Julia set the whole sphere.
RationalMap lattes();

/// Looks up one of the maps above by name: "z2", "z3", "chebyshev", "basilica",
/// "cubic", "cubic_quotient", "lattes". Throws std::invalid_argument otherwise.
RationalMap by_name(const std::string& name);
std::vector<std::string> names();

}  // namespace uqr::maps
