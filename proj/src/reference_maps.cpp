#include "uqr/reference_maps.hpp"

#include <stdexcept>

namespace uqr::maps {

RationalMap power(int d) {
  if (d < 2) throw std::invalid_argument("power map degree must be >= 2");
  Poly p(static_cast<std::size_t>(d) + 1, Complex(0.0));
  p.back() = 1.0;
  return RationalMap::polynomial(std::move(p));
}

RationalMap chebyshev() { return RationalMap::polynomial({-2.0, 0.0, 1.0}); }

RationalMap basilica() { return RationalMap::polynomial({-1.0, 0.0, 1.0}); }

RationalMap generic_cubic() {
  return RationalMap({{0.31, 0.17}, {-0.52, 0.08}, {0.11, -0.43}, {1.0, 0.0}},
                     {{1.0, 0.0}, {0.23, -0.29}, {-0.41, 0.26}, {0.14, 0.06}});
}

RationalMap cubic_quotient() { return RationalMap({0.0, 0.0, 0.0, 1.0}, {1.0, 0.0, 0.0, 1.0}); }

RationalMap lattes() {
  // (z^2 + 1)^2 = z^4 + 2 z^2 + 1;  4 z (z^2 - 1) = 4 z^3 - 4 z.
  return RationalMap({1.0, 0.0, 2.0, 0.0, 1.0}, {0.0, -4.0, 0.0, 4.0, 0.0});
}

RationalMap by_name(const std::string& name) {
  if (name == "z2") return power(2);
  if (name == "z3") return power(3);
  if (name == "chebyshev") return chebyshev();
  if (name == "basilica") return basilica();
  if (name == "cubic") return generic_cubic();
  if (name == "cubic_quotient") return cubic_quotient();
  if (name == "lattes") return lattes();
  throw std::invalid_argument("unknown map preset '" + name + "'");
}

std::vector<std::string> names() { return {"z2", "z3", "chebyshev", "basilica", "cubic", "cubic_quotient", "lattes"}; }

}  // namespace uqr::maps
