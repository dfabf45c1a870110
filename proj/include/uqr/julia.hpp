#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "uqr/rational_map.hpp"

namespace uqr {

/// Radius beyond which every orbit of the polynomial escapes to infinity:
/// max(2, 2 (1 + Σ_{k<d} |a_k|) / |a_d|).
double escape_radius(const Poly& p);

struct EscapeTimeOptions {
  double spacing = 0.01;
  int max_iterations = 1000;
};

/// Boundary of the filled Julia set of a polynomial, sampled on the square grid
/// {spacing·(i, j)} covering the escape disk: grid points that do not escape within
/// max_iterations but have an escaping 4-neighbour. The grid is symmetric about 0 and
/// contains both axes.
std::vector<SpherePoint> escape_time_boundary(const Poly& p, const EscapeTimeOptions& options = {});

/// Repelling fixed point of largest multiplier; throws if none exists.
SpherePoint repelling_fixed_point(const RationalMap& f);

/// Random backward orbit of a repelling fixed point: `count` points, each a uniformly
/// chosen preimage of the previous one. Its closure is the Julia set.
std::vector<SpherePoint> backward_orbit_julia(const RationalMap& f, std::size_t count, std::uint64_t seed);

/// Escape-time boundary for polynomials, backward orbit otherwise.
std::vector<SpherePoint> julia_reference(const RationalMap& f, std::uint64_t seed, std::size_t count = 20000,
                                         const EscapeTimeOptions& options = {});

}  // namespace uqr
