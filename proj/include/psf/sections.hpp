#pragma once

#include <vector>

#include "psf/chebyshev.hpp"
#include "psf/geometry.hpp"

namespace psf {

// Volume of the unit k-ball.
double unit_ball_volume(int k);

// Parallel section function values sampled on Chebyshev-Lobatto nodes of the
// chord (endpoints included, where the section degenerates to tangency).
struct SectionProfile {
  Direction direction;
  Chord chord;
  std::vector<double> nodes;   // descending, nodes.front() == t_max
  std::vector<double> values;  // A(nodes[i]) >= 0
  int body_dim = 0;

  ChebInterp interp() const;
};

// A_{K,xi}(t): (n-1)-volume of the slice {(x,xi)=t}. Closed form for
// (shifted) balls and ellipsoids; spherical quadrature about an interior
// point of the section otherwise (convex bodies, n in {2,3,5}).
// With strict=true, t beyond the chord by more than 1e-9 of its length
// throws std::out_of_range instead of returning 0.
double section_area(const Body& body, const Direction& xi, double t,
                    bool strict = false);

// Same as section_area but always through the spherical quadrature path,
// ignoring the ellipsoid closed form. Cross-validation hook.
double section_area_generic(const Body& body, const Direction& xi, double t);

SectionProfile section_profile(const Body& body, const Direction& xi,
                               int node_count = 65);

SectionProfile section_profile_generic(const Body& body, const Direction& xi,
                                       int node_count = 65);

// V^+ (positive_side) or V^- of the cut at t.
double half_volume(const Body& body, const Direction& xi, double t,
                   bool positive_side);

// Integral of the section function over the chord in one direction.
double volume_in_direction(const Body& body, const Direction& xi);

struct VolumeReport {
  double value = 0.0;          // mean over the direction set
  double relative_spread = 0.0;
  bool consistent = true;      // spread <= 1e-6
};

// Direction-averaged volume over 8 fixed directions, with the spread as a
// quadrature consistency diagnostic.
VolumeReport volume(const Body& body);

}  // namespace psf
