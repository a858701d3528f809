#pragma once

#include <string>

#include "psf/sections.hpp"

namespace psf {

struct DerivativeReport {
  double order = 0.0;
  double value = 0.0;           // signed convention: h^(k)(0) = (-1)^k d^k/dt^k h(0)
  double ordinary_value = 0.0;  // d^k/dt^k h(0) (integer orders only)
  std::string method;           // "interpolant", "regularized-integral", "limit"
  double error_estimate = 0.0;
};

// Ordinary k-th derivative of the profile at t=0 from its Chebyshev
// interpolant; the report carries both sign conventions.
DerivativeReport derivative_at_zero(const SectionProfile& profile, int k);

// Same derivative, but sampled on a local Chebyshev grid spanning the central
// part of the chord. Profiles with chord-end singularities (e.g. the disk's
// square-root tangency) defeat the global interpolant; the local grid stays
// inside the region where the section function is smooth.
DerivativeReport derivative_at_zero(const Body& body, const Direction& xi, int k,
                                    int node_count = 33);

// Fractional derivative h^(q)(0) of non-integer order q > -1, via the
// regularized kernel pairing split into the Taylor-subtracted integral over
// (0,1], the plain tail integral, and the finite correction sum, all divided
// by Gamma(-q). Orders within 1e-6 of an integer are rejected; use
// derivative_at_zero (the q -> k limit) instead.
DerivativeReport fractional_derivative_at_zero(const SectionProfile& profile, double q);

// Max deviation of h^(k +/- delta)(0) from the signed-convention integer value,
// over delta in {1e-2, 1e-3}.
struct LimitCheck {
  double residual_coarse = 0.0;  // delta = 1e-2
  double residual_fine = 0.0;    // delta = 1e-3
  double max_residual = 0.0;
};
LimitCheck fractional_limit_check(const SectionProfile& profile, int k);

}  // namespace psf
