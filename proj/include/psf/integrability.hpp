#pragma once

#include <optional>
#include <vector>

#include "psf/fracderiv.hpp"
#include "psf/sections.hpp"

namespace psf {

// Residual curve of least-squares polynomial fits (Chebyshev basis over the
// chord) to the profile, degrees 0..N_max. Residuals are relative sup-norm
// misfits, reported as their running minimum so the curve is non-increasing.
struct DegreeScan {
  std::optional<int> min_degree;   // smallest degree with residual <= tol
  std::vector<double> residuals;   // size N_max + 1
  // Fitted polynomial at min_degree, monomial coefficients in t
  // (a_0 + a_1 t + ...); empty when no degree passed.
  std::vector<double> monomial_coeffs;
};

DegreeScan min_poly_degree(const SectionProfile& profile, int N_max, double tol);

struct DirectionVerdict {
  Eigen::VectorXd xi;
  DegreeScan scan;
};

struct IntegrabilityVerdict {
  std::vector<DirectionVerdict> per_direction;
  std::optional<int> global_degree;  // max of min degrees, iff all directions fit
  int N_max = 0;
  double tol = 0.0;
};

IntegrabilityVerdict integrability_report(const Body& body,
                                          const std::vector<Direction>& directions,
                                          int N_max, double tol, int node_count = 65);

// Samples of the coefficient function a_k over the fitted directions.
struct CoefficientField {
  int k = 0;
  std::vector<std::pair<Eigen::VectorXd, double>> samples;
};

std::vector<CoefficientField> coefficient_fields(const IntegrabilityVerdict& verdict);

// max_xi |A^(m)(0)| (signed convention) per requested order.
struct VanishingEntry {
  int m = 0;
  double max_abs = 0.0;
};

std::vector<VanishingEntry> derivative_vanishing_report(
    const Body& body, const std::vector<int>& orders,
    const std::vector<Direction>& directions);

}  // namespace psf
