#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "chiralchain/model.hpp"

namespace chiralchain::numerics {

/// Complex antisymmetric matrix of even dimension. Only the strict upper
/// triangle is free; the lower triangle is mirrored with a sign at
/// construction so A^T = -A holds exactly.
class AntisymmetricMatrix {
 public:
  /// Zero matrix of dimension 2m.
  explicit AntisymmetricMatrix(int dim);

  /// Validates antisymmetry of a full matrix up to 1e-12 and adopts it.
  static AntisymmetricMatrix from_full(const Eigen::MatrixXcd& a);

  int dim() const { return static_cast<int>(mat_.rows()); }

  /// Sets entry (i, j), i < j, together with its mirrored partner.
  void set_upper(int i, int j, cdouble value);

  const Eigen::MatrixXcd& matrix() const { return mat_; }

 private:
  Eigen::MatrixXcd mat_;
};

/// Pfaffian by Parlett-Reid elimination with partial pivoting, O(n^3).
/// pf(A)^2 = det(A); the sign convention is pf([[0,a],[-a,0]]) = a.
cdouble pfaffian(const AntisymmetricMatrix& a);

/// Least-squares fit outcome. `slope` doubles as the decay exponent for
/// power-law fits (so y ~ x^{-slope} has slope > 0 for decaying data).
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int window_lo = 0;  // index range [window_lo, window_hi) of the points used
  int window_hi = 0;
};

/// Ordinary least squares y = slope*x + intercept over points[lo..hi).
FitResult linear_fit(std::span<const std::pair<double, double>> points, int lo, int hi);

/// Line fit on (log x, log y); the reported exponent is the negated slope,
/// so y ~ x^{-exponent} gives exponent > 0 for decay. All coordinates in
/// the window must be positive.
FitResult power_law_fit(std::span<const std::pair<double, double>> points, int lo, int hi);

/// Decay exponent of a distance profile values[R-1] over R in [rlo, rhi].
/// Oscillating correlators (chiral phases) are fitted through the local
/// maxima of |values| when at least five peaks exist; otherwise through
/// all |values| above a 1e-14 floor.
FitResult envelope_decay_fit(std::span<const double> values, int rlo, int rhi);

/// Position of the strongest kink: the x at which the second divided
/// difference of ys (three-point stencil, interior points only) has
/// maximal magnitude. xs must be strictly monotone with >= 5 points.
double kink_detect(std::span<const double> xs, std::span<const double> ys);

}  // namespace chiralchain::numerics
