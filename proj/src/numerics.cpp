#include "chiralchain/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace chiralchain::numerics {

AntisymmetricMatrix::AntisymmetricMatrix(int dim) {
  if (dim < 0 || dim % 2 != 0)
    throw std::invalid_argument("AntisymmetricMatrix: dimension must be even, got " +
                                std::to_string(dim));
  mat_ = Eigen::MatrixXcd::Zero(dim, dim);
}

AntisymmetricMatrix AntisymmetricMatrix::from_full(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0)
    throw std::invalid_argument("AntisymmetricMatrix: matrix must be square with even dimension");
  const double resid = (a + a.transpose()).cwiseAbs().maxCoeff();
  if (resid > 1e-12)
    throw std::invalid_argument("AntisymmetricMatrix: input is not antisymmetric, |A + A^T| = " +
                                std::to_string(resid));
  AntisymmetricMatrix out(static_cast<int>(a.rows()));
  // rebuild from the upper triangle so A^T = -A holds exactly
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) out.set_upper(i, j, a(i, j));
  return out;
}

void AntisymmetricMatrix::set_upper(int i, int j, cdouble value) {
  if (i < 0 || j <= i || j >= dim())
    throw std::invalid_argument("AntisymmetricMatrix::set_upper: need 0 <= i < j < dim");
  mat_(i, j) = value;
  mat_(j, i) = -value;
}

cdouble pfaffian(const AntisymmetricMatrix& a) {
  const int n = a.dim();
  if (n == 0) return 1.0;
  Eigen::MatrixXcd m = a.matrix();  // private working copy

  cdouble result = 1.0;
  for (int k = 0; k + 1 < n; k += 2) {
    // pivot: largest |m(i, k)| among rows i > k
    int piv = k + 1;
    for (int i = k + 2; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (piv != k + 1) {
      m.row(k + 1).swap(m.row(piv));
      m.col(k + 1).swap(m.col(piv));
      result = -result;
    }

    const cdouble pivot = m(k + 1, k);
    if (pivot == cdouble(0.0)) return 0.0;
    result *= -pivot;  // pf convention: upper entry m(k, k+1) = -m(k+1, k)

    if (k + 2 >= n) break;
    // eliminate column k below the pivot: rank-2 skew update of the trailing block
    const auto tau = (m.col(k).segment(k + 2, n - k - 2) / pivot).eval();
    const auto col1 = m.col(k + 1).segment(k + 2, n - k - 2).eval();
    for (int i = 0; i < n - k - 2; ++i)
      for (int j = 0; j < n - k - 2; ++j)
        m(k + 2 + i, k + 2 + j) += tau(i) * col1(j) - tau(j) * col1(i);
  }
  return result;
}

namespace {

FitResult ols(std::span<const std::pair<double, double>> pts, int lo, int hi) {
  const int count = hi - lo;
  double sx = 0, sy = 0;
  for (int i = lo; i < hi; ++i) {
    sx += pts[i].first;
    sy += pts[i].second;
  }
  const double mx = sx / count, my = sy / count;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = lo; i < hi; ++i) {
    const double dx = pts[i].first - mx, dy = pts[i].second - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0)
    throw std::invalid_argument("linear_fit: degenerate x values in window");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.window_lo = lo;
  fit.window_hi = hi;
  double ss_res = 0;
  for (int i = lo; i < hi; ++i) {
    const double resid = pts[i].second - (fit.slope * pts[i].first + fit.intercept);
    ss_res += resid * resid;
  }
  // constant data fitted exactly counts as a perfect fit
  fit.r2 = (syy > 0.0) ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0)
                       : (ss_res < 1e-24 ? 1.0 : 0.0);
  return fit;
}

}  // namespace

FitResult linear_fit(std::span<const std::pair<double, double>> points, int lo, int hi) {
  if (lo < 0 || hi > static_cast<int>(points.size()) || hi - lo < 2)
    throw std::invalid_argument("linear_fit: need at least 2 points in window");
  return ols(points, lo, hi);
}

FitResult power_law_fit(std::span<const std::pair<double, double>> points, int lo, int hi) {
  if (lo < 0 || hi > static_cast<int>(points.size()) || hi - lo < 3)
    throw std::invalid_argument("power_law_fit: need at least 3 points in window");
  std::vector<std::pair<double, double>> logs;
  logs.reserve(hi - lo);
  for (int i = lo; i < hi; ++i) {
    if (points[i].first <= 0.0 || points[i].second <= 0.0)
      throw std::invalid_argument("power_law_fit: non-positive coordinate in window at index " +
                                  std::to_string(i));
    logs.emplace_back(std::log(points[i].first), std::log(points[i].second));
  }
  FitResult fit = ols(logs, 0, static_cast<int>(logs.size()));
  fit.slope = -fit.slope;  // report exponent of y ~ x^{-exponent}
  fit.window_lo = lo;
  fit.window_hi = hi;
  return fit;
}

FitResult envelope_decay_fit(std::span<const double> values, int rlo, int rhi) {
  std::vector<std::pair<double, double>> peaks, all;
  for (int r = rlo; r <= rhi && r <= static_cast<int>(values.size()); ++r) {
    const double a = std::abs(values[r - 1]);
    if (a > 1e-14) all.emplace_back(r, a);
    if (r > rlo && r < rhi && r < static_cast<int>(values.size())) {
      const double prev = std::abs(values[r - 2]);
      const double next = std::abs(values[r]);
      if (a >= prev && a > next && a > 1e-14) peaks.emplace_back(r, a);
    }
  }
  auto& pts = peaks.size() >= 5 ? peaks : all;
  return power_law_fit(pts, 0, static_cast<int>(pts.size()));
}

double kink_detect(std::span<const double> xs, std::span<const double> ys) {
  const int n = static_cast<int>(xs.size());
  if (n < 5 || ys.size() != xs.size())
    throw std::invalid_argument("kink_detect: need >= 5 points");
  for (int i = 0; i + 1 < n; ++i)
    if ((xs[i + 1] - xs[i]) * (xs[1] - xs[0]) <= 0.0)
      throw std::invalid_argument("kink_detect: xs must be strictly monotone");

  double best = -1.0;
  double where = xs[1];
  for (int i = 1; i + 1 < n; ++i) {
    const double hl = xs[i] - xs[i - 1];
    const double hr = xs[i + 1] - xs[i];
    // second divided difference (exact second derivative for quadratics)
    const double d2 =
        2.0 * (ys[i - 1] * hr - ys[i] * (hl + hr) + ys[i + 1] * hl) / (hl * hr * (hl + hr));
    if (std::abs(d2) > best) {
      best = std::abs(d2);
      where = xs[i];
    }
  }
  return where;
}

}  // namespace chiralchain::numerics
