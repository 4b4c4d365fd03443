#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace otstat {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

//! Validation failures (bad arguments, broken preconditions).
using validation_error = std::invalid_argument;

//! An iterative solver hit its iteration cap without meeting its tolerance.
class convergence_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! Overflow/underflow in a numerically fragile code path.
class numeric_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

//! Standard normal cdf.
inline double normal_cdf(double x)
{
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

//! Standard normal pdf.
inline double normal_pdf(double x)
{
  static const double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

//! Standard normal quantile.
//! Rational initial guess (Acklam) polished by two Halley steps against
//! erfc, so accuracy is limited only by the libm cdf (~1e-15 relative).
inline double normal_quantile(double p)
{
  if (!(p > 0.0 && p < 1.0)) {
    throw validation_error("normal_quantile: p must lie in (0, 1)");
  }

  static const double a[6] = { -3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00 };
  static const double b[5] = { -5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01 };
  static const double c[6] = { -7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00 };
  static const double d[4] = { 7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00 };

  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  for (int pass = 0; pass < 2; ++pass) {
    double e = normal_cdf(x) - p;
    double u = e / std::max(normal_pdf(x), 1e-300);
    x = x - u / (1.0 + 0.5 * x * u);
  }
  return x;
}

//! log(sum_k exp(v[k])), tolerating -inf entries.
inline double log_sum_exp(const Eigen::Ref<const Vector>& v)
{
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) {
    return m; // all -inf (or a +inf/nan dominate)
  }
  return m + std::log((v.array() - m).exp().sum());
}

//! Row-wise log-sum-exp of a matrix; rows of -inf map to -inf.
inline Vector log_sum_exp_rows(const Matrix& m)
{
  Vector mx = m.rowwise().maxCoeff();
  Vector safe = mx.unaryExpr(
    [](double x) { return std::isfinite(x) ? x : 0.0; });
  Vector s =
    ((m.colwise() - safe).array().exp().rowwise().sum()).log().matrix() + safe;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (!std::isfinite(mx[i])) {
      s[i] = mx[i];
    }
  }
  return s;
}

//! Column-wise log-sum-exp of a matrix.
inline Vector log_sum_exp_cols(const Matrix& m)
{
  Vector mx = m.colwise().maxCoeff();
  Vector safe = mx.unaryExpr(
    [](double x) { return std::isfinite(x) ? x : 0.0; });
  Vector s =
    ((m.rowwise() - safe.transpose()).array().exp().colwise().sum())
      .log()
      .matrix()
      .transpose() +
    safe;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (!std::isfinite(mx[i])) {
      s[i] = mx[i];
    }
  }
  return s;
}

//! x*log(x) with the 0*log(0) = 0 convention.
inline double xlogx(double x)
{
  return x > 0.0 ? x * std::log(x) : 0.0;
}

namespace detail {

inline double simpson_rule(const std::function<double(double)>& f, double lo,
                           double hi, double flo, double fmid, double fhi)
{
  return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double lo, double hi, double flo,
                                   double fmid, double fhi, double whole,
                                   double tol, int depth)
{
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid);
  const double rm = 0.5 * (mid + hi);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_rule(f, lo, mid, flo, flm, fmid);
  const double right = simpson_rule(f, mid, hi, fmid, frm, fhi);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, lo, mid, flo, flm, fmid, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, mid, hi, fmid, frm, fhi, right, 0.5 * tol,
                              depth - 1);
}

} // namespace detail

//! Adaptive Simpson quadrature of f on [lo, hi] to absolute tolerance tol.
inline double integrate(const std::function<double(double)>& f, double lo,
                        double hi, double tol = 1e-12, int max_depth = 48)
{
  if (!(hi > lo)) {
    return 0.0;
  }
  const double mid = 0.5 * (lo + hi);
  const double flo = f(lo);
  const double fmid = f(mid);
  const double fhi = f(hi);
  const double whole = detail::simpson_rule(f, lo, hi, flo, fmid, fhi);
  return detail::adaptive_simpson_rec(f, lo, hi, flo, fmid, fhi, whole, tol,
                                      max_depth);
}

} // namespace otstat
