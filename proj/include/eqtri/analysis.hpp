// Growth analysis of the ET(n) sequence: normalized logarithms, a
// three-point square-root-rational extrapolant, a power law for the first
// differences, higher differences and plot data.
#pragma once

#include "eqtri/counting.hpp"
#include "eqtri/types.hpp"

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace eqtri {

class FitError : public Error {
 public:
  using Error::Error;
};

/// f(n) = ln ET(n) / ln(n + 1).
struct GrowthSample {
  Int n = 0;
  double f_value = 0.0;
};

/// g(x) = a + b / (sqrt(x) + c); a is the limit at infinity.
struct SqrtRationalFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x) const { return a + b / (std::sqrt(x) + c); }
};

/// h(x) = C (x + 1)^k.
struct PowerFit {
  double power_coefficient = 1.0;
  double exponent = 0.0;

  double operator()(double x) const { return power_coefficient * std::pow(x + 1.0, exponent); }
};

/// Published extrapolant of f over 1 <= n <= 1105.
inline constexpr SqrtRationalFit kReferenceGrowthFit{5.079282921, -0.7091588389, -0.8403164433};
/// Published power-law shape of ET(n + 1) - ET(n).
inline constexpr PowerFit kReferencePowerFit{2.660972140, 4.151431798};
/// Published mean |f(k) - g(k)| over k = 1..1105 for kReferenceGrowthFit.
inline constexpr double kReferenceMeanDeviation = 0.002638971108;
/// Conjectured limit of f(n).
inline constexpr double kGrowthLimitEstimate = 5.08;

/// Skips records with n = 0 or a zero count; their n values are appended to
/// skipped when given.
std::vector<GrowthSample> growth_sequence(const std::vector<CountRecord>& records,
                                          std::vector<Int>* skipped = nullptr);

/// Interpolates g through the samples at n = i1, i2, i3. Eliminating a and b
/// leaves an equation linear in c. Throws FitError when the three values are
/// equal or the geometry is singular.
SqrtRationalFit fit_g_three_points(const std::vector<GrowthSample>& samples, Int i1, Int i2, Int i3);

/// Mean of |f(k) - g(k)| over k_lo <= k <= k_hi. Throws InvalidArgument when a
/// sample in the range is missing.
double mean_abs_deviation(const std::vector<GrowthSample>& samples, const SqrtRationalFit& fit,
                          Int k_lo, Int k_hi);

template <typename Scalar>
using SeriesX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Forward difference applied `order` times. Exact for integer scalars as
/// long as the intermediate values fit Scalar.
template <typename Derived>
SeriesX<typename Derived::Scalar> finite_difference(const Eigen::MatrixBase<Derived>& values,
                                                     int order) {
  if (order < 1) throw InvalidArgument("difference order must be at least 1");
  if (values.size() <= order) throw InvalidArgument("sequence too short for difference order");
  SeriesX<typename Derived::Scalar> out = values;
  for (int k = 0; k < order; ++k) {
    const Eigen::Index len = out.size() - 1;
    out = (out.tail(len) - out.head(len)).eval();
  }
  return out;
}

/// Counts of contiguous records as a signed integer series.
SeriesX<Int> count_series(const std::vector<CountRecord>& records);

/// Log-log least squares of y against x + 1: slope k, intercept ln C.
/// Throws FitError on non-positive y or fewer than two points.
PowerFit fit_power(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Fits h to ET(n + 1) - ET(n) at x = n over contiguous records.
PowerFit fit_power(const std::vector<CountRecord>& records);

struct MonotonicityReport {
  /// Every n with f(n + 1) <= f(n).
  std::vector<Int> violations;
  bool strictly_increasing() const { return violations.empty(); }
};

/// Samples must have consecutive n; throws InvalidArgument otherwise.
MonotonicityReport monotonicity_report(const std::vector<GrowthSample>& samples);

enum class PlotKind { Growth, FirstDifference, ThirdDifference };

/// Accepts "growth", "first-difference" and "third-difference".
PlotKind parse_plot_kind(std::string_view name);
std::string_view to_string(PlotKind kind);

struct PlotFits {
  SqrtRationalFit growth = kReferenceGrowthFit;
  PowerFit power = kReferencePowerFit;
};

/// CSV plot data for contiguous records.
///   growth:           "n,f,g"    f and g with 12 decimals
///   first-difference: "n,diff,h" diff = ET(n+1) - ET(n) exact, h with 6 decimals
///   third-difference: "n,d3"     d3 = third forward difference at n, exact
std::string emit_plot_data(PlotKind kind, const std::vector<CountRecord>& records,
                           const PlotFits& fits = {});

}  // namespace eqtri
