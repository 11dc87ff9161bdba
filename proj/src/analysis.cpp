#include "eqtri/analysis.hpp"

#include <Eigen/QR>

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace eqtri {

namespace {

void require_contiguous(const std::vector<CountRecord>& records) {
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].n != records[i - 1].n + 1) {
      throw InvalidArgument("records are not contiguous at n = " + std::to_string(records[i].n));
    }
  }
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::vector<GrowthSample> growth_sequence(const std::vector<CountRecord>& records,
                                          std::vector<Int>* skipped) {
  std::vector<GrowthSample> out;
  for (const auto& r : records) {
    if (r.n <= 0 || r.count == 0) {
      if (skipped) skipped->push_back(r.n);
      continue;
    }
    out.push_back({r.n, std::log(static_cast<double>(r.count)) / std::log(static_cast<double>(r.n + 1))});
  }
  return out;
}

SqrtRationalFit fit_g_three_points(const std::vector<GrowthSample>& samples, Int i1, Int i2, Int i3) {
  if (i1 == i2 || i2 == i3 || i1 == i3) throw FitError("fit points must be distinct");
  auto value_at = [&](Int n) {
    for (const auto& s : samples) {
      if (s.n == n) return s.f_value;
    }
    throw FitError("no sample at n = " + std::to_string(n));
  };
  const double f1 = value_at(i1), f2 = value_at(i2), f3 = value_at(i3);
  const double s1 = std::sqrt(static_cast<double>(i1));
  const double s2 = std::sqrt(static_cast<double>(i2));
  const double s3 = std::sqrt(static_cast<double>(i3));

  // f1 - f2 = b (s2 - s1) / ((s1 + c)(s2 + c)), likewise for f2 - f3; their
  // ratio R gives R (s3 - s2)(s1 + c) = (s2 - s1)(s3 + c).
  if (f2 == f3) throw FitError("degenerate fit points: f(i2) == f(i3)");
  const double ratio = (f1 - f2) / (f2 - f3);
  const double denom = ratio * (s3 - s2) - (s2 - s1);
  if (denom == 0.0 || !std::isfinite(denom)) throw FitError("degenerate fit points: no solution for c");
  const double c = ((s2 - s1) * s3 - ratio * (s3 - s2) * s1) / denom;
  if ((s1 + c) == 0.0 || (s2 + c) == 0.0 || (s3 + c) == 0.0) {
    throw FitError("fit places a pole on an interpolation point");
  }
  const double b = (f1 - f2) * (s1 + c) * (s2 + c) / (s2 - s1);
  const double a = f1 - b / (s1 + c);
  if (b == 0.0 || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw FitError("degenerate fit points");
  }
  return {a, b, c};
}

double mean_abs_deviation(const std::vector<GrowthSample>& samples, const SqrtRationalFit& fit,
                          Int k_lo, Int k_hi) {
  if (k_lo > k_hi) throw InvalidArgument("empty deviation range");
  std::map<Int, double> by_n;
  for (const auto& s : samples) by_n[s.n] = s.f_value;
  double total = 0.0;
  for (Int k = k_lo; k <= k_hi; ++k) {
    const auto it = by_n.find(k);
    if (it == by_n.end()) throw InvalidArgument("missing sample at n = " + std::to_string(k));
    total += std::abs(it->second - fit(static_cast<double>(k)));
  }
  return total / static_cast<double>(k_hi - k_lo + 1);
}

SeriesX<Int> count_series(const std::vector<CountRecord>& records) {
  require_contiguous(records);
  SeriesX<Int> out(static_cast<Eigen::Index>(records.size()));
  for (std::size_t i = 0; i < records.size(); ++i) out(static_cast<Eigen::Index>(i)) = narrow(records[i].count);
  return out;
}

PowerFit fit_power(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw FitError("x and y differ in length");
  if (x.size() < 2) throw FitError("power fit needs at least two points");
  if ((y.array() <= 0.0).any()) throw FitError("power fit needs positive values");
  if ((x.array() <= -1.0).any()) throw FitError("power fit needs x > -1");
  Eigen::MatrixXd design(x.size(), 2);
  design.col(0).setOnes();
  design.col(1) = (x.array() + 1.0).log().matrix();
  const Eigen::VectorXd rhs = y.array().log().matrix();
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  return {std::exp(coef(0)), coef(1)};
}

PowerFit fit_power(const std::vector<CountRecord>& records) {
  const SeriesX<Int> diffs = finite_difference(count_series(records), 1);
  Eigen::VectorXd x(diffs.size());
  for (Eigen::Index i = 0; i < diffs.size(); ++i) x(i) = static_cast<double>(records[static_cast<std::size_t>(i)].n);
  return fit_power(x, diffs.cast<double>());
}

MonotonicityReport monotonicity_report(const std::vector<GrowthSample>& samples) {
  MonotonicityReport report;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].n != samples[i - 1].n + 1) {
      throw InvalidArgument("samples are not contiguous at n = " + std::to_string(samples[i].n));
    }
    if (samples[i].f_value <= samples[i - 1].f_value) report.violations.push_back(samples[i - 1].n);
  }
  return report;
}

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "growth") return PlotKind::Growth;
  if (name == "first-difference") return PlotKind::FirstDifference;
  if (name == "third-difference") return PlotKind::ThirdDifference;
  throw InvalidArgument("unknown plot kind '" + std::string(name) + "'");
}

std::string_view to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::Growth:
      return "growth";
    case PlotKind::FirstDifference:
      return "first-difference";
    case PlotKind::ThirdDifference:
      return "third-difference";
  }
  return "?";
}

std::string emit_plot_data(PlotKind kind, const std::vector<CountRecord>& records, const PlotFits& fits) {
  std::ostringstream os;
  switch (kind) {
    case PlotKind::Growth: {
      os << "n,f,g\n";
      for (const auto& s : growth_sequence(records)) {
        const auto x = static_cast<double>(s.n);
        os << s.n << ',' << fixed(s.f_value, 12) << ',' << fixed(fits.growth(x), 12) << '\n';
      }
      break;
    }
    case PlotKind::FirstDifference: {
      os << "n,diff,h\n";
      if (records.size() < 2) break;
      const SeriesX<Int> d1 = finite_difference(count_series(records), 1);
      for (Eigen::Index i = 0; i < d1.size(); ++i) {
        const Int n = records[static_cast<std::size_t>(i)].n;
        os << n << ',' << d1(i) << ',' << fixed(fits.power(static_cast<double>(n)), 6) << '\n';
      }
      break;
    }
    case PlotKind::ThirdDifference: {
      os << "n,d3\n";
      if (records.size() < 4) break;
      const SeriesX<Int> d3 = finite_difference(count_series(records), 3);
      for (Eigen::Index i = 0; i < d3.size(); ++i) {
        os << records[static_cast<std::size_t>(i)].n << ',' << d3(i) << '\n';
      }
      break;
    }
  }
  return os.str();
}

}  // namespace eqtri
