#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eqtri/analysis.hpp"

#include <cmath>
#include <random>

using namespace eqtri;

namespace {

std::vector<GrowthSample> synthetic_g(const SqrtRationalFit& g, Int lo, Int hi) {
  std::vector<GrowthSample> out;
  for (Int n = lo; n <= hi; ++n) out.push_back({n, g(static_cast<double>(n))});
  return out;
}

}  // namespace

TEST_CASE("growth_sequence") {
  std::vector<Int> skipped;
  const auto s = growth_sequence({{0, 0}, {1, 8}}, &skipped);
  REQUIRE(s.size() == 1);
  CHECK(s[0].n == 1);
  CHECK(s[0].f_value == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(skipped == std::vector<Int>{0});

  const auto big = growth_sequence({{1105, 2474524936846512ULL}});
  CHECK(big[0].f_value == doctest::Approx(std::log(2474524936846512.0) / std::log(1106.0)));
  CHECK(big[0].f_value > 5.05);
  CHECK(big[0].f_value < kReferenceGrowthFit.a);
}

TEST_CASE("growth of (n+1)^p is constant p") {
  for (int p = 1; p <= 5; ++p) {
    std::vector<CountRecord> records;
    for (Int n = 1; n <= 60; ++n) {
      Count v = 1;
      for (int k = 0; k < p; ++k) v *= static_cast<Count>(n + 1);
      records.push_back({n, v});
    }
    for (const auto& s : growth_sequence(records)) CHECK(std::abs(s.f_value - p) < 1e-12);
  }
}

TEST_CASE("three-point fit recovers synthetic parameters") {
  const SqrtRationalFit truth{5.0, -0.7, -0.8};
  const auto samples = synthetic_g(truth, 1, 1000);
  const auto fit = fit_g_three_points(samples, 10, 100, 1000);
  CHECK(std::abs(fit.a - truth.a) < 1e-6);
  CHECK(std::abs(fit.b - truth.b) < 1e-6);
  CHECK(std::abs(fit.c - truth.c) < 1e-6);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> a(3.0, 6.0), b(-2.0, -0.1), c(-0.9, 3.0);
  std::uniform_int_distribution<Int> idx(2, 2000);
  for (int trial = 0; trial < 200; ++trial) {
    const SqrtRationalFit g{a(rng), b(rng), c(rng)};
    Int i1 = idx(rng), i2 = idx(rng), i3 = idx(rng);
    if (i1 == i2 || i2 == i3 || i1 == i3) continue;
    std::vector<GrowthSample> pts{{i1, g(static_cast<double>(i1))},
                                  {i2, g(static_cast<double>(i2))},
                                  {i3, g(static_cast<double>(i3))}};
    const auto f = fit_g_three_points(pts, i1, i2, i3);
    for (const auto& p : pts) CHECK(std::abs(f(static_cast<double>(p.n)) - p.f_value) < 1e-9);
  }
}

TEST_CASE("three-point fit errors") {
  const std::vector<GrowthSample> flat{{1, 2.0}, {2, 2.0}, {3, 2.0}};
  CHECK_THROWS_AS(fit_g_three_points(flat, 1, 2, 3), FitError);
  CHECK_THROWS_AS(fit_g_three_points(flat, 1, 1, 3), FitError);
  CHECK_THROWS_AS(fit_g_three_points(flat, 1, 2, 9), FitError);
}

TEST_CASE("mean_abs_deviation") {
  const std::vector<GrowthSample> pts{{4, 3.1}, {9, 3.9}, {25, 4.4}};
  const auto fit = fit_g_three_points(pts, 4, 9, 25);
  CHECK(mean_abs_deviation({pts[0]}, fit, 4, 4) < 1e-12);
  CHECK(mean_abs_deviation(pts, fit, 4, 4) + mean_abs_deviation(pts, fit, 9, 9) +
            mean_abs_deviation(pts, fit, 25, 25) <
        1e-9);
  CHECK_THROWS_AS(mean_abs_deviation(pts, fit, 4, 9), InvalidArgument);

  const auto synthetic = synthetic_g(kReferenceGrowthFit, 1, 50);
  CHECK(mean_abs_deviation(synthetic, kReferenceGrowthFit, 1, 50) < 1e-15);
}

TEST_CASE("finite differences") {
  SeriesX<Int> v(2);
  v << 0, 8;
  CHECK(finite_difference(v, 1) == (SeriesX<Int>(1) << 8).finished());
  SeriesX<Int> sq(4);
  sq << 1, 4, 9, 16;
  CHECK(finite_difference(sq, 2) == (SeriesX<Int>(2) << 2, 2).finished());
  CHECK_THROWS_AS(finite_difference(sq, 0), InvalidArgument);
  CHECK_THROWS_AS(finite_difference(sq, 4), InvalidArgument);

  // order k annihilates polynomials of degree k - 1
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Int> coef(-50, 50);
  for (int k = 1; k <= 6; ++k) {
    std::vector<Int> c(static_cast<std::size_t>(k));
    for (auto& x : c) x = coef(rng);
    SeriesX<Int> poly(40);
    for (Int x = 0; x < 40; ++x) {
      Int acc = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * (x - 20) + *it;
      poly(x) = acc;
    }
    CHECK(finite_difference(poly, k).isZero());
  }
}

TEST_CASE("power fit") {
  Eigen::VectorXd x(50), y(50);
  for (int i = 0; i < 50; ++i) {
    x(i) = i;
    y(i) = 2.0 * std::pow(i + 1.0, 4.0);
  }
  const PowerFit fit = fit_power(x, y);
  CHECK(std::abs(fit.power_coefficient - 2.0) < 1e-9);
  CHECK(std::abs(fit.exponent - 4.0) < 1e-9);

  y(3) = 0.0;
  CHECK_THROWS_AS(fit_power(x, y), FitError);
  CHECK_THROWS_AS(fit_power(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)), FitError);

  std::vector<CountRecord> records;
  Count total = 0;
  for (Int n = 0; n <= 30; ++n) {
    records.push_back({n, total});
    total += static_cast<Count>(std::llround(3.0 * std::pow(n + 1.0, 2.0)));
  }
  const PowerFit from_records = fit_power(records);
  CHECK(std::abs(from_records.exponent - 2.0) < 1e-9);
  CHECK(std::abs(from_records.power_coefficient - 3.0) < 1e-9);
}

TEST_CASE("monotonicity report") {
  // ET(1..10) from the oracle
  const std::vector<Count> et{8, 80, 368, 1264, 3448, 7792, 16176, 30696, 54216, 90104};
  std::vector<CountRecord> records;
  for (std::size_t i = 0; i < et.size(); ++i) records.push_back({static_cast<Int>(i + 1), et[i]});
  CHECK(monotonicity_report(growth_sequence(records)).strictly_increasing());

  const std::vector<GrowthSample> flat{{1, 2.0}, {2, 2.0}, {3, 2.0}, {4, 2.0}};
  CHECK(monotonicity_report(flat).violations == std::vector<Int>{1, 2, 3});
  CHECK(monotonicity_report({{5, 1.0}}).violations.empty());
  CHECK_THROWS_AS(monotonicity_report({{1, 1.0}, {3, 2.0}}), InvalidArgument);
}

TEST_CASE("plot data") {
  const std::vector<CountRecord> records{{0, 0}, {1, 8}, {2, 80}, {3, 368}, {4, 1264}};
  const std::string growth = emit_plot_data(PlotKind::Growth, records);
  CHECK(growth.rfind("n,f,g\n1,3.000000000000,", 0) == 0);
  const std::string d1 = emit_plot_data(PlotKind::FirstDifference, records);
  CHECK(d1.rfind("n,diff,h\n0,8,2.660972\n1,72,", 0) == 0);
  // 1264 - 3*368 + 3*80 - 8 = 392 ; 368 - 3*80 + 3*8 - 0 = 152
  CHECK(emit_plot_data(PlotKind::ThirdDifference, records) == "n,d3\n0,152\n1,392\n");

  CHECK(emit_plot_data(PlotKind::Growth, {}) == "n,f,g\n");
  CHECK(emit_plot_data(PlotKind::FirstDifference, {}) == "n,diff,h\n");
  CHECK(emit_plot_data(PlotKind::ThirdDifference, {}) == "n,d3\n");

  CHECK(parse_plot_kind("growth") == PlotKind::Growth);
  CHECK(parse_plot_kind("third-difference") == PlotKind::ThirdDifference);
  CHECK_THROWS_AS(parse_plot_kind("fourth"), InvalidArgument);
}

TEST_CASE("reference extrapolant deviation over n = 1..100") {
  // frozen from the first computation over exact counts
  const auto samples = growth_sequence(count_range(0, 100));
  CHECK(std::abs(mean_abs_deviation(samples, kReferenceGrowthFit, 1, 100) - 0.029050789653) < 1e-9);
}
